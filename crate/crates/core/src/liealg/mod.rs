//! Lie algebras given by structure constants over a tower level.

mod algebra;
mod fingerprint;
mod morphism;

pub use algebra::{LieAlgebra, SparseVec};
pub use fingerprint::{derived_series, fingerprint, lower_central_series, Fingerprint};
pub use morphism::{verify_morphism, verify_sigma_isomorphism, MorphismCheck, SemiLinearMap};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::fields::{galois_group, Field, FieldElement};
    use crate::linalg::Matrix;

    fn h3(f: &Field) -> LieAlgebra {
        LieAlgebra::new(f, 3, [(1, 2, 3, FieldElement::one(f))]).unwrap()
    }

    fn vec_of(f: &Field, v: &[i64]) -> Vec<FieldElement> {
        v.iter().map(|&x| FieldElement::from_int(f, x)).collect()
    }

    #[test]
    fn jacobi_rejection_reports_triple() {
        let q = Field::rationals();
        let one = FieldElement::one(&q);
        let r = LieAlgebra::new(&q, 3, [(1, 2, 1, one.clone()), (2, 3, 2, one.clone()), (3, 1, 3, one)]);
        assert_eq!(r.unwrap_err(), Error::JacobiFailure(1, 2, 3));
    }

    #[test]
    fn index_checks() {
        let q = Field::rationals();
        let one = FieldElement::one(&q);
        assert!(matches!(
            LieAlgebra::new(&q, 3, [(1, 4, 3, one.clone())]),
            Err(Error::IndexOutOfRange(_))
        ));
        assert!(matches!(
            LieAlgebra::new(&q, 3, [(2, 2, 3, one)]),
            Err(Error::IndexOutOfRange(_))
        ));
    }

    #[test]
    fn heisenberg_brackets() {
        let q = Field::rationals();
        let h = h3(&q);
        let x = vec_of(&q, &[1, 0, 0]);
        let y = vec_of(&q, &[0, 1, 0]);
        assert_eq!(h.bracket(&x, &y).unwrap(), vec_of(&q, &[0, 0, 1]));
        let v = vec_of(&q, &[3, -2, 7]);
        assert_eq!(h.bracket(&v, &v).unwrap(), vec_of(&q, &[0, 0, 0]));
        // [X+Y, X-Y] = -[X,Y] + [Y,X] = -2Z
        let a = vec_of(&q, &[1, 1, 0]);
        let b = vec_of(&q, &[1, -1, 0]);
        assert_eq!(h.bracket(&a, &b).unwrap(), vec_of(&q, &[0, 0, -2]));
        assert_eq!(h.bracket(&a, &vec_of(&q, &[1, 0])), Err(Error::OwnerMismatch));
    }

    #[test]
    fn fingerprints() {
        let q = Field::rationals();
        let fp = fingerprint(&h3(&q));
        assert_eq!(fp.nilpotency_class, Some(2));
        assert_eq!(fp.center_dim, 1);
        assert_eq!(fp.two_step_type, Some((2, 1)));
        let ab = fingerprint(&LieAlgebra::abelian(&q, 3));
        assert_eq!(ab.nilpotency_class, Some(1));
        assert_eq!(ab.center_dim, 3);
        let hh = h3(&q).direct_sum(&h3(&q)).unwrap();
        let fp = fingerprint(&hh);
        assert_eq!(fp.dim, 6);
        assert_eq!(fp.nilpotency_class, Some(2));
        assert_eq!(fp.two_step_type, Some((4, 2)));
        let a2 = LieAlgebra::abelian(&q, 1)
            .direct_sum(&LieAlgebra::abelian(&q, 1))
            .unwrap();
        assert!(a2.is_abelian() && a2.dim() == 2);
    }

    #[test]
    fn morphism_checks() {
        let q = Field::rationals();
        let h = h3(&q);
        let id = Matrix::identity(&q, 3);
        assert!(verify_morphism(&h, &h, &id).is_isomorphism());
        let zero = Matrix::zeros(&q, 3, 3);
        let c = verify_morphism(&h, &h, &zero);
        assert!(c.preserves_bracket && !c.bijective);
        let swap = Matrix::from_ints(&q, &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]);
        assert!(!verify_morphism(&h, &h, &swap).preserves_bracket);
    }

    #[test]
    fn sigma_isomorphisms() {
        let qi = Field::quadratic(-1).unwrap();
        let g = galois_group(&qi, &Field::rationals()).unwrap();
        let h = h3(&qi);
        let id = Matrix::identity(&qi, 3);
        for s in &g.elements {
            let f = SemiLinearMap {
                sigma: s.clone(),
                matrix: id.clone(),
            };
            assert!(verify_sigma_isomorphism(&h, &h, &f));
        }
        // [X1, X2] = λ X3 with λ = 1+i: conj-identity maps onto the λ̄ algebra only.
        let lam = FieldElement::one(&qi) + FieldElement::generator(&qi);
        let a = LieAlgebra::new(&qi, 3, [(1, 2, 3, lam.clone())]).unwrap();
        let b = LieAlgebra::new(&qi, 3, [(1, 2, 3, g.elements[1].apply(&lam).unwrap())]).unwrap();
        let f = SemiLinearMap {
            sigma: g.elements[1].clone(),
            matrix: id,
        };
        assert!(!verify_sigma_isomorphism(&a, &a, &f));
        assert!(verify_sigma_isomorphism(&a, &b, &f));
    }

    #[test]
    fn ideals() {
        let q = Field::rationals();
        let h = h3(&q);
        let (ok, s) = h.ideal_check(&[vec_of(&q, &[0, 0, 1])]).unwrap();
        assert!(ok && s.dim() == 1);
        assert!(!h.ideal_check(&[vec_of(&q, &[1, 0, 0])]).unwrap().0);
        let hh = h.direct_sum(&h).unwrap();
        let span = [
            vec_of(&q, &[1, 0, 0, 0, 0, 0]),
            vec_of(&q, &[0, 1, 0, 0, 0, 1]),
            vec_of(&q, &[0, 0, 1, 0, 0, 0]),
        ];
        assert!(hh.ideal_check(&span).unwrap().0);
        assert!(hh.ideal_check(hh.center().basis()).unwrap().0);
        assert!(hh.ideal_check(hh.derived_subalgebra().basis()).unwrap().0);
    }

    #[test]
    fn change_basis_round_trip() {
        let q = Field::rationals();
        let h = h3(&q);
        let p = Matrix::from_ints(&q, &[vec![2, 1, 0], vec![0, 1, 0], vec![1, 3, 1]]);
        let h2 = h.change_basis(&p).unwrap();
        // The new basis vectors satisfy [Y1, Y2] = 2 Y3 (det of the XY block).
        assert_eq!(h2.structure_constant(0, 1, 2), FieldElement::from_int(&q, 2));
        assert!(verify_morphism(&h2, &h, &p).is_isomorphism());
        let back = h2.change_basis(&p.inverse().unwrap()).unwrap();
        assert_eq!(back.constants(), h.constants());
    }
}
