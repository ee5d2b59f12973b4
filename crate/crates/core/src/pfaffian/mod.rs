//! Pfaffian forms of 2-step nilpotent algebras and the binary quartic
//! invariants `S`, `T` and `c = S³/T²`.
//!
//! `S` and `T` are evaluated on the raw coefficients of
//! `ax⁴ + bx³y + cx²y² + dxy³ + ey⁴`. The same formulas applied to the
//! weighted coefficients `(a, b/4, c/6, d/4, e)` give the classical
//! invariants `I` and `J`, whose ratio `I³/J²` is a projective invariant;
//! refutations use that ratio.
//!
//! Convention: the commutator `[L, L]` gets its reduced echelon basis
//! `Z_1, …, Z_q`; the complement `V_1, …, V_p` consists of the standard basis
//! vectors at the non-pivot positions, in index order. Then
//! `J(z)_{ab} = Σ_k z_k · (Z_k-coefficient of [V_a, V_b])` and the form is
//! `Pf(J(z))`, with no further normalization.

mod multipoly;

pub use multipoly::MultiPoly;

use crate::error::{Error, Result};
use crate::fields::FieldElement;
use crate::liealg::LieAlgebra;
use crate::linalg::{Matrix, Subspace};

/// Type `(p, q)` of a 2-step nilpotent algebra with the chosen bases.
#[derive(Debug, Clone)]
pub struct TwoStepType {
    pub p: usize,
    pub q: usize,
    /// Complement basis `V` (standard basis vectors).
    pub complement: Vec<Vec<FieldElement>>,
    /// Commutator basis `Z` (reduced echelon).
    pub commutator: Vec<Vec<FieldElement>>,
}

pub fn two_step_type(l: &LieAlgebra) -> Result<TwoStepType> {
    let derived = l.derived_subalgebra();
    if l.bracket_spaces(&l.whole_space(), &derived).dim() != 0 {
        return Err(Error::NotTwoStep);
    }
    let complement = derived
        .complement_indices()
        .into_iter()
        .map(|i| l.basis_vector(i))
        .collect::<Vec<_>>();
    Ok(TwoStepType {
        p: complement.len(),
        q: derived.dim(),
        complement,
        commutator: derived.basis().to_vec(),
    })
}

/// Pfaffian by expansion along the first row, which enumerates the perfect
/// matchings with their signs.
pub fn pfaffian_of_matrix(m: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    let n = m.len();
    let Some(first) = m.first().and_then(|r| r.first()) else {
        return Err(Error::WrongShape("empty matrix".into()));
    };
    let (field, nvars) = (first.field().clone(), first.nvars());
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSkew);
        }
        for (j, x) in row.iter().enumerate() {
            if x.add(&m[j][i]).is_zero() {
                continue;
            }
            return Err(Error::NotSkew);
        }
    }
    if n % 2 == 1 {
        return Ok(MultiPoly::zero(&field, nvars));
    }
    let idx: Vec<usize> = (0..n).collect();
    Ok(pf_rec(m, &idx, &field, nvars))
}

fn pf_rec(m: &[Vec<MultiPoly>], idx: &[usize], field: &crate::fields::Field, nvars: usize) -> MultiPoly {
    if idx.is_empty() {
        return MultiPoly::constant(FieldElement::one(field), nvars);
    }
    let a = idx[0];
    let mut acc = MultiPoly::zero(field, nvars);
    for (pos, &b) in idx.iter().enumerate().skip(1) {
        let entry = &m[a][b];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx.iter().copied().filter(|&x| x != a && x != b).collect();
        let term = entry.mul(&pf_rec(m, &rest, field, nvars));
        acc = if pos % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// The Pfaffian form with the basis data it was computed in.
#[derive(Debug, Clone)]
pub struct PfaffianForm {
    pub form: MultiPoly,
    pub basis: TwoStepType,
}

pub fn pfaffian_form(l: &LieAlgebra) -> Result<PfaffianForm> {
    let t = two_step_type(l)?;
    if t.p % 2 == 1 {
        return Err(Error::OddP(t.p));
    }
    let field = l.field();
    let z = Subspace::span(field, l.dim(), &t.commutator);
    let q = t.q;
    let mut j = vec![vec![MultiPoly::zero(field, q); t.p]; t.p];
    for a in 0..t.p {
        for b in a + 1..t.p {
            let br = l.bracket_unchecked(&t.complement[a], &t.complement[b]);
            let coords = z.coordinates(&br).expect("bracket lies in the commutator");
            let mut entry = MultiPoly::zero(field, q);
            for (k, c) in coords.iter().enumerate() {
                entry = entry.add(&MultiPoly::var(field, q, k).scale(c));
            }
            j[b][a] = entry.neg();
            j[a][b] = entry;
        }
    }
    let form = if t.p == 0 {
        MultiPoly::constant(FieldElement::one(field), q)
    } else {
        pfaffian_of_matrix(&j)?
    };
    Ok(PfaffianForm { form, basis: t })
}

/// Coefficients `(a, b, c, d, e)` of `ax⁴ + bx³y + cx²y² + dxy³ + ey⁴`.
fn quartic_coeffs(f: &MultiPoly) -> Result<[FieldElement; 5]> {
    if f.nvars() != 2 {
        return Err(Error::WrongShape(format!("{} variables, expected 2", f.nvars())));
    }
    if !f.is_zero() && f.homogeneous_degree() != Some(4) {
        return Err(Error::WrongShape("not a homogeneous quartic".into()));
    }
    Ok([
        f.coeff(&[4, 0]),
        f.coeff(&[3, 1]),
        f.coeff(&[2, 2]),
        f.coeff(&[1, 3]),
        f.coeff(&[0, 4]),
    ])
}

/// `S = ae − 4bd + 3c²`.
pub fn invariant_s(f: &MultiPoly) -> Result<FieldElement> {
    let [a, b, c, d, e] = quartic_coeffs(f)?;
    let four = FieldElement::from_int(f.field(), 4);
    let three = FieldElement::from_int(f.field(), 3);
    Ok(&(&(&a * &e) - &(&four * &(&b * &d))) + &(&three * &(&c * &c)))
}

/// `T = ace − ad² + 2bcd − b²e − c³`.
pub fn invariant_t(f: &MultiPoly) -> Result<FieldElement> {
    let [a, b, c, d, e] = quartic_coeffs(f)?;
    let two = FieldElement::from_int(f.field(), 2);
    let ace = &(&a * &c) * &e;
    let ad2 = &(&a * &d) * &d;
    let bcd = &(&(&b * &c) * &d) * &two;
    let b2e = &(&b * &b) * &e;
    let c3 = &(&c * &c) * &c;
    Ok(&(&(&(&ace - &ad2) + &bcd) - &b2e) - &c3)
}

/// `S³/T²` of a binary quartic, with `S` and `T` evaluated on the raw
/// coefficients. These formulas are invariant under the diagonal torus and
/// `(x, y) ↦ (y, -x)` but not under all of `SL₂`; see [`invariant_i`].
pub fn invariant_c_of_form(f: &MultiPoly) -> Result<FieldElement> {
    let s = invariant_s(f)?;
    let t = invariant_t(f)?;
    if t.is_zero() {
        return Err(Error::TVanishes);
    }
    (&(&s * &s) * &s).checked_div(&(&t * &t))
}

/// `c` of an algebra of type (8, 2).
pub fn invariant_c(l: &LieAlgebra) -> Result<FieldElement> {
    let t = two_step_type(l)?;
    if (t.p, t.q) != (8, 2) {
        return Err(Error::WrongShape(format!("type ({}, {}), expected (8, 2)", t.p, t.q)));
    }
    invariant_c_of_form(&pfaffian_form(l)?.form)
}

/// Binomially weighted coefficients `(a, b/4, c/6, d/4, e)`, in which the
/// formulas for `S` and `T` become the classical `SL₂` invariants.
fn weighted_coeffs(f: &MultiPoly) -> Result<[FieldElement; 5]> {
    let [a, b, c, d, e] = quartic_coeffs(f)?;
    let w = |x: &FieldElement, k: i64| x.checked_div(&FieldElement::from_int(f.field(), k)).expect("nonzero");
    Ok([a, w(&b, 4), w(&c, 6), w(&d, 4), e])
}

fn quartic_from(f: &MultiPoly, c: [FieldElement; 5]) -> MultiPoly {
    MultiPoly::from_terms(
        f.field(),
        2,
        c.into_iter()
            .enumerate()
            .map(|(k, x)| (vec![4 - k as u32, k as u32], x)),
    )
    .expect("two variables")
}

/// The classical degree-2 invariant `I`; `I(f∘A) = det(A)⁴ I(f)`.
pub fn invariant_i(f: &MultiPoly) -> Result<FieldElement> {
    invariant_s(&quartic_from(f, weighted_coeffs(f)?))
}

/// The classical degree-3 invariant `J`; `J(f∘A) = det(A)⁶ J(f)`.
pub fn invariant_j(f: &MultiPoly) -> Result<FieldElement> {
    invariant_t(&quartic_from(f, weighted_coeffs(f)?))
}

/// `I³/J²`, unchanged under `f ↦ k·f∘A` for every invertible `A`.
pub fn projective_invariant(f: &MultiPoly) -> Result<FieldElement> {
    let i = invariant_i(f)?;
    let j = invariant_j(f)?;
    if j.is_zero() {
        return Err(Error::TVanishes);
    }
    (&(&i * &i) * &i).checked_div(&(&j * &j))
}

/// `I³/J²` of the Pfaffian form of an algebra of type (8, 2). Unlike
/// [`invariant_c`] this does not depend on the chosen bases.
pub fn projective_c(l: &LieAlgebra) -> Result<FieldElement> {
    let t = two_step_type(l)?;
    if (t.p, t.q) != (8, 2) {
        return Err(Error::WrongShape(format!("type ({}, {}), expected (8, 2)", t.p, t.q)));
    }
    projective_invariant(&pfaffian_form(l)?.form)
}

/// Outcome of comparing `c` invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CVerdict {
    /// Both invariants are defined and differ.
    Refuted {
        c1: FieldElement,
        c2: FieldElement,
    },
    Inconclusive,
}

/// Refutes when the basis-independent invariants [`projective_c`] differ.
pub fn refute_isomorphism_by_c(l1: &LieAlgebra, l2: &LieAlgebra) -> CVerdict {
    if l1.field() != l2.field() {
        return CVerdict::Inconclusive;
    }
    match (projective_c(l1), projective_c(l2)) {
        (Ok(c1), Ok(c2)) if c1 != c2 => CVerdict::Refuted { c1, c2 },
        _ => CVerdict::Inconclusive,
    }
}

/// Checks the certificate `f1(x) = k · f2(A x)`.
pub fn projective_equivalence_check(f1: &MultiPoly, f2: &MultiPoly, a: &Matrix, k: &FieldElement) -> Result<bool> {
    if k.is_zero() {
        return Err(Error::ZeroScalar);
    }
    if a.det()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    if f1.field() != f2.field() || f1.nvars() != f2.nvars() {
        return Ok(false);
    }
    Ok(f2.substitute_linear(a)?.scale(k) == *f1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{g_lambda, heisenberg};
    use crate::fields::{parse_element, Field};

    fn quartic(f: &Field, c: [i64; 5]) -> MultiPoly {
        MultiPoly::from_terms(
            f,
            2,
            (0..5).map(|k| (vec![4 - k as u32, k as u32], FieldElement::from_int(f, c[k]))),
        )
        .unwrap()
    }

    #[test]
    fn small_pfaffians() {
        let q = Field::rationals();
        let v = |i| MultiPoly::var(&q, 6, i);
        let z = MultiPoly::zero(&q, 6);
        let m2 = vec![vec![z.clone(), v(0)], vec![v(0).neg(), z.clone()]];
        assert_eq!(pfaffian_of_matrix(&m2).unwrap(), v(0));
        // upper entries a..f
        let (a, b, c, d, e, f) = (v(0), v(1), v(2), v(3), v(4), v(5));
        let m4 = vec![
            vec![z.clone(), a.clone(), b.clone(), c.clone()],
            vec![a.neg(), z.clone(), d.clone(), e.clone()],
            vec![b.neg(), d.neg(), z.clone(), f.clone()],
            vec![c.neg(), e.neg(), f.neg(), z.clone()],
        ];
        let expect = a.mul(&f).sub(&b.mul(&e)).add(&c.mul(&d));
        assert_eq!(pfaffian_of_matrix(&m4).unwrap(), expect);
        let m3 = vec![
            vec![z.clone(), a.clone(), b.clone()],
            vec![a.neg(), z.clone(), c.clone()],
            vec![b.neg(), c.neg(), z.clone()],
        ];
        assert!(pfaffian_of_matrix(&m3).unwrap().is_zero());
        let bad = vec![vec![z.clone(), a.clone()], vec![a.clone(), z]];
        assert_eq!(pfaffian_of_matrix(&bad), Err(Error::NotSkew));
    }

    #[test]
    fn g_lambda_form() {
        let f = Field::quadratic(-1).unwrap();
        for lit in ["0", "1", "1+i"] {
            let lam = parse_element(&f, lit).unwrap();
            let pf = pfaffian_form(&g_lambda(&f, &lam).unwrap()).unwrap();
            let expect = MultiPoly::from_terms(
                &f,
                2,
                [
                    (vec![4, 0], FieldElement::one(&f)),
                    (vec![2, 2], lam.clone()),
                    (vec![0, 4], FieldElement::one(&f)),
                ],
            )
            .unwrap();
            assert_eq!(pf.form, expect, "lambda = {lit}");
        }
        let lam = parse_element(&f, "1+i").unwrap();
        let pf = pfaffian_form(&g_lambda(&f, &lam).unwrap()).unwrap();
        assert_eq!(pf.form.to_string(), "x^4 + (1 + i)*x^2*y^2 + y^4");
    }

    #[test]
    fn types_and_errors() {
        let q = Field::rationals();
        let h = heisenberg(&q);
        let t = two_step_type(&h).unwrap();
        assert_eq!((t.p, t.q), (2, 1));
        let hh = h.direct_sum(&h).unwrap();
        let t = two_step_type(&hh).unwrap();
        assert_eq!((t.p, t.q), (4, 2));
        // z1 z2 for h3 ⊕ h3
        let pf = pfaffian_form(&hh).unwrap();
        let expect = MultiPoly::var(&q, 2, 0).mul(&MultiPoly::var(&q, 2, 1));
        assert_eq!(pf.form, expect);
        let odd = h.direct_sum(&LieAlgebra::abelian(&q, 1)).unwrap();
        assert_eq!(pfaffian_form(&odd).unwrap_err(), Error::OddP(3));
        let ab = h.direct_sum(&LieAlgebra::abelian(&q, 2)).unwrap();
        assert!(pfaffian_form(&ab).unwrap().form.is_zero());
        let r3 = crate::catalog::r3_lambda(&q, &FieldElement::one(&q)).unwrap();
        assert_eq!(two_step_type(&r3).unwrap_err(), Error::NotTwoStep);
    }

    #[test]
    fn quartic_invariants() {
        let q = Field::rationals();
        let f0 = quartic(&q, [1, 0, 0, 0, 1]);
        assert_eq!(invariant_s(&f0).unwrap(), FieldElement::one(&q));
        assert!(invariant_t(&f0).unwrap().is_zero());
        let x4 = quartic(&q, [1, 0, 0, 0, 0]);
        assert!(invariant_s(&x4).unwrap().is_zero());
        assert!(invariant_t(&x4).unwrap().is_zero());
        let cubic = MultiPoly::var(&q, 2, 0).pow(3);
        assert!(matches!(invariant_s(&cubic), Err(Error::WrongShape(_))));
    }

    #[test]
    fn c_invariant_values() {
        let f = Field::quadratic(-1).unwrap();
        let c = |lit: &str| invariant_c(&g_lambda(&f, &parse_element(&f, lit).unwrap()).unwrap());
        assert_eq!(c("i").unwrap(), FieldElement::from_int(&f, 2));
        assert_eq!(c("1+i").unwrap(), parse_element(&f, "(332 - 2226i)/100").unwrap());
        assert_eq!(c("1").unwrap_err(), Error::TVanishes);
        let g = |lit: &str| g_lambda(&f, &parse_element(&f, lit).unwrap()).unwrap();
        assert!(matches!(
            refute_isomorphism_by_c(&g("1+i"), &g("1-i")),
            CVerdict::Refuted { .. }
        ));
        assert_eq!(refute_isomorphism_by_c(&g("i"), &g("-i")), CVerdict::Inconclusive);
        assert_eq!(refute_isomorphism_by_c(&g("1+i"), &g("1+i")), CVerdict::Inconclusive);
        // The projective ratio survives a change of basis mixing V and Z.
        let mut p = Matrix::identity(&f, 10);
        p.set(8, 0, FieldElement::from_int(&f, 3));
        p.set(1, 0, FieldElement::from_int(&f, 2));
        p.set(9, 8, FieldElement::from_int(&f, 1));
        let moved = g("1+i").change_basis(&p).unwrap();
        assert_eq!(projective_c(&moved).unwrap(), projective_c(&g("1+i")).unwrap());
        assert_eq!(refute_isomorphism_by_c(&moved, &g("1+i")), CVerdict::Inconclusive);
    }

    #[test]
    fn classical_invariants() {
        let q = Field::rationals();
        // x⁴ + 6c x²y² + y⁴ has weighted middle coefficient c.
        let f = quartic(&q, [1, 0, 12, 0, 1]);
        assert_eq!(invariant_i(&f).unwrap(), FieldElement::from_int(&q, 13));
        assert_eq!(invariant_j(&f).unwrap(), FieldElement::from_int(&q, -6));
        // Raw S is not invariant under the shear x ↦ x + y.
        let shear = Matrix::from_ints(&q, &[vec![1, 1], vec![0, 1]]);
        let g = f.substitute_linear(&shear).unwrap();
        assert_ne!(invariant_s(&g).unwrap(), invariant_s(&f).unwrap());
        assert_eq!(invariant_i(&g).unwrap(), invariant_i(&f).unwrap());
        assert_eq!(invariant_j(&g).unwrap(), invariant_j(&f).unwrap());
        let gl = Matrix::from_ints(&q, &[vec![2, 1], vec![1, 3]]);
        let h = f.substitute_linear(&gl).unwrap().scale(&FieldElement::from_int(&q, 7));
        assert_eq!(projective_invariant(&h).unwrap(), projective_invariant(&f).unwrap());
    }

    #[test]
    fn projective_equivalence() {
        let f = Field::quadratic(-1).unwrap();
        let lam = parse_element(&f, "2+i").unwrap();
        let fl = pfaffian_form(&g_lambda(&f, &lam).unwrap()).unwrap().form;
        let one = FieldElement::one(&f);
        let id = Matrix::identity(&f, 2);
        assert!(projective_equivalence_check(&fl, &fl, &id, &one).unwrap());
        let swap = Matrix::from_ints(&f, &[vec![0, 1], vec![1, 0]]);
        assert!(projective_equivalence_check(&fl, &fl, &swap, &one).unwrap());
        let f0 = pfaffian_form(&g_lambda(&f, &FieldElement::zero(&f)).unwrap())
            .unwrap()
            .form;
        assert!(!projective_equivalence_check(&f0, &fl, &id, &one).unwrap());
        assert_eq!(
            projective_equivalence_check(&fl, &fl, &Matrix::zeros(&f, 2, 2), &one),
            Err(Error::SingularMatrix)
        );
        assert_eq!(
            projective_equivalence_check(&fl, &fl, &id, &FieldElement::zero(&f)),
            Err(Error::ZeroScalar)
        );
    }
}
