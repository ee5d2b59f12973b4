//! Exact arithmetic in towers of number fields.

mod automorphism;
mod construct;
mod element;
mod factor;
mod field;
mod parse;
mod poly;

pub use automorphism::{apply_automorphism, fixed_by_group, galois_group, Automorphism, GaloisGroup};
pub use construct::{cyclotomic_poly, tower_quadratic};
pub use element::{elem_arith, ArithOp, FieldElement};
pub use factor::{
    factor_over_field, factor_over_q, is_irreducible_over_q, roots_in_field, Factorization, FACTOR_DEGREE_BOUND,
};
pub use field::{Field, Irreducibility};
pub use parse::{parse_element, parse_rational};
pub use poly::Poly;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;

/// Minimal polynomial of `x` over the level `over`, found as the first linear
/// dependence among the powers of `x`.
pub fn minpoly_of(x: &FieldElement, over: &Field) -> Result<Poly> {
    let coords = |y: &FieldElement| y.coords_over(over);
    let rows = x.field().degree_over(over).map_err(|_| Error::NotSubLevel)?;
    let mut powers = vec![coords(&FieldElement::one(x.field()))?];
    let mut p = x.clone();
    loop {
        powers.push(coords(&p)?);
        let m = Matrix::from_cols(over, rows, &powers)?;
        let ns = m.nullspace();
        if let Some(v) = ns.into_iter().next() {
            let lead = v.last().expect("nonempty").clone();
            let inv = lead.inv()?;
            return Ok(Poly::new(over, v.iter().map(|c| c * &inv).collect()));
        }
        p = &p * x;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minpolys() {
        let q = Field::rationals();
        let qi = Field::quadratic(-1).unwrap();
        let i = FieldElement::generator(&qi);
        assert_eq!(minpoly_of(&i, &q).unwrap(), Poly::from_ints(&q, &[1, 0, 1]));
        let x = &FieldElement::one(&qi) + &i;
        assert_eq!(minpoly_of(&x, &q).unwrap(), Poly::from_ints(&q, &[2, -2, 1]));
        assert_eq!(
            minpoly_of(&FieldElement::from_int(&qi, 3), &q).unwrap(),
            Poly::from_ints(&q, &[-3, 1])
        );
        assert_eq!(minpoly_of(&i, &qi).unwrap(), Poly::linear(&i));
    }
}
