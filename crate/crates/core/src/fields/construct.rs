//! Validated construction of tower levels.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::factor::{factor_over_field, is_irreducible_over_q, FACTOR_DEGREE_BOUND};
use super::field::{Irreducibility, Level};
use super::{Field, FieldElement, Poly, Rational};
use crate::error::{Error, Result};

impl Field {
    /// Adjoins a root `name` of `minpoly` (monic, over `base`) with the given
    /// relative automorphisms. Each image is a coordinate vector of length
    /// `deg minpoly` over `base`. The identity is added when missing.
    pub fn extend(base: &Field, name: &str, minpoly: &Poly, images: &[Vec<FieldElement>]) -> Result<Field> {
        if minpoly.field() != base {
            return Err(Error::TowerMismatch);
        }
        let d = minpoly.degree().unwrap_or(0);
        if d < 2 {
            return Err(Error::Degenerate(d));
        }
        if !minpoly.is_monic() {
            return Err(Error::NotMonic);
        }
        let irreducibility = check_irreducible(minpoly)?;
        let m = base.abs_degree();
        let raw_minpoly: Vec<Vec<Rational>> = minpoly.coeffs().iter().map(|c| c.coords().to_vec()).collect();

        let mut level = Level {
            base: Some(base.clone()),
            depth: base.depth() + 1,
            degree: d,
            abs_degree: d * m,
            minpoly: raw_minpoly,
            generator: name.to_string(),
            images: Vec::new(),
            table: Vec::new(),
            irreducibility,
        };
        let provisional = Field(Arc::new(Level {
            base: level.base.clone(),
            depth: level.depth,
            degree: d,
            abs_degree: level.abs_degree,
            minpoly: level.minpoly.clone(),
            generator: level.generator.clone(),
            images: Vec::new(),
            table: Vec::new(),
            irreducibility,
        }));
        let identity = provisional.raw_generator();
        let mut list = vec![identity];
        for (idx, img) in images.iter().enumerate() {
            if img.len() != d {
                return Err(Error::DimensionMismatch(format!(
                    "automorphism image needs {d} coordinates, got {}",
                    img.len()
                )));
            }
            let mut flat = Vec::with_capacity(d * m);
            for c in img {
                if c.field() != base {
                    return Err(Error::TowerMismatch);
                }
                flat.extend(c.coords().iter().cloned());
            }
            let value = provisional.raw_eval_base_poly(&level.minpoly, &flat);
            if !value.iter().all(Zero::is_zero) {
                return Err(Error::NonRoot(idx + 1));
            }
            if !list.contains(&flat) {
                list.push(flat);
            }
        }
        let mut table = vec![vec![0; list.len()]; list.len()];
        for (a, img_a) in list.iter().enumerate() {
            for (b, img_b) in list.iter().enumerate() {
                let coeffs: Vec<Vec<Rational>> = img_b.chunks(m).map(<[Rational]>::to_vec).collect();
                let comp = provisional.raw_eval_base_poly(&coeffs, img_a);
                table[a][b] = list.iter().position(|x| x == &comp).ok_or(Error::NotClosed)?;
            }
        }
        level.images = list;
        level.table = table;
        Ok(Field(Arc::new(level)))
    }

    /// `Q(√d)` for a non-square integer `d`; the generator is
    /// named `i` for `d = -1`, `sqrtD` for positive and `sqrtmD` for negative `d`.
    pub fn quadratic(d: i64) -> Result<Field> {
        let name = if d == -1 {
            "i".to_string()
        } else if d < 0 {
            format!("sqrtm{}", -d)
        } else {
            format!("sqrt{d}")
        };
        tower_quadratic(&Field::rationals(), d, &name)
    }

    /// The cyclotomic field `Q(ζ_n)` for `3 ≤ n ≤ 12`, with its full Galois
    /// group `ζ ↦ ζ^k`, `gcd(k, n) = 1`.
    pub fn cyclotomic(n: u32) -> Result<Field> {
        if !(1..=12).contains(&n) {
            return Err(Error::DegreeTooLarge(n as usize));
        }
        let q = Field::rationals();
        let phi = cyclotomic_poly(n);
        let d = phi.degree().unwrap_or(0);
        if d < 2 {
            return Err(Error::Degenerate(d));
        }
        let name = format!("zeta{n}");
        // Reduce t^k modulo Φ_n for each unit k.
        let images: Vec<Vec<FieldElement>> = (1..n)
            .filter(|k| k.gcd(&n) == 1)
            .map(|k| {
                let r = Poly::x(&q).pow(k as usize).rem(&phi).expect("nonzero modulus");
                (0..d).map(|s| r.coeff(s)).collect()
            })
            .collect();
        Field::extend(&q, &name, &phi, &images)
    }
}

/// Adjoins `√d` for an integer `d` to any level, with images `±√d`.
pub fn tower_quadratic(base: &Field, d: i64, name: &str) -> Result<Field> {
    let minpoly = Poly::new(
        base,
        vec![
            FieldElement::from_int(base, -d),
            FieldElement::zero(base),
            FieldElement::one(base),
        ],
    );
    let images = vec![vec![FieldElement::zero(base), FieldElement::from_int(base, -1)]];
    Field::extend(base, name, &minpoly, &images)
}

/// The n-th cyclotomic polynomial over Q.
pub fn cyclotomic_poly(n: u32) -> Poly {
    let q = Field::rationals();
    let mut coeffs = vec![Rational::zero(); n as usize + 1];
    coeffs[0] = -Rational::one();
    coeffs[n as usize] = Rational::one();
    let mut p = Poly::from_rationals(&q, &coeffs);
    for k in 1..n {
        if n.is_multiple_of(k) {
            p = p.exact_div(&cyclotomic_poly(k)).expect("divides t^n - 1");
        }
    }
    p
}

fn check_irreducible(minpoly: &Poly) -> Result<Irreducibility> {
    let base = minpoly.field();
    let d = minpoly.degree().unwrap_or(0);
    if base.is_rationals() {
        if d > FACTOR_DEGREE_BOUND {
            return Ok(Irreducibility::Unverified);
        }
        return if is_irreducible_over_q(minpoly)? {
            Ok(Irreducibility::Verified)
        } else {
            Err(Error::Reducible)
        };
    }
    if base.irreducibility() == Irreducibility::Unverified {
        return Ok(Irreducibility::Unverified);
    }
    let f = factor_over_field(minpoly);
    let split = f.factors.len() > 1 || f.factors.iter().any(|(_, m)| *m > 1);
    match (split, f.complete) {
        (true, _) => Err(Error::Reducible),
        (false, true) => Ok(Irreducibility::Verified),
        (false, false) => Ok(Irreducibility::Unverified),
    }
}
