#![allow(dead_code)]

use lieform::fields::{tower_quadratic, Field, FieldElement, Rational};
use lieform::liealg::LieAlgebra;
use lieform::linalg::Matrix;
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn qi() -> Field {
    Field::quadratic(-1).unwrap()
}

pub fn sqrt2() -> Field {
    Field::quadratic(2).unwrap()
}

/// Q ⊂ Q(i) ⊂ Q(i, √2).
pub fn biquadratic() -> Field {
    tower_quadratic(&qi(), 2, "s").unwrap()
}

pub fn rational(rng: &mut ChaCha8Rng, range: i64) -> Rational {
    let num = rng.gen_range(-range..=range);
    let den = rng.gen_range(1..=range.max(1));
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Random combination of the power-basis monomials of every level.
pub fn element(rng: &mut ChaCha8Rng, f: &Field, range: i64) -> FieldElement {
    let mut monomials = vec![FieldElement::one(f)];
    for level in f.levels().into_iter().skip(1) {
        let g = FieldElement::generator(&level).lift_to(f).unwrap();
        let mut next = Vec::new();
        for m in &monomials {
            let mut p = m.clone();
            for _ in 0..level.degree() {
                next.push(p.clone());
                p = &p * &g;
            }
        }
        monomials = next;
    }
    let mut acc = FieldElement::zero(f);
    for m in monomials {
        acc += &m.scale(&rational(rng, range));
    }
    acc
}

pub fn nonzero_element(rng: &mut ChaCha8Rng, f: &Field, range: i64) -> FieldElement {
    loop {
        let x = element(rng, f, range);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A random 2-step nilpotent algebra: `[V_a, V_b]` random in the span of the
/// last `q` basis vectors, so Jacobi holds automatically.
pub fn two_step(rng: &mut ChaCha8Rng, f: &Field, p: usize, q: usize) -> LieAlgebra {
    let mut triples = Vec::new();
    for a in 1..=p {
        for b in a + 1..=p {
            for k in 0..q {
                if rng.gen_bool(0.5) {
                    triples.push((a, b, p + 1 + k, element(rng, f, 3)));
                }
            }
        }
    }
    LieAlgebra::new(f, p + q, triples).unwrap()
}

pub fn invertible(rng: &mut ChaCha8Rng, f: &Field, n: usize) -> Matrix {
    loop {
        let rows = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| FieldElement::from_rational(f, rational(rng, 3)))
                    .collect()
            })
            .collect();
        let m = Matrix::from_rows(f, rows).unwrap();
        if !m.det().unwrap().is_zero() {
            return m;
        }
    }
}

/// A random algebra from one of several families, in a random basis.
pub fn algebra(rng: &mut ChaCha8Rng, f: &Field) -> LieAlgebra {
    use lieform::catalog::*;
    let base = match rng.gen_range(0..5) {
        0 => heisenberg(f),
        1 => r3_lambda(f, &nonzero_element(rng, f, 3)).unwrap(),
        2 => g1_alpha(f, &nonzero_element(rng, f, 3)).unwrap(),
        3 => two_step(rng, f, 3, 2),
        _ => heisenberg(f).direct_sum(&abelian(f, 1)).unwrap(),
    };
    if rng.gen_bool(0.5) {
        let p = invertible(rng, f, base.dim());
        base.change_basis(&p).unwrap()
    } else {
        base
    }
}

/// Jacobi identity on random vectors, checked independently of the
/// constructor's validation.
pub fn jacobi_holds(rng: &mut ChaCha8Rng, l: &LieAlgebra, samples: usize) -> bool {
    let f = l.field();
    let vec = |rng: &mut ChaCha8Rng| -> Vec<FieldElement> {
        (0..l.dim())
            .map(|_| FieldElement::from_rational(f, rational(rng, 3)))
            .collect()
    };
    (0..samples).all(|_| {
        let (x, y, z) = (vec(rng), vec(rng), vec(rng));
        let a = l.bracket(&x, &l.bracket(&y, &z).unwrap()).unwrap();
        let b = l.bracket(&y, &l.bracket(&z, &x).unwrap()).unwrap();
        let c = l.bracket(&z, &l.bracket(&x, &y).unwrap()).unwrap();
        a.iter().zip(&b).zip(&c).all(|((a, b), c)| (&(a + b) + c).is_zero())
    })
}
