//! Factorization over the rationals and over tower levels.
//!
//! Over Q: squarefree split, then a Zassenhaus search modulo a single prime
//! large enough that every true factor's coefficients are recovered by the
//! symmetric lift, so no Hensel lifting is needed. Over an extension: the
//! norm-and-gcd method, shifting the variable until the norm is squarefree.

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::poly::{primitive_integer_form, Poly};
use super::{Field, FieldElement, Rational};
use crate::error::{Error, Result};

/// Largest degree accepted by [`factor_over_q`].
pub const FACTOR_DEGREE_BOUND: usize = 12;

/// Internal bound for norms of polynomials over extensions.
const INTERNAL_DEGREE_BOUND: usize = 48;

/// Monic irreducible factors over Q with multiplicities, ordered by degree
/// then coefficients.
pub fn factor_over_q(p: &Poly) -> Result<Vec<(Poly, usize)>> {
    factor_rational(p, FACTOR_DEGREE_BOUND)
}

pub(crate) fn factor_rational(p: &Poly, bound: usize) -> Result<Vec<(Poly, usize)>> {
    let coeffs = p
        .rational_coeffs()
        .ok_or_else(|| Error::WrongShape("factorization over Q needs rational coefficients".into()))?;
    let deg = p.degree().ok_or(Error::DivisionByZero)?;
    if deg > bound {
        return Err(Error::DegreeTooLarge(deg));
    }
    let q = Field::rationals();
    let p = Poly::from_rationals(&q, &coeffs);
    let mut out = Vec::new();
    for (part, mult) in p.squarefree_decomposition() {
        let ints = primitive_integer_form(&part.rational_coeffs().expect("rational"));
        for f in factor_squarefree_z(ints) {
            let rat: Vec<Rational> = f.into_iter().map(Rational::from_integer).collect();
            out.push((Poly::from_rationals(&q, &rat).monic(), mult));
        }
    }
    sort_factors(&mut out);
    Ok(out)
}

fn sort_factors(v: &mut [(Poly, usize)]) {
    v.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| coefficient_key(a).cmp(&coefficient_key(b)))
    });
}

fn coefficient_key(p: &Poly) -> Vec<Rational> {
    p.coeffs().iter().flat_map(|c| c.coords().iter().cloned()).collect()
}

/// Whether a rational polynomial of degree at most the bound is irreducible.
pub fn is_irreducible_over_q(p: &Poly) -> Result<bool> {
    let f = factor_over_q(p)?;
    Ok(f.len() == 1 && f[0].1 == 1)
}

// ---------------------------------------------------------------------------
// Integer polynomials modulo a prime. Coefficients low to high, reduced to
// [0, p), no trailing zeros.

type ModPoly = Vec<BigInt>;

fn mp_trim(mut a: ModPoly) -> ModPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn mp_reduce(a: &[BigInt], p: &BigInt) -> ModPoly {
    mp_trim(a.iter().map(|c| c.mod_floor(p)).collect())
}

fn mp_sub(a: &[BigInt], b: &[BigInt], p: &BigInt) -> ModPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    mp_trim(
        (0..n)
            .map(|k| (a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z)).mod_floor(p))
            .collect(),
    )
}

fn mp_mul(a: &[BigInt], b: &[BigInt], p: &BigInt) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    mp_reduce(&out, p)
}

fn mod_inv(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    e.x.mod_floor(p)
}

fn mp_divrem(a: &[BigInt], b: &[BigInt], p: &BigInt) -> (ModPoly, ModPoly) {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let inv = mod_inv(&b[db], p);
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for k in (db..rem.len()).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let c = (&rem[k] * &inv).mod_floor(p);
        for (j, bj) in b.iter().enumerate() {
            rem[k - db + j] = (&rem[k - db + j] - &c * bj).mod_floor(p);
        }
        quot[k - db] = c;
    }
    rem.truncate(db);
    (mp_trim(quot), mp_trim(rem))
}

fn mp_rem(a: &[BigInt], b: &[BigInt], p: &BigInt) -> ModPoly {
    mp_divrem(a, b, p).1
}

fn mp_monic(a: &[BigInt], p: &BigInt) -> ModPoly {
    match a.last() {
        None => Vec::new(),
        Some(l) => {
            let inv = mod_inv(l, p);
            mp_reduce(&a.iter().map(|c| c * &inv).collect::<Vec<_>>(), p)
        }
    }
}

fn mp_gcd(a: &[BigInt], b: &[BigInt], p: &BigInt) -> ModPoly {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let r = mp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    mp_monic(&a, p)
}

fn mp_powmod(base: &[BigInt], exp: &BigUint, modulus: &[BigInt], p: &BigInt) -> ModPoly {
    let mut result: ModPoly = vec![BigInt::one()];
    let base = mp_rem(base, modulus, p);
    for k in (0..exp.bits()).rev() {
        result = mp_rem(&mp_mul(&result, &result, p), modulus, p);
        if exp.bit(k) {
            result = mp_rem(&mp_mul(&result, &base, p), modulus, p);
        }
    }
    result
}

fn mp_derivative(a: &[BigInt], p: &BigInt) -> ModPoly {
    mp_reduce(
        &a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect::<Vec<_>>(),
        p,
    )
}

// ---------------------------------------------------------------------------

fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    for sp in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let sp = BigInt::from(sp);
        if n == &sp {
            return true;
        }
        if (n % &sp).is_zero() {
            return false;
        }
    }
    let n1: BigInt = n - 1;
    let mut d = n1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn next_prime(mut n: BigInt) -> BigInt {
    if n.is_even() {
        n += 1;
    }
    while !is_probable_prime(&n) {
        n += 2;
    }
    n
}

fn exact_div_z(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    if a.len() <= db {
        return None;
    }
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for k in (db..rem.len()).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let (c, r) = rem[k].div_rem(&b[db]);
        if !r.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k - db + j] -= &c * bj;
        }
        quot[k - db] = c;
    }
    if rem.iter().all(Zero::is_zero) {
        Some(quot)
    } else {
        None
    }
}

fn primitive(a: Vec<BigInt>) -> Vec<BigInt> {
    let content = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if a.last().is_some_and(Signed::is_negative) {
        -1
    } else {
        1
    };
    a.into_iter().map(|c| &c / &content * sign).collect()
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Factors a primitive squarefree integer polynomial into primitive
/// irreducibles with positive leading coefficients.
fn factor_squarefree_z(f: Vec<BigInt>) -> Vec<Vec<BigInt>> {
    let f = primitive(f);
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f];
    }
    let lc = f[n].abs();
    let norm1: BigInt = f.iter().map(Signed::abs).sum();
    let bound = &lc * (BigInt::one() << n) * norm1;
    let mut p = next_prime(&bound * 2 + 1);
    loop {
        if !(&lc % &p).is_zero() {
            let fm = mp_reduce(&f, &p);
            let g = mp_gcd(&fm, &mp_derivative(&fm, &p), &p);
            if g.len() == 1 {
                break;
            }
        }
        p = next_prime(p + 1);
    }
    let fm = mp_monic(&mp_reduce(&f, &p), &p);
    let mut modular = Vec::new();
    for (g, d) in distinct_degree(&fm, &p) {
        equal_degree(&g, d, &p, &mut modular);
    }
    if modular.len() == 1 {
        return vec![f];
    }
    let half = &p >> 1;
    let symmetric = |c: BigInt| if c > half { c - &p } else { c };
    let mut remaining = f;
    let mut result = Vec::new();
    let mut s = 1;
    while 2 * s <= modular.len() {
        let lc_rem = remaining.last().expect("nonzero").clone();
        let mut found = None;
        for subset in subsets(modular.len(), s) {
            let mut g: ModPoly = vec![lc_rem.mod_floor(&p)];
            for &i in &subset {
                g = mp_mul(&g, &modular[i], &p);
            }
            let g = primitive(g.into_iter().map(&symmetric).collect());
            if let Some(q) = exact_div_z(&remaining, &g) {
                found = Some((subset, g, q));
                break;
            }
        }
        match found {
            Some((subset, g, q)) => {
                result.push(g);
                remaining = q;
                modular = modular
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, m)| m)
                    .collect();
            }
            None => s += 1,
        }
    }
    if remaining.len() > 1 {
        result.push(primitive(remaining));
    }
    result
}

/// Splits a monic squarefree polynomial mod p into products of irreducibles
/// of equal degree.
fn distinct_degree(f: &[BigInt], p: &BigInt) -> Vec<(ModPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x: ModPoly = vec![BigInt::zero(), BigInt::one()];
    let pu = p.to_biguint().expect("positive prime");
    let mut h = x.clone();
    let mut d = 0;
    while f.len() > 1 {
        d += 1;
        if 2 * d > f.len() - 1 {
            let deg = f.len() - 1;
            out.push((f, deg));
            break;
        }
        h = mp_powmod(&h, &pu, &f, p);
        let g = mp_gcd(&mp_sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = mp_divrem(&f, &g, p).0;
            h = mp_rem(&h, &f, p);
            out.push((g, d));
        }
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of degree-`d` irreducibles.
fn equal_degree(f: &[BigInt], d: usize, p: &BigInt, out: &mut Vec<ModPoly>) {
    let n = f.len() - 1;
    if n == d {
        out.push(f.to_vec());
        return;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + n as u64);
    let pu = p.to_biguint().expect("positive");
    let exp: BigUint = (pu.pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let a: ModPoly = mp_trim(
            (0..n)
                .map(|_| {
                    let u = rng.gen_biguint_below(&pu);
                    BigInt::from_biguint(Sign::Plus, u)
                })
                .collect(),
        );
        if a.len() < 2 {
            continue;
        }
        let g = mp_gcd(&a, f, p);
        let g = if g.len() > 1 && g.len() < f.len() {
            g
        } else {
            let b = mp_powmod(&a, &exp, f, p);
            mp_gcd(&mp_sub(&b, &[BigInt::one()], p), f, p)
        };
        if g.len() > 1 && g.len() < f.len() {
            let h = mp_monic(&mp_divrem(f, &g, p).0, p);
            equal_degree(&g, d, p, out);
            equal_degree(&h, d, p, out);
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Factoring over a tower level.

/// Result of factoring over a tower level. `complete` is false when the
/// splitting search gave up and some listed factor may still be reducible.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub factors: Vec<(Poly, usize)>,
    pub complete: bool,
}

/// Monic factors of `p` over its own field.
pub fn factor_over_field(p: &Poly) -> Factorization {
    let mut factors = Vec::new();
    let mut complete = true;
    for (part, mult) in p.squarefree_decomposition() {
        let (parts, ok) = split_squarefree(&part);
        complete &= ok;
        factors.extend(parts.into_iter().map(|f| (f, mult)));
    }
    sort_factors(&mut factors);
    Factorization { factors, complete }
}

/// Every root of `p` in its field, without multiplicity.
pub fn roots_in_field(p: &Poly) -> Vec<FieldElement> {
    factor_over_field(p)
        .factors
        .into_iter()
        .filter(|(f, _)| f.degree() == Some(1))
        .map(|(f, _)| -f.coeff(0))
        .collect()
}

fn split_squarefree(f: &Poly) -> (Vec<Poly>, bool) {
    let field = f.field().clone();
    let deg = f.degree().unwrap_or(0);
    if deg <= 1 {
        return (vec![f.monic()], true);
    }
    if let Some(c) = f.rational_coeffs() {
        if field.is_rationals() {
            let q = Poly::from_rationals(&field, &c);
            return match factor_rational(&q, INTERNAL_DEGREE_BOUND) {
                Ok(fs) => (fs.into_iter().map(|(g, _)| g).collect(), true),
                Err(_) => (vec![f.monic()], false),
            };
        }
    }
    if field.abs_degree() * deg > INTERNAL_DEGREE_BOUND {
        return (vec![f.monic()], false);
    }
    for shift in shift_candidates(&field) {
        let g = f.shift(&shift);
        let n = absolute_norm_poly(&g);
        let ncoeffs = n.rational_coeffs().expect("norm is rational");
        let nq = Poly::from_rationals(&Field::rationals(), &ncoeffs);
        if nq.gcd(&nq.derivative()).degree() != Some(0) {
            continue;
        }
        let Ok(nfactors) = factor_rational(&nq, INTERNAL_DEGREE_BOUND) else {
            return (vec![f.monic()], false);
        };
        let neg = -&shift;
        let mut out = Vec::new();
        for (h, _) in nfactors {
            let h = h.lift_to(&field).expect("rationals are a level");
            let common = g.gcd(&h);
            if common.degree().unwrap_or(0) > 0 {
                out.push(common.shift(&neg).monic());
            }
        }
        return (out, true);
    }
    (vec![f.monic()], false)
}

/// Shifts `s·α` tried in order; `α` is the top generator, then the sum of all
/// generators.
fn shift_candidates(field: &Field) -> Vec<FieldElement> {
    let top = FieldElement::generator(field);
    let mut sum = FieldElement::zero(field);
    for level in field.levels().iter().skip(1) {
        sum += &FieldElement::generator(level).lift_to(field).expect("level");
    }
    let mut out = vec![FieldElement::zero(field)];
    for s in [1i64, -1, 2, -2, 3] {
        out.push(top.scale(&Rational::from_integer(s.into())));
    }
    for s in 1i64..=6 {
        out.push(sum.scale(&Rational::from_integer(s.into())));
    }
    out
}

/// `∏_σ g^σ` over all embeddings, computed by evaluating the absolute norm at
/// rational points and interpolating.
fn absolute_norm_poly(g: &Poly) -> Poly {
    let field = g.field().clone();
    let q = Field::rationals();
    let n = field.abs_degree() * g.degree().expect("nonzero");
    let xs: Vec<Rational> = (0..=n).map(|k| Rational::from_integer(BigInt::from(k))).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|x| g.eval(&FieldElement::from_rational(&field, x.clone())).abs_norm())
        .collect();
    let coeffs = interpolate(&xs, &ys);
    Poly::from_rationals(&q, &coeffs)
}

/// Newton interpolation through the given points; coefficients low to high.
fn interpolate(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut coeffs = vec![Rational::zero(); n];
    for k in (0..n).rev() {
        // coeffs = coeffs·(t − x_k) + dd[k]
        let mut next = vec![Rational::zero(); n];
        for i in 0..n {
            if coeffs[i].is_zero() {
                continue;
            }
            if i + 1 < n {
                next[i + 1] += &coeffs[i];
            }
            next[i] -= &coeffs[i] * &xs[k];
        }
        next[0] += &dd[k];
        coeffs = next;
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn t4_minus_one() {
        let p = Poly::from_ints(&q(), &[-1, 0, 0, 0, 1]);
        let f = factor_over_q(&p).unwrap();
        let polys: Vec<Poly> = f.iter().map(|(g, _)| g.clone()).collect();
        assert_eq!(
            polys,
            vec![
                Poly::from_ints(&q(), &[-1, 1]),
                Poly::from_ints(&q(), &[1, 1]),
                Poly::from_ints(&q(), &[1, 0, 1]),
            ]
        );
    }

    #[test]
    fn swinnerton_dyer_like_irreducible() {
        // t^4 - 10 t^2 + 1 splits modulo every prime but is irreducible.
        let p = Poly::from_ints(&q(), &[1, 0, -10, 0, 1]);
        assert!(is_irreducible_over_q(&p).unwrap());
    }

    #[test]
    fn product_recovered() {
        let a = Poly::from_ints(&q(), &[3, 0, 2]);
        let b = Poly::from_ints(&q(), &[-1, 5, 0, 7]);
        let c = Poly::from_ints(&q(), &[2, 1]);
        let p = a.mul(&b).mul(&c).mul(&c);
        let f = factor_over_q(&p).unwrap();
        assert_eq!(f.len(), 3);
        let prod = f.iter().fold(Poly::one(&q()), |acc, (g, m)| acc.mul(&g.pow(*m)));
        assert_eq!(prod, p.monic());
        assert!(f.iter().any(|(g, m)| *m == 2 && g == &c.monic()));
    }

    #[test]
    fn degree_bound() {
        let mut c = vec![0i64; 14];
        c[0] = 1;
        c[13] = 1;
        let p = Poly::from_ints(&q(), &c);
        assert_eq!(factor_over_q(&p), Err(Error::DegreeTooLarge(13)));
    }

    #[test]
    fn factor_over_gaussian() {
        let qi = Field::quadratic(-1).unwrap();
        let p = Poly::from_ints(&qi, &[1, 0, 1]);
        let f = factor_over_field(&p);
        assert!(f.complete);
        assert_eq!(f.factors.len(), 2);
        let i = FieldElement::generator(&qi);
        let roots = roots_in_field(&p);
        assert!(roots.contains(&i) && roots.contains(&-&i));
        // t^2 - 2 stays irreducible over Q(i)
        let p = Poly::from_ints(&qi, &[-2, 0, 1]);
        let f = factor_over_field(&p);
        assert!(f.complete);
        assert_eq!(f.factors.len(), 1);
    }

    #[test]
    fn interpolation_recovers() {
        let xs: Vec<Rational> = (0..4).map(|k| Rational::from_integer(k.into())).collect();
        // 2t^3 - t + 5
        let ys: Vec<Rational> = xs
            .iter()
            .map(|x| Rational::from_integer(2.into()) * x * x * x - x + Rational::from_integer(5.into()))
            .collect();
        let c = interpolate(&xs, &ys);
        let expect: Vec<Rational> = [5, -1, 0, 2]
            .iter()
            .map(|&k: &i64| Rational::from_integer(k.into()))
            .collect();
        assert_eq!(c, expect);
    }
}
