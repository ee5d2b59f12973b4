//! Dense univariate polynomials over a tower level.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Field, FieldElement, Rational};
use crate::error::{Error, Result};

/// Coefficients low to high; the leading coefficient is nonzero unless the
/// polynomial is zero (empty coefficient vector).
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(field: &Field, coeffs: Vec<FieldElement>) -> Poly {
        let mut p = Poly {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn from_rationals(field: &Field, coeffs: &[Rational]) -> Poly {
        Poly::new(
            field,
            coeffs
                .iter()
                .map(|c| FieldElement::from_rational(field, c.clone()))
                .collect(),
        )
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(
            field,
            coeffs.iter().map(|&c| FieldElement::from_int(field, c)).collect(),
        )
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(FieldElement::one(field))
    }

    pub fn constant(c: FieldElement) -> Poly {
        let f = c.field().clone();
        Poly::new(&f, vec![c])
    }

    /// The polynomial `t`.
    pub fn x(field: &Field) -> Poly {
        Poly::new(field, vec![FieldElement::zero(field), FieldElement::one(field)])
    }

    /// `t - c`.
    pub fn linear(c: &FieldElement) -> Poly {
        let f = c.field().clone();
        Poly::new(&f, vec![-c, FieldElement::one(&f)])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(FieldElement::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(FieldElement::is_one)
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(&self.field, (0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(&self.field, (0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut out = vec![FieldElement::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += &(a * b);
            }
        }
        Poly::new(&self.field, out)
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.leading().expect("nonzero").inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(&self.field), self.clone()));
        }
        let mut quot = vec![FieldElement::zero(&self.field); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let c = &rem[k] * &lead_inv;
            for (j, dj) in divisor.coeffs.iter().enumerate() {
                if !dj.is_zero() {
                    let t = &c * dj;
                    rem[k - dd + j] -= &t;
                }
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(&self.field, quot), Poly::new(&self.field, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::ConstraintViolated("polynomial division is not exact".into()));
        }
        Ok(q)
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = l.inv().expect("nonzero");
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            &self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&Rational::from_integer(BigInt::from(k))))
                .collect(),
        )
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Yun's algorithm: pairs `(a_i, i)` with `self = lc · ∏ a_i^i`, each `a_i`
    /// monic, squarefree and pairwise coprime. Trivial factors are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let mut a = f.gcd(&fp);
        let mut b = f.exact_div(&a).expect("gcd divides");
        let mut c = fp.exact_div(&a).expect("gcd divides");
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a).expect("gcd divides");
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.exact_div(&a).expect("gcd divides");
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(x.field());
        for c in self.coeffs.iter().rev() {
            let c = if c.field() == x.field() {
                c.clone()
            } else {
                c.lift_to(x.field()).expect("evaluation point must lie in an extension")
            };
            acc = &(&acc * x) + &c;
        }
        acc
    }

    /// `self(t + c)`.
    pub fn shift(&self, c: &FieldElement) -> Poly {
        let lin = Poly::new(&self.field, vec![c.clone(), FieldElement::one(&self.field)]);
        let mut acc = Poly::zero(&self.field);
        for coeff in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::constant(coeff.clone()));
        }
        acc
    }

    /// Coefficients embedded into an extension of this polynomial's field.
    pub fn lift_to(&self, bigger: &Field) -> Result<Poly> {
        Ok(Poly::new(
            bigger,
            self.coeffs
                .iter()
                .map(|c| c.lift_to(bigger))
                .collect::<Result<Vec<_>>>()?,
        ))
    }

    /// Rational coefficient vector, if every coefficient is rational.
    pub fn rational_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(FieldElement::as_rational).collect()
    }

    /// Every rational root, ascending, found by divisor search on the
    /// primitive integer form of the rational part.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.is_zero() {
            return Vec::new();
        }
        // r is a root iff every rational coordinate polynomial vanishes at r.
        let q = Field::rationals();
        let n = self.field.abs_degree();
        let mut g = Poly::zero(&q);
        for u in 0..n {
            let cu: Vec<Rational> = self.coeffs.iter().map(|c| c.coords()[u].clone()).collect();
            let pu = Poly::from_rationals(&q, &cu);
            if !pu.is_zero() {
                g = g.gcd(&pu);
            }
        }
        match g.rational_coeffs() {
            Some(c) if g.degree().unwrap_or(0) > 0 => rational_roots_of(&c),
            _ => Vec::new(),
        }
    }
}

/// Clears denominators and content.
pub(crate) fn primitive_integer_form(coeffs: &[Rational]) -> Vec<BigInt> {
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return ints;
    }
    let sign = if ints.last().is_some_and(|l| l.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.into_iter().map(|c| &c / &content * &sign).collect()
}

pub(crate) fn positive_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return None;
    }
    // Trial division is fine for the coefficient sizes that occur here.
    if n.bits() > 48 {
        return None;
    }
    let mut m = n.clone();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += 1;
    }
    if m > BigInt::one() {
        primes.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Some(divs)
}

fn eval_int(coeffs: &[BigInt], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + Rational::from_integer(c.clone());
    }
    acc
}

pub(crate) fn rational_roots_of(coeffs: &[Rational]) -> Vec<Rational> {
    let mut ints = primitive_integer_form(coeffs);
    let mut roots = Vec::new();
    while ints.len() > 1 && ints[0].is_zero() {
        ints.remove(0);
        if !roots.contains(&Rational::zero()) {
            roots.push(Rational::zero());
        }
    }
    if ints.len() <= 1 {
        return roots;
    }
    let a0 = ints[0].clone();
    let an = ints.last().cloned().expect("nonempty");
    match (positive_divisors(&a0), positive_divisors(&an)) {
        (Some(num), Some(den)) => {
            for p in &num {
                for q in &den {
                    for sign in [1, -1] {
                        let r = Rational::new(p * BigInt::from(sign), q.clone());
                        if !roots.contains(&r) && eval_int(&ints, &r).is_zero() {
                            roots.push(r);
                        }
                    }
                }
            }
        }
        _ => {
            let q = Field::rationals();
            let rat: Vec<Rational> = ints.iter().map(|c| Rational::from_integer(c.clone())).collect();
            let p = Poly::from_rationals(&q, &rat);
            if let Ok(factors) = super::factor::factor_rational(&p, 64) {
                for (f, _) in factors {
                    if f.degree() == Some(1) {
                        let r = -f.coeff(0).as_rational().expect("rational");
                        if !roots.contains(&r) {
                            roots.push(r);
                        }
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let power = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            let (neg, body) = match c.as_rational() {
                Some(r) => {
                    let neg = r.is_negative();
                    let a = r.abs();
                    let body = if a.is_one() && k > 0 {
                        String::new()
                    } else {
                        a.to_string()
                    };
                    (neg, body)
                }
                None => (false, format!("({c})")),
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            match (body.is_empty(), power.is_empty()) {
                (true, _) => f.write_str(&power)?,
                (false, true) => f.write_str(&body)?,
                (false, false) => write!(f, "{body}*{power}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn rational_roots_examples() {
        let p = Poly::from_ints(&q(), &[0, -1, 1]);
        assert_eq!(p.rational_roots(), vec![r(0), r(1)]);
        let p = Poly::from_ints(&q(), &[-1, 0, 4]);
        assert_eq!(
            p.rational_roots(),
            vec![Rational::new((-1).into(), 2.into()), Rational::new(1.into(), 2.into())]
        );
        let p = Poly::from_ints(&q(), &[1, 0, 1]);
        assert!(p.rational_roots().is_empty());
    }

    #[test]
    fn gcd_example() {
        let a = Poly::from_ints(&q(), &[-1, 0, 1]);
        let b = Poly::from_ints(&q(), &[1, -2, 1]);
        assert_eq!(a.gcd(&b), Poly::from_ints(&q(), &[-1, 1]));
    }

    #[test]
    fn squarefree() {
        // (t-1)^2 (t+2)
        let p = Poly::from_ints(&q(), &[-1, 1])
            .pow(2)
            .mul(&Poly::from_ints(&q(), &[2, 1]));
        assert_eq!(
            p.squarefree_part(),
            Poly::from_ints(&q(), &[-1, 1]).mul(&Poly::from_ints(&q(), &[2, 1]))
        );
        let dec = p.squarefree_decomposition();
        assert_eq!(
            dec,
            vec![
                (Poly::from_ints(&q(), &[2, 1]), 1),
                (Poly::from_ints(&q(), &[-1, 1]), 2)
            ]
        );
    }

    #[test]
    fn ext_gcd_identity() {
        let a = Poly::from_ints(&q(), &[1, 0, 1]);
        let b = Poly::from_ints(&q(), &[-2, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert!(g.degree() == Some(0));
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn rational_roots_over_gaussian_field() {
        let qi = Field::quadratic(-1).unwrap();
        // (t - 3)(t - i)
        let i = FieldElement::generator(&qi);
        let p = Poly::linear(&FieldElement::from_int(&qi, 3)).mul(&Poly::linear(&i));
        assert_eq!(p.rational_roots(), vec![r(3)]);
    }
}
