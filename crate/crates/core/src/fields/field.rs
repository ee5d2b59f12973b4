//! Tower levels and the raw arithmetic on flat coordinate vectors.
//!
//! An element of a level of absolute degree `D` is stored as `D` rationals.
//! For a level `K = B(θ)` with relative degree `d` over `B`, the flat vector
//! is the concatenation of the `d` power-basis coordinates (each a flat
//! element of `B`), so index `s * [B:Q] + r` is coordinate `r` of the
//! coefficient of `θ^s`. Lifting from a lower level is zero padding.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Whether the minimal polynomial of a level was checked for irreducibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irreducibility {
    Verified,
    Unverified,
}

/// One level of a number-field tower, or the rationals.
#[derive(Clone)]
pub struct Field(pub(crate) Arc<Level>);

pub(crate) struct Level {
    pub(crate) base: Option<Field>,
    pub(crate) depth: usize,
    pub(crate) degree: usize,
    pub(crate) abs_degree: usize,
    /// Coefficients over the base, low to high, `minpoly[degree] == 1`.
    pub(crate) minpoly: Vec<Vec<Rational>>,
    pub(crate) generator: String,
    /// Images of the generator under the relative automorphisms (flat, this level).
    pub(crate) images: Vec<Vec<Rational>>,
    /// `table[a][b]` is the index of `images[a] ∘ images[b]`.
    pub(crate) table: Vec<Vec<usize>>,
    pub(crate) irreducibility: Irreducibility,
}

pub(crate) fn raw_is_zero(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

fn raw_is_scalar(a: &[Rational]) -> bool {
    a[1..].iter().all(Zero::is_zero)
}

fn add_assign(acc: &mut [Rational], b: &[Rational]) {
    for (x, y) in acc.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += y;
        }
    }
}

fn sub_assign(acc: &mut [Rational], b: &[Rational]) {
    for (x, y) in acc.iter_mut().zip(b) {
        if !y.is_zero() {
            *x -= y;
        }
    }
}

impl Field {
    /// The field of rational numbers.
    pub fn rationals() -> Field {
        Field(Arc::new(Level {
            base: None,
            depth: 0,
            degree: 1,
            abs_degree: 1,
            minpoly: Vec::new(),
            generator: String::new(),
            images: vec![vec![Rational::one()]],
            table: vec![vec![0]],
            irreducibility: Irreducibility::Verified,
        }))
    }

    pub fn is_rationals(&self) -> bool {
        self.0.base.is_none()
    }

    pub fn base(&self) -> Option<&Field> {
        self.0.base.as_ref()
    }

    /// Number of extension steps above the rationals.
    pub fn depth(&self) -> usize {
        self.0.depth
    }

    /// Degree over the immediate base.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Degree over the rationals.
    pub fn abs_degree(&self) -> usize {
        self.0.abs_degree
    }

    pub fn generator_name(&self) -> &str {
        &self.0.generator
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.0.irreducibility
    }

    /// `true` when the stored relative automorphism group has order equal to
    /// the relative degree.
    pub fn is_galois(&self) -> bool {
        self.0.images.len() == self.0.degree
    }

    /// Composition table of the relative automorphisms.
    pub fn composition_table(&self) -> &[Vec<usize>] {
        &self.0.table
    }

    pub fn relative_automorphism_count(&self) -> usize {
        self.0.images.len()
    }

    /// All levels from the rationals (index 0) up to `self`.
    pub fn levels(&self) -> Vec<Field> {
        let mut out = vec![self.clone()];
        let mut cur = self.clone();
        while let Some(b) = cur.base().cloned() {
            out.push(b.clone());
            cur = b;
        }
        out.reverse();
        out
    }

    /// The level of this tower at the given depth.
    pub fn level(&self, depth: usize) -> Option<Field> {
        if depth > self.depth() {
            return None;
        }
        Some(self.levels()[depth].clone())
    }

    /// `true` when `other` is one of the levels of this tower (including `self`).
    pub fn has_level(&self, other: &Field) -> bool {
        self.level(other.depth()).is_some_and(|l| &l == other)
    }

    /// Degree of `self` over a sub-level.
    pub fn degree_over(&self, sub: &Field) -> Result<usize> {
        if !self.has_level(sub) {
            return Err(Error::NotSubLevel);
        }
        Ok(self.abs_degree() / sub.abs_degree())
    }

    /// Human-readable name such as `Q`, `Q(i)` or `Q(sqrt2)(i)`.
    pub fn name(&self) -> String {
        match self.base() {
            None => "Q".to_string(),
            Some(b) => format!("{}({})", b.name(), self.0.generator),
        }
    }

    pub(crate) fn raw_zero(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.abs_degree()]
    }

    pub(crate) fn raw_one(&self) -> Vec<Rational> {
        let mut v = self.raw_zero();
        v[0] = Rational::one();
        v
    }

    pub(crate) fn raw_generator(&self) -> Vec<Rational> {
        let mut v = self.raw_zero();
        match self.base() {
            None => v[0] = Rational::one(),
            Some(b) => {
                if self.degree() == 1 {
                    v[0] = Rational::one();
                } else {
                    v[b.abs_degree()] = Rational::one();
                }
            }
        }
        v
    }

    pub(crate) fn raw_minpoly(&self) -> &[Vec<Rational>] {
        &self.0.minpoly
    }

    pub(crate) fn raw_images(&self) -> &[Vec<Rational>] {
        &self.0.images
    }

    pub(crate) fn raw_add(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub(crate) fn raw_sub(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub(crate) fn raw_scale(&self, a: &[Rational], c: &Rational) -> Vec<Rational> {
        a.iter().map(|x| x * c).collect()
    }

    pub(crate) fn raw_mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let base = match self.base() {
            None => return vec![&a[0] * &b[0]],
            Some(b) => b,
        };
        if raw_is_scalar(b) {
            return self.raw_scale(a, &b[0]);
        }
        if raw_is_scalar(a) {
            return self.raw_scale(b, &a[0]);
        }
        let d = self.degree();
        let m = base.abs_degree();
        let mut acc = vec![vec![Rational::zero(); m]; 2 * d - 1];
        for s in 0..d {
            let a_s = &a[s * m..(s + 1) * m];
            if raw_is_zero(a_s) {
                continue;
            }
            for t in 0..d {
                let b_t = &b[t * m..(t + 1) * m];
                if raw_is_zero(b_t) {
                    continue;
                }
                let p = base.raw_mul(a_s, b_t);
                add_assign(&mut acc[s + t], &p);
            }
        }
        let minpoly = self.raw_minpoly();
        for k in (d..2 * d - 1).rev() {
            if raw_is_zero(&acc[k]) {
                continue;
            }
            let top = std::mem::take(&mut acc[k]);
            for (j, mj) in minpoly.iter().enumerate().take(d) {
                if raw_is_zero(mj) {
                    continue;
                }
                let p = base.raw_mul(&top, mj);
                sub_assign(&mut acc[k - d + j], &p);
            }
        }
        acc.truncate(d);
        acc.into_iter().flatten().collect()
    }

    /// Multiplies by the generator of this level.
    fn raw_mul_generator(&self, a: &[Rational]) -> Vec<Rational> {
        let base = self.base().expect("generator of an extension level");
        let d = self.degree();
        let m = base.abs_degree();
        let top = a[(d - 1) * m..].to_vec();
        let mut out = vec![Rational::zero(); m];
        out.extend_from_slice(&a[..(d - 1) * m]);
        if !raw_is_zero(&top) {
            for (j, mj) in self.raw_minpoly().iter().enumerate().take(d) {
                if raw_is_zero(mj) {
                    continue;
                }
                let p = base.raw_mul(&top, mj);
                sub_assign(&mut out[j * m..(j + 1) * m], &p);
            }
        }
        out
    }

    /// Matrix of multiplication by `a` over the base: `cols[s]` holds the
    /// coordinates of `a·θ^s`, split into base chunks.
    fn raw_mult_matrix(&self, a: &[Rational]) -> Vec<Vec<Vec<Rational>>> {
        let base = self.base().expect("extension level");
        let d = self.degree();
        let m = base.abs_degree();
        let mut cols = Vec::with_capacity(d);
        let mut v = a.to_vec();
        for s in 0..d {
            if s > 0 {
                v = self.raw_mul_generator(&v);
            }
            cols.push(v.chunks(m).map(<[Rational]>::to_vec).collect::<Vec<_>>());
        }
        // transpose to row-major: rows[r][s] = coordinate r of a·θ^s
        (0..d).map(|r| (0..d).map(|s| cols[s][r].clone()).collect()).collect()
    }

    pub(crate) fn raw_inv(&self, a: &[Rational]) -> Result<Vec<Rational>> {
        if raw_is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let base = match self.base() {
            None => return Ok(vec![a[0].recip()]),
            Some(b) => b,
        };
        if raw_is_scalar(a) {
            let mut out = self.raw_zero();
            out[0] = a[0].recip();
            return Ok(out);
        }
        let d = self.degree();
        let mut rows = self.raw_mult_matrix(a);
        let mut rhs: Vec<Vec<Rational>> = vec![base.raw_zero(); d];
        rhs[0] = base.raw_one();
        // Gauss-Jordan over the base level.
        for col in 0..d {
            let piv = (col..d)
                .find(|&r| !raw_is_zero(&rows[r][col]))
                .ok_or(Error::DivisionByZero)?;
            rows.swap(col, piv);
            rhs.swap(col, piv);
            let inv = base.raw_inv(&rows[col][col])?;
            for c in col..d {
                rows[col][c] = base.raw_mul(&rows[col][c], &inv);
            }
            rhs[col] = base.raw_mul(&rhs[col], &inv);
            for r in 0..d {
                if r == col || raw_is_zero(&rows[r][col]) {
                    continue;
                }
                let f = rows[r][col].clone();
                for c in col..d {
                    let p = base.raw_mul(&f, &rows[col][c]);
                    rows[r][c] = base.raw_sub(&rows[r][c], &p);
                }
                let p = base.raw_mul(&f, &rhs[col]);
                rhs[r] = base.raw_sub(&rhs[r], &p);
            }
        }
        Ok(rhs.into_iter().flatten().collect())
    }

    /// Relative norm down to the immediate base (flat base coordinates).
    pub(crate) fn raw_norm_to_base(&self, a: &[Rational]) -> Vec<Rational> {
        let base = self.base().expect("extension level");
        let d = self.degree();
        let mut rows = self.raw_mult_matrix(a);
        let mut det = base.raw_one();
        for col in 0..d {
            let piv = match (col..d).find(|&r| !raw_is_zero(&rows[r][col])) {
                Some(p) => p,
                None => return base.raw_zero(),
            };
            if piv != col {
                rows.swap(col, piv);
                det = det.iter().map(|x| -x).collect();
            }
            det = base.raw_mul(&det, &rows[col][col]);
            let inv = base.raw_inv(&rows[col][col]).expect("nonzero pivot");
            for r in col + 1..d {
                if raw_is_zero(&rows[r][col]) {
                    continue;
                }
                let f = base.raw_mul(&rows[r][col], &inv);
                for c in col..d {
                    let p = base.raw_mul(&f, &rows[col][c]);
                    rows[r][c] = base.raw_sub(&rows[r][c], &p);
                }
            }
        }
        det
    }

    /// Norm all the way down to the rationals.
    pub(crate) fn raw_abs_norm(&self, a: &[Rational]) -> Rational {
        match self.base() {
            None => a[0].clone(),
            Some(b) => b.raw_abs_norm(&self.raw_norm_to_base(a)),
        }
    }

    /// Evaluates a polynomial with coefficients in the base (flat) at a point
    /// of this level.
    pub(crate) fn raw_eval_base_poly(&self, coeffs: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
        let mut acc = self.raw_zero();
        for c in coeffs.iter().rev() {
            acc = self.raw_mul(&acc, x);
            let lifted = self.raw_lift(c);
            acc = self.raw_add(&acc, &lifted);
        }
        acc
    }

    /// Zero-pads flat coordinates of a lower level.
    pub(crate) fn raw_lift(&self, lower: &[Rational]) -> Vec<Rational> {
        let mut v = lower.to_vec();
        v.resize(self.abs_degree(), Rational::zero());
        v
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        self.depth() == other.depth()
            && self.degree() == other.degree()
            && self.0.generator == other.0.generator
            && self.0.minpoly == other.0.minpoly
            && self.base() == other.base()
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.name())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
