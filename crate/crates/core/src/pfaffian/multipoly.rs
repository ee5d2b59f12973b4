//! Sparse multivariate polynomials.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::fields::{Field, FieldElement};
use crate::linalg::Matrix;

/// A polynomial in `nvars` variables; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, FieldElement>,
}

impl MultiPoly {
    pub fn zero(field: &Field, nvars: usize) -> MultiPoly {
        MultiPoly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElement, nvars: usize) -> MultiPoly {
        let mut p = MultiPoly::zero(c.field(), nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(field: &Field, nvars: usize, i: usize) -> MultiPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = MultiPoly::zero(field, nvars);
        p.add_term(e, FieldElement::one(field));
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms(
        field: &Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, FieldElement)>,
    ) -> Result<MultiPoly> {
        let mut p = MultiPoly::zero(field, nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch("exponent vector length".into()));
            }
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Vec<u32>, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, FieldElement> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> FieldElement {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(&self.field))
    }

    /// The common total degree, if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(&-FieldElement::one(&self.field))
    }

    pub fn scale(&self, c: &FieldElement) -> MultiPoly {
        let mut p = MultiPoly::zero(&self.field, self.nvars);
        for (e, x) in &self.terms {
            p.add_term(e.clone(), x * c);
        }
        p
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut p = MultiPoly::zero(&self.field, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(FieldElement::one(&self.field), self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `f(A x)`: each variable `x_i` becomes `Σ_j A_ij x_j`.
    pub fn substitute_linear(&self, a: &Matrix) -> Result<MultiPoly> {
        if a.nrows() != self.nvars || a.ncols() != self.nvars {
            return Err(Error::DimensionMismatch("substitution matrix".into()));
        }
        let forms: Vec<MultiPoly> = (0..self.nvars)
            .map(|i| {
                let mut p = MultiPoly::zero(&self.field, self.nvars);
                for j in 0..self.nvars {
                    let mut e = vec![0; self.nvars];
                    e[j] = 1;
                    p.add_term(e, a.get(i, j).clone());
                }
                p
            })
            .collect();
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(c.clone(), self.nvars);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul(&forms[i].pow(k));
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient (e.g. a field automorphism).
    pub fn map_coeffs(&self, f: impl Fn(&FieldElement) -> FieldElement) -> MultiPoly {
        let mut p = MultiPoly::zero(&self.field, self.nvars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), f(c));
        }
        p
    }

    fn var_names(&self) -> Vec<String> {
        if self.nvars == 2 {
            vec!["x".into(), "y".into()]
        } else {
            (1..=self.nvars).map(|i| format!("z{i}")).collect()
        }
    }
}

impl fmt::Display for MultiPoly {
    /// Terms in descending lexicographic exponent order, e.g. `x^4 + (1 + i)*x^2*y^2 + y^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let names = self.var_names();
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{k}", names[i])
                    }
                })
                .collect();
            let mono = mono.join("*");
            let (neg, body) = match c.as_rational() {
                Some(r) => {
                    let neg = r < num_traits::Zero::zero();
                    let a = if neg { -r } else { r };
                    let is_one = a == num_traits::One::one();
                    (
                        neg,
                        if is_one && !mono.is_empty() {
                            String::new()
                        } else {
                            a.to_string()
                        },
                    )
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
            match (body.is_empty(), mono.is_empty()) {
                (true, _) => f.write_str(&mono)?,
                (false, true) => f.write_str(&body)?,
                (false, false) => write!(f, "{body}*{mono}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
