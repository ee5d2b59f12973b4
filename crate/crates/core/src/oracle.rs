//! A layered isomorphism oracle that only answers when it can justify the
//! answer: refutations come from invariants, confirmations from an explicit
//! matrix that passes [`verify_morphism`].
//!
//! Layers, in order: fingerprints; the `c` invariant for type (8, 2); exact
//! equality of structure constants; normal forms for abelian and
//! Heisenberg-type algebras; the diagonal almost-abelian family (which covers
//! `r_{3,λ}` and `g1(α)`), where the `ad` spectrum up to scaling is complete.

use crate::fields::FieldElement;
use crate::liealg::{fingerprint, verify_morphism, LieAlgebra};
use crate::linalg::Matrix;
use crate::pfaffian::{refute_isomorphism_by_c, CVerdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoVerdict {
    /// Isomorphic; the matrix, when present, maps the first algebra onto the
    /// second and has been verified.
    Isomorphic(Option<Matrix>),
    /// Refuted, with the distinguishing invariant.
    NotIsomorphic(String),
    Unknown,
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, IsoVerdict::NotIsomorphic(_))
    }
}

pub fn iso_oracle(a: &LieAlgebra, b: &LieAlgebra) -> IsoVerdict {
    if a.field() != b.field() {
        return IsoVerdict::Unknown;
    }
    let (fa, fb) = (fingerprint(a), fingerprint(b));
    if fa != fb {
        return IsoVerdict::NotIsomorphic(format!("fingerprints differ: {fa:?} vs {fb:?}"));
    }
    if fa.two_step_type == Some((8, 2)) {
        if let CVerdict::Refuted { c1, c2 } = refute_isomorphism_by_c(a, b) {
            return IsoVerdict::NotIsomorphic(format!("c invariants differ: {c1} vs {c2}"));
        }
    }
    if a.constants() == b.constants() {
        return IsoVerdict::Isomorphic(Some(Matrix::identity(a.field(), a.dim())));
    }
    if let (Some(pa), Some(pb)) = (heisenberg_normal_form(a), heisenberg_normal_form(b)) {
        if let Ok(inv) = pa.inverse() {
            let m = pb.mul(&inv).expect("square");
            return confirm_with_certificate(a, b, &m);
        }
    }
    if let (Some(sa), Some(sb)) = (diagonal_spectrum(a), diagonal_spectrum(b)) {
        return match spectrum_certificate(a, &sa, &sb) {
            Some(m) => confirm_with_certificate(a, b, &m),
            None => IsoVerdict::NotIsomorphic("ad spectra differ up to scaling".into()),
        };
    }
    IsoVerdict::Unknown
}

/// Confirms with a supplied matrix, or stays undecided if it fails.
pub fn confirm_with_certificate(a: &LieAlgebra, b: &LieAlgebra, m: &Matrix) -> IsoVerdict {
    if verify_morphism(a, b, m).is_isomorphism() {
        IsoVerdict::Isomorphic(Some(m.clone()))
    } else {
        IsoVerdict::Unknown
    }
}

/// For an algebra with `dim [L,L] <= 1` and `[L,L]` central, a matrix whose
/// columns `x_1, y_1, …, x_m, y_m, z, r_1, …` satisfy `[x_k, y_k] = z` and
/// no other brackets.
fn heisenberg_normal_form(l: &LieAlgebra) -> Option<Matrix> {
    let field = l.field();
    let n = l.dim();
    let derived = l.derived_subalgebra();
    if derived.dim() == 0 {
        return Some(Matrix::identity(field, n));
    }
    if derived.dim() != 1 || l.bracket_spaces(&l.whole_space(), &derived).dim() != 0 {
        return None;
    }
    let z = derived.basis()[0].clone();
    let omega = |u: &[FieldElement], v: &[FieldElement]| -> FieldElement {
        derived
            .coordinates(&l.bracket_unchecked(u, v))
            .expect("bracket in commutator")[0]
            .clone()
    };
    let mut rest: Vec<Vec<FieldElement>> = derived
        .complement_indices()
        .into_iter()
        .map(|i| l.basis_vector(i))
        .collect();
    let mut cols = Vec::with_capacity(n);
    loop {
        let pair = (0..rest.len())
            .flat_map(|i| (i + 1..rest.len()).map(move |j| (i, j)))
            .find(|&(i, j)| !omega(&rest[i], &rest[j]).is_zero());
        let Some((i, j)) = pair else { break };
        let x = rest[i].clone();
        let w = omega(&rest[i], &rest[j]).inv().ok()?;
        let y: Vec<FieldElement> = rest[j].iter().map(|c| c * &w).collect();
        rest.remove(j);
        rest.remove(i);
        for v in rest.iter_mut() {
            let (a, b) = (omega(v, &x), omega(v, &y));
            *v = v
                .iter()
                .zip(&x)
                .zip(&y)
                .map(|((vk, xk), yk)| &(vk + &(&a * yk)) - &(&b * xk))
                .collect();
        }
        cols.push(x);
        cols.push(y);
    }
    cols.push(z);
    cols.extend(rest);
    Matrix::from_cols(field, n, &cols).ok()
}

/// `[X_1, X_k] = α_k X_k` with every `α_k` nonzero and no other brackets.
fn diagonal_spectrum(l: &LieAlgebra) -> Option<Vec<FieldElement>> {
    let n = l.dim();
    if n < 2 {
        return None;
    }
    let mut spec = Vec::with_capacity(n - 1);
    for k in 1..n {
        match l.bracket_basis(0, k).as_slice() {
            [(idx, c)] if *idx == k => spec.push(c.clone()),
            _ => return None,
        }
    }
    for i in 1..n {
        for j in i + 1..n {
            if !l.bracket_basis(i, j).is_empty() {
                return None;
            }
        }
    }
    Some(spec)
}

/// A map `X_1 ↦ s X_1`, `X_k ↦ X_{π(k)}` with `α_k = s β_{π(k)}`.
fn spectrum_certificate(l: &LieAlgebra, a: &[FieldElement], b: &[FieldElement]) -> Option<Matrix> {
    if a.len() != b.len() {
        return None;
    }
    let field = l.field();
    for bj in b {
        let s = a[0].checked_div(bj).ok()?;
        let mut used = vec![false; b.len()];
        let mut perm = Vec::with_capacity(a.len());
        for ak in a {
            match (0..b.len()).find(|&t| !used[t] && &(&s * &b[t]) == ak) {
                Some(t) => {
                    used[t] = true;
                    perm.push(t);
                }
                None => break,
            }
        }
        if perm.len() != a.len() {
            continue;
        }
        let n = l.dim();
        let mut m = Matrix::zeros(field, n, n);
        m.set(0, 0, s);
        for (k, &t) in perm.iter().enumerate() {
            m.set(t + 1, k + 1, FieldElement::one(field));
        }
        return Some(m);
    }
    None
}
