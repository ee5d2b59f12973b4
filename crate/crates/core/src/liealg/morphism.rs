//! Linear and σ-semilinear maps between algebras.

use super::LieAlgebra;
use crate::fields::{Automorphism, FieldElement};
use crate::linalg::Matrix;

/// A σ-linear map: `φ(Σ a_i e_i) = Σ σ(a_i) M e_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiLinearMap {
    pub sigma: Automorphism,
    pub matrix: Matrix,
}

/// Outcome of [`verify_morphism`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MorphismCheck {
    pub preserves_bracket: bool,
    pub bijective: bool,
}

impl MorphismCheck {
    pub fn is_isomorphism(&self) -> bool {
        self.preserves_bracket && self.bijective
    }
}

fn shape_ok(l1: &LieAlgebra, l2: &LieAlgebra, m: &Matrix) -> bool {
    l1.field() == l2.field() && m.field() == l1.field() && m.nrows() == l2.dim() && m.ncols() == l1.dim()
}

/// Checks `M[e_i, e_j] = [M e_i, M e_j]` on all basis pairs, and rank.
pub fn verify_morphism(l1: &LieAlgebra, l2: &LieAlgebra, m: &Matrix) -> MorphismCheck {
    if !shape_ok(l1, l2, m) {
        return MorphismCheck {
            preserves_bracket: false,
            bijective: false,
        };
    }
    let cols = m.cols_vec();
    let n = l1.dim();
    let mut preserves = true;
    'outer: for i in 0..n {
        for j in i + 1..n {
            let mut lhs = vec![FieldElement::zero(l2.field()); l2.dim()];
            for (k, c) in l1.bracket_basis(i, j) {
                for (x, y) in lhs.iter_mut().zip(&cols[k]) {
                    if !y.is_zero() {
                        *x += &(&c * y);
                    }
                }
            }
            if lhs != l2.bracket_unchecked(&cols[i], &cols[j]) {
                preserves = false;
                break 'outer;
            }
        }
    }
    let bijective = l1.dim() == l2.dim() && m.rank() == n;
    MorphismCheck {
        preserves_bracket: preserves,
        bijective,
    }
}

/// Checks that `f` is an invertible σ-linear map with
/// `φ[e_i, e_j] = [φ e_i, φ e_j]`, i.e. `Σ_k σ(c_ij^k) M e_k = [M e_i, M e_j]`.
pub fn verify_sigma_isomorphism(l1: &LieAlgebra, l2: &LieAlgebra, f: &SemiLinearMap) -> bool {
    let m = &f.matrix;
    if !shape_ok(l1, l2, m) || f.sigma.field() != l1.field() || l1.dim() != l2.dim() {
        return false;
    }
    if m.rank() != l1.dim() {
        return false;
    }
    let cols = m.cols_vec();
    let n = l1.dim();
    for i in 0..n {
        for j in i + 1..n {
            let mut lhs = vec![FieldElement::zero(l2.field()); l2.dim()];
            for (k, c) in l1.bracket_basis(i, j) {
                let sc = f.sigma.apply(&c).expect("same tower");
                for (x, y) in lhs.iter_mut().zip(&cols[k]) {
                    if !y.is_zero() {
                        *x += &(&sc * y);
                    }
                }
            }
            if lhs != l2.bracket_unchecked(&cols[i], &cols[j]) {
                return false;
            }
        }
    }
    true
}
