//! Characteristic series and the invariants read off them.

use super::LieAlgebra;
use crate::linalg::Subspace;

/// Isomorphism invariants computed by exact span growth.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub dim: usize,
    /// `dim L, dim [L,L], dim [L,[L,L]], …` until the series stabilizes.
    pub lower_central: Vec<usize>,
    /// `dim L, dim [L,L], dim [[L,L],[L,L]], …` until stabilization.
    pub derived: Vec<usize>,
    pub center_dim: usize,
    pub commutator_dim: usize,
    /// `None` when the algebra is not nilpotent.
    pub nilpotency_class: Option<usize>,
    pub solvable: bool,
    /// `None` when the algebra is not solvable.
    pub derived_length: Option<usize>,
    /// `(p, q)` with `q = dim [L,L]`, present when the class is at most 2.
    pub two_step_type: Option<(usize, usize)>,
}

/// Lower central series as subspaces, starting with the whole algebra and
/// ending at the first repeated term.
pub fn lower_central_series(l: &LieAlgebra) -> Vec<Subspace> {
    let whole = l.whole_space();
    let mut out = vec![whole.clone()];
    loop {
        let next = l.bracket_spaces(&whole, out.last().expect("nonempty"));
        let stop = next.dim() == out.last().expect("nonempty").dim();
        if stop {
            return out;
        }
        out.push(next);
    }
}

/// Derived series as subspaces, ending at the first repeated term.
pub fn derived_series(l: &LieAlgebra) -> Vec<Subspace> {
    let mut out = vec![l.whole_space()];
    loop {
        let last = out.last().expect("nonempty");
        let next = l.bracket_spaces(last, last);
        if next.dim() == last.dim() {
            return out;
        }
        out.push(next);
    }
}

pub fn fingerprint(l: &LieAlgebra) -> Fingerprint {
    let lcs: Vec<usize> = lower_central_series(l).iter().map(Subspace::dim).collect();
    let der: Vec<usize> = derived_series(l).iter().map(Subspace::dim).collect();
    let nilpotent = *lcs.last().expect("nonempty") == 0;
    let solvable = *der.last().expect("nonempty") == 0;
    // C^1 = L, so the class is the number of nonzero terms.
    let nilpotency_class = nilpotent.then(|| lcs.iter().filter(|&&d| d > 0).count());
    let derived_length = solvable.then(|| der.iter().filter(|&&d| d > 0).count());
    let commutator_dim = lcs.get(1).copied().unwrap_or(lcs[0]);
    let two_step_type = match nilpotency_class {
        Some(c) if c <= 2 => Some((l.dim() - commutator_dim, commutator_dim)),
        _ => None,
    };
    Fingerprint {
        dim: l.dim(),
        lower_central: lcs,
        derived: der,
        center_dim: l.center().dim(),
        commutator_dim,
        nilpotency_class,
        solvable,
        derived_length,
        two_step_type,
    }
}
