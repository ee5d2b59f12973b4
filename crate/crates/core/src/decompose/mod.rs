//! Decomposition into indecomposable ideals via idempotents of the centroid,
//! matching of decompositions, and counting algebras with a given
//! restriction of scalars.

mod assoc;

pub use assoc::{
    centroid, certify_local, eval_poly_at, find_idempotent, matrix_minpoly, radical, radical_matrices, AssocAlgebra,
    LocalCertificate, DEFAULT_TRIALS, IDEMPOTENT_SEED,
};

use crate::error::{Error, Result};
use crate::fields::{galois_group, Automorphism, Field, FieldElement};
use crate::galois::conjugate;
use crate::liealg::LieAlgebra;
use crate::linalg::{Matrix, Subspace};
use crate::oracle::IsoVerdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// The centroid of the summand has no idempotents besides 0 and 1.
    CertifiedIndecomposable(LocalCertificate),
    /// No splitting idempotent was found, but none was ruled out.
    HeuristicIndecomposable,
    Unknown,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certificate::CertifiedIndecomposable(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Certificate::CertifiedIndecomposable(_) => "CertifiedIndecomposable",
            Certificate::HeuristicIndecomposable => "HeuristicIndecomposable",
            Certificate::Unknown => "Unknown",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Summand {
    /// Basis in the coordinates of the owner algebra.
    pub basis: Vec<Vec<FieldElement>>,
    pub certificate: Certificate,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub owner: LieAlgebra,
    pub summands: Vec<Summand>,
}

impl Decomposition {
    /// The summand as an algebra in its own basis.
    pub fn summand_algebra(&self, k: usize) -> Result<LieAlgebra> {
        self.owner.restrict_to(&self.summands[k].basis)
    }

    pub fn summand_algebras(&self) -> Result<Vec<LieAlgebra>> {
        (0..self.summands.len()).map(|k| self.summand_algebra(k)).collect()
    }

    pub fn bases(&self) -> Vec<Vec<Vec<FieldElement>>> {
        self.summands.iter().map(|s| s.basis.clone()).collect()
    }

    pub fn all_certified(&self) -> bool {
        self.summands.iter().all(|s| s.certificate.is_certified())
    }
}

/// Splits along idempotents of the centroid until none is found; each
/// remaining summand is certified when its centroid is local or has a field
/// as quotient by the radical. `trials` bounds the random search (default
/// [`DEFAULT_TRIALS`]).
pub fn decompose_indecomposable(l: &LieAlgebra, trials: Option<usize>) -> Result<Decomposition> {
    let identity: Vec<Vec<FieldElement>> = (0..l.dim()).map(|i| l.basis_vector(i)).collect();
    let mut summands = Vec::new();
    split(l, &identity, trials, &mut summands)?;
    let center = l.center();
    let order = column_priority(l.dim(), &center);
    let mut summands: Vec<Summand> = summands
        .into_iter()
        .map(|s| Summand {
            basis: normalize_basis(l.field(), &s.basis, &order),
            certificate: s.certificate,
        })
        .collect();
    summands.sort_by_key(|s| first_pivot(&s.basis, &order));
    Ok(Decomposition {
        owner: l.clone(),
        summands,
    })
}

/// `embed` maps coordinates of `l` to coordinates of the owner.
fn split(l: &LieAlgebra, embed: &[Vec<FieldElement>], trials: Option<usize>, out: &mut Vec<Summand>) -> Result<()> {
    let field = l.field();
    let to_owner = |v: &[FieldElement]| -> Vec<FieldElement> {
        let mut acc = vec![FieldElement::zero(field); embed[0].len()];
        for (c, e) in v.iter().zip(embed) {
            if !c.is_zero() {
                for (a, x) in acc.iter_mut().zip(e) {
                    *a += &(c * x);
                }
            }
        }
        acc
    };
    if l.dim() == 0 {
        return Ok(());
    }
    let cen = centroid(l);
    if let Some(e) = find_idempotent(&cen, trials) {
        let image = Subspace::span(field, l.dim(), &e.cols_vec());
        let one_minus = Matrix::identity(field, l.dim()).sub(&e)?;
        let kernel = Subspace::span(field, l.dim(), &one_minus.cols_vec());
        for part in [image, kernel] {
            let sub = l.restrict_to(part.basis())?;
            let sub_embed: Vec<Vec<FieldElement>> = part.basis().iter().map(|v| to_owner(v)).collect();
            split(&sub, &sub_embed, trials, out)?;
        }
        return Ok(());
    }
    let certificate = match certify_local(&cen, trials) {
        Some(c) => Certificate::CertifiedIndecomposable(c),
        None => Certificate::HeuristicIndecomposable,
    };
    out.push(Summand {
        basis: embed.to_vec(),
        certificate,
    });
    Ok(())
}

/// Non-central coordinates first, then the pivot coordinates of the center.
fn column_priority(n: usize, center: &Subspace) -> Vec<usize> {
    let mut order = center.complement_indices();
    order.extend(center.pivots().iter().copied());
    debug_assert_eq!(order.len(), n);
    order
}

/// Reduced echelon basis with pivots chosen in the given column order.
fn normalize_basis(field: &Field, basis: &[Vec<FieldElement>], order: &[usize]) -> Vec<Vec<FieldElement>> {
    let permuted: Vec<Vec<FieldElement>> = basis
        .iter()
        .map(|v| order.iter().map(|&c| v[c].clone()).collect())
        .collect();
    let s = Subspace::span(field, order.len(), &permuted);
    s.basis()
        .iter()
        .map(|p| {
            let mut v = vec![FieldElement::zero(field); order.len()];
            for (pos, &c) in order.iter().enumerate() {
                v[c] = p[pos].clone();
            }
            v
        })
        .collect()
}

fn first_pivot(basis: &[Vec<FieldElement>], order: &[usize]) -> usize {
    basis
        .first()
        .and_then(|v| order.iter().position(|&c| !v[c].is_zero()))
        .unwrap_or(usize::MAX)
}

/// Whether the spans are ideals that together form a direct sum equal to
/// the whole algebra.
pub fn verify_decomposition(l: &LieAlgebra, bases: &[Vec<Vec<FieldElement>>]) -> bool {
    let n = l.dim();
    let mut all = Vec::new();
    for b in bases {
        match l.ideal_check(b) {
            Ok((true, s)) if s.dim() == b.len() => all.extend(b.iter().cloned()),
            _ => return false,
        }
    }
    if all.len() != n || Subspace::span(l.field(), n, &all).dim() != n {
        return false;
    }
    for (x, a) in bases.iter().enumerate() {
        for b in &bases[x + 1..] {
            for u in a {
                for v in b {
                    if l.bracket_unchecked(u, v).iter().any(|c| !c.is_zero()) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchResult {
    /// Summand `k` of the first decomposition matches summand `pairs[k]` of
    /// the second, each pair confirmed isomorphic.
    Matched(Vec<usize>),
    Refuted(String),
    Unknown,
}

/// Matches summands by oracle verdicts: a perfect matching on confirmed
/// pairs gives a match; no perfect matching even among pairs not refuted
/// gives a refutation.
pub fn krull_schmidt_match(
    d1: &Decomposition,
    d2: &Decomposition,
    oracle: impl Fn(&LieAlgebra, &LieAlgebra) -> IsoVerdict,
) -> Result<MatchResult> {
    let a = d1.summand_algebras()?;
    let b = d2.summand_algebras()?;
    if a.len() != b.len() {
        return Ok(MatchResult::Refuted(format!("{} summands vs {}", a.len(), b.len())));
    }
    let verdicts: Vec<Vec<IsoVerdict>> = a.iter().map(|x| b.iter().map(|y| oracle(x, y)).collect()).collect();
    let confirmed: Vec<Vec<bool>> = verdicts
        .iter()
        .map(|r| r.iter().map(IsoVerdict::is_isomorphic).collect())
        .collect();
    if let Some(m) = perfect_matching(&confirmed) {
        return Ok(MatchResult::Matched(m));
    }
    let possible: Vec<Vec<bool>> = verdicts
        .iter()
        .map(|r| r.iter().map(|v| !v.is_refuted()).collect())
        .collect();
    if perfect_matching(&possible).is_none() {
        return Ok(MatchResult::Refuted(
            "no summand matching survives the refuted pairs".into(),
        ));
    }
    Ok(MatchResult::Unknown)
}

/// Kuhn's augmenting paths; `result[i]` is the partner of left vertex `i`.
fn perfect_matching(adj: &[Vec<bool>]) -> Option<Vec<usize>> {
    fn augment(i: usize, adj: &[Vec<bool>], seen: &mut [bool], right: &mut [Option<usize>]) -> bool {
        for j in 0..adj[i].len() {
            if adj[i][j] && !seen[j] {
                seen[j] = true;
                if right[j].is_none_or(|k| augment(k, adj, seen, right)) {
                    right[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    let n = adj.len();
    let mut right = vec![None; n];
    for i in 0..n {
        let mut seen = vec![false; n];
        if !augment(i, adj, &mut seen, &mut right) {
            return None;
        }
    }
    let mut left = vec![0; n];
    for (j, i) in right.iter().enumerate() {
        left[i.expect("perfect")] = j;
    }
    Some(left)
}

/// One algebra counted by [`count_forms`], with its summands.
#[derive(Debug, Clone)]
pub struct FormWitness {
    pub algebra: LieAlgebra,
    pub components: Vec<LieAlgebra>,
    /// For each component: the summand index and the automorphism it was
    /// conjugated by.
    pub sources: Vec<(usize, Automorphism)>,
}

#[derive(Debug, Clone)]
pub struct FormCount {
    pub count: usize,
    /// The decomposition whose summands the witnesses are built from.
    pub decomposition: Decomposition,
    pub witnesses: Vec<FormWitness>,
    /// For each orbit: number of isomorphism classes and total multiplicity.
    pub orbits: Vec<(usize, usize)>,
}

/// Number of algebras `h` over E, up to isomorphism, whose restriction to F
/// is isomorphic to that of `l`: every such `h` is a sum of conjugates of
/// the summands of `l`, so an orbit of `m` classes holding `k` summands
/// contributes `C(k + m - 1, m - 1)` choices.
pub fn count_forms(
    l: &LieAlgebra,
    f: &Field,
    oracle: impl Fn(&LieAlgebra, &LieAlgebra) -> IsoVerdict,
    trials: Option<usize>,
) -> Result<FormCount> {
    let group = galois_group(l.field(), f)?;
    let dec = decompose_indecomposable(l, trials)?;
    if !dec.all_certified() {
        return Err(Error::UncertifiedDecomposition);
    }
    let summands = dec.summand_algebras()?;
    // Isomorphism classes among all conjugates of all summands.
    let mut reps: Vec<(LieAlgebra, usize, usize)> = Vec::new();
    let mut class_of = |x: LieAlgebra, s: usize, g: usize| -> Result<usize> {
        for (c, (r, _, _)) in reps.iter().enumerate() {
            match oracle(r, &x) {
                IsoVerdict::Isomorphic(_) => return Ok(c),
                IsoVerdict::NotIsomorphic(_) => {}
                IsoVerdict::Unknown => return Err(Error::OracleUndecided("summand conjugates".into())),
            }
        }
        reps.push((x, s, g));
        Ok(reps.len() - 1)
    };
    // conj_classes[s][g] = class of summand s conjugated by group element g.
    let mut conj_classes = Vec::with_capacity(summands.len());
    for (si, s) in summands.iter().enumerate() {
        let row = group
            .elements
            .iter()
            .enumerate()
            .map(|(gi, sigma)| class_of(conjugate(s, sigma)?.0, si, gi))
            .collect::<Result<Vec<_>>>()?;
        conj_classes.push(row);
    }
    // Orbits are the sets of classes reached from one summand.
    let mut orbits: Vec<(Vec<usize>, usize)> = Vec::new();
    for row in &conj_classes {
        let mut classes = row.clone();
        classes.sort_unstable();
        classes.dedup();
        match orbits.iter_mut().find(|(c, _)| *c == classes) {
            Some((_, k)) => *k += 1,
            None => orbits.push((classes, 1)),
        }
    }
    let mut count = 1usize;
    for (classes, k) in &orbits {
        count = count
            .checked_mul(binomial(k + classes.len() - 1, classes.len() - 1))
            .ok_or_else(|| Error::ConstraintViolated("count overflows".into()))?;
    }
    // Witnesses: every choice of multisets, one per orbit.
    let mut choices: Vec<Vec<usize>> = vec![Vec::new()];
    for (classes, k) in &orbits {
        let multisets = multisets(classes, *k);
        choices = choices
            .into_iter()
            .flat_map(|prefix| {
                multisets.iter().map(move |m| {
                    let mut v = prefix.clone();
                    v.extend(m.iter().copied());
                    v
                })
            })
            .collect();
    }
    let witnesses = choices
        .into_iter()
        .map(|cls| {
            let components: Vec<LieAlgebra> = cls.iter().map(|&c| reps[c].0.clone()).collect();
            let sources = cls
                .iter()
                .map(|&c| (reps[c].1, group.elements[reps[c].2].clone()))
                .collect();
            Ok(FormWitness {
                algebra: LieAlgebra::direct_sum_all(&components)?,
                components,
                sources,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FormCount {
        count,
        decomposition: dec,
        witnesses,
        orbits: orbits.iter().map(|(c, k)| (c.len(), *k)).collect(),
    })
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Non-decreasing sequences of length `k` drawn from `items`.
fn multisets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in multisets(&items[i..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}
