//! Conjugate algebras, restriction and extension of scalars, and the
//! canonical embedding of a restriction into the sum of all conjugates.
//!
//! The conjugate `L^σ` is always built in the original basis: its constants
//! are `σ(c_ij^k)` and the σ-isomorphism `L → L^σ` has the identity matrix.
//! This is a convention; any other basis gives an isomorphic algebra.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fields::{galois_group, Automorphism, Field, FieldElement, GaloisGroup, Rational};
use crate::liealg::{verify_morphism, LieAlgebra, MorphismCheck, SemiLinearMap};
use crate::linalg::Matrix;
use crate::oracle::IsoVerdict;

/// `L^σ` together with the σ-isomorphism `L → L^σ`.
pub fn conjugate(l: &LieAlgebra, sigma: &Automorphism) -> Result<(LieAlgebra, SemiLinearMap)> {
    if sigma.field() != l.field() {
        return Err(Error::TowerMismatch);
    }
    let conj = l.map_constants(l.field(), |c| sigma.apply(c))?;
    let map = SemiLinearMap {
        sigma: sigma.clone(),
        matrix: Matrix::identity(l.field(), l.dim()),
    };
    Ok((conj, map))
}

/// Basis dictionary of a restriction: target basis vector `i·D + s` is
/// `scalars[s] · X_i`, where `D = [E:F]`.
#[derive(Debug, Clone)]
pub struct RestrictionBookkeeping {
    pub source: LieAlgebra,
    pub target: LieAlgebra,
    pub fixed: Field,
    pub degree: usize,
    /// The power basis `e_0 = 1, …, e_{D-1}` of E over F.
    pub scalars: Vec<FieldElement>,
    /// `(s, i)` for each target basis vector.
    pub dictionary: Vec<(usize, usize)>,
}

impl RestrictionBookkeeping {
    /// F-coordinates of an E-vector of the source.
    pub fn to_restricted(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let mut out = Vec::with_capacity(v.len() * self.degree);
        for x in v {
            out.extend(x.coords_over(&self.fixed)?);
        }
        Ok(out)
    }

    /// The E-vector represented by F-coordinates of the target.
    pub fn from_restricted(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let e = self.source.field();
        v.chunks(self.degree)
            .map(|chunk| {
                let mut acc = FieldElement::zero(e);
                for (c, s) in chunk.iter().zip(&self.scalars) {
                    acc += &(&c.lift_to(e)? * s);
                }
                Ok(acc)
            })
            .collect()
    }
}

/// The power basis of `e` over the level `f` matching [`FieldElement::coords_over`].
pub fn relative_power_basis(e: &Field, f: &Field) -> Result<Vec<FieldElement>> {
    let d = e.degree_over(f)?;
    let m = f.abs_degree();
    Ok((0..d)
        .map(|s| {
            let mut coords = vec![Rational::zero(); e.abs_degree()];
            coords[s * m] = Rational::one();
            FieldElement::from_raw(e, coords)
        })
        .collect())
}

/// The underlying F-algebra `L_F` on the basis `{e_s X_i}`.
pub fn restrict_scalars(l: &LieAlgebra, f: &Field) -> Result<(LieAlgebra, RestrictionBookkeeping)> {
    let e = l.field();
    let d = e.degree_over(f)?;
    let scalars = relative_power_basis(e, f)?;
    let n = l.dim();
    let products: Vec<Vec<FieldElement>> = scalars
        .iter()
        .map(|a| scalars.iter().map(|b| a * b).collect())
        .collect();
    let target = LieAlgebra::from_fn(f, n * d, |a, b| {
        let (i, s) = (a / d, a % d);
        let (j, t) = (b / d, b % d);
        let mut out = vec![FieldElement::zero(f); n * d];
        for (k, c) in l.bracket_basis(i, j) {
            let coeff = &products[s][t] * &c;
            for (u, x) in coeff.coords_over(f)?.into_iter().enumerate() {
                out[k * d + u] = x;
            }
        }
        Ok(out)
    })?;
    let labels = l
        .labels()
        .iter()
        .flat_map(|x| (0..d).map(move |s| if s == 0 { x.clone() } else { format!("e{s}*{x}") }))
        .collect();
    let target = target.with_labels(labels)?;
    let dictionary = (0..n).flat_map(|i| (0..d).map(move |s| (s, i))).collect();
    Ok((
        target.clone(),
        RestrictionBookkeeping {
            source: l.clone(),
            target,
            fixed: f.clone(),
            degree: d,
            scalars,
            dictionary,
        },
    ))
}

/// Dictionary of an extension of scalars (the identity on basis indices).
#[derive(Debug, Clone)]
pub struct ExtensionBookkeeping {
    pub source: LieAlgebra,
    pub target: LieAlgebra,
}

/// `L ⊗_F E`: the same constants read in a larger level of the tower.
pub fn extend_scalars(l: &LieAlgebra, e: &Field) -> Result<(LieAlgebra, ExtensionBookkeeping)> {
    if !e.has_level(l.field()) {
        return Err(Error::NotSuperLevel);
    }
    let target = l.map_constants(e, |c| c.lift_to(e))?;
    Ok((
        target.clone(),
        ExtensionBookkeeping {
            source: l.clone(),
            target,
        },
    ))
}

/// Matrix of the σ-semilinear map `x ↦ σ(x)` on E viewed over F:
/// column `s` holds the F-coordinates of `σ(e_s)`.
fn sigma_block(sigma: &Automorphism, f: &Field, scalars: &[FieldElement]) -> Result<Vec<Vec<FieldElement>>> {
    scalars.iter().map(|e| sigma.apply(e)?.coords_over(f)).collect()
}

/// The F-linear isomorphism `L_F → (L^σ)_F` induced by `φ^σ`.
#[derive(Debug, Clone)]
pub struct UnderlyingIso {
    pub source: LieAlgebra,
    pub target: LieAlgebra,
    pub matrix: Matrix,
    pub check: MorphismCheck,
}

pub fn underlying_iso_from_sigma(l: &LieAlgebra, f: &Field, sigma: &Automorphism) -> Result<UnderlyingIso> {
    if !sigma.fixes_level(f) {
        return Err(Error::ConstraintViolated("sigma must fix the subfield".into()));
    }
    let (conj, _) = conjugate(l, sigma)?;
    let (source, book) = restrict_scalars(l, f)?;
    let (target, _) = restrict_scalars(&conj, f)?;
    let d = book.degree;
    let block = sigma_block(sigma, f, &book.scalars)?;
    let n = l.dim();
    let mut m = Matrix::zeros(f, n * d, n * d);
    for i in 0..n {
        for (s, col) in block.iter().enumerate() {
            for (u, x) in col.iter().enumerate() {
                m.set(i * d + u, i * d + s, x.clone());
            }
        }
    }
    let check = verify_morphism(&source, &target, &m);
    Ok(UnderlyingIso {
        source,
        target,
        matrix: m,
        check,
    })
}

/// The conjugates `L^σ` for every σ in the group, in group order.
pub fn all_conjugates(l: &LieAlgebra, group: &GaloisGroup) -> Result<Vec<LieAlgebra>> {
    group.elements.iter().map(|s| Ok(conjugate(l, s)?.0)).collect()
}

/// Report on the canonical embedding `L_F → ⊕_σ L^σ`, `X ↦ (φ^σ X)_σ`.
#[derive(Debug, Clone)]
pub struct CanonicalEmbedding {
    pub group: GaloisGroup,
    pub restriction: LieAlgebra,
    /// `⊕_σ L^σ` over E, identity summand first.
    pub sum: LieAlgebra,
    /// E-matrix whose column `a` is the image of the a-th restriction basis vector.
    pub matrix: Matrix,
    /// F-linear independence of the images.
    pub injective: bool,
    /// F-dimension of the image equals the E-dimension of the sum.
    pub dimension_match: bool,
    /// E-linear independence of the images (the F-form criterion).
    pub e_independent: bool,
    /// The map is an F-algebra homomorphism.
    pub preserves_bracket: bool,
}

impl CanonicalEmbedding {
    pub fn is_f_form(&self) -> bool {
        self.injective && self.dimension_match && self.e_independent && self.preserves_bracket
    }
}

pub fn canonical_embedding(l: &LieAlgebra, f: &Field) -> Result<CanonicalEmbedding> {
    let e = l.field();
    let group = galois_group(e, f)?;
    let (restriction, book) = restrict_scalars(l, f)?;
    let conjugates = all_conjugates(l, &group)?;
    let sum = LieAlgebra::direct_sum_all(&conjugates)?;
    let n = l.dim();
    let d = book.degree;
    let g = group.order();
    let mut m = Matrix::zeros(e, g * n, d * n);
    for (gi, sigma) in group.elements.iter().enumerate() {
        let images: Vec<FieldElement> = book.scalars.iter().map(|x| sigma.apply(x)).collect::<Result<_>>()?;
        for i in 0..n {
            for (s, img) in images.iter().enumerate() {
                m.set(gi * n + i, i * d + s, img.clone());
            }
        }
    }
    // F-rank: expand every E-entry into its F-coordinates.
    let rows_f: Vec<Vec<FieldElement>> = (0..m.nrows())
        .flat_map(|r| {
            let row = m.row(r).to_vec();
            (0..d).map(move |u| {
                row.iter()
                    .map(|x| x.coords_over(f).expect("level")[u].clone())
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    let f_rank = Matrix::from_rows(f, rows_f)?.rank();
    let e_rank = m.rank();
    // Homomorphism of F-algebras: images of restriction brackets.
    let cols = m.cols_vec();
    let mut preserves = true;
    'outer: for a in 0..d * n {
        for b in a + 1..d * n {
            let mut lhs = vec![FieldElement::zero(e); g * n];
            for (k, c) in restriction.bracket_basis(a, b) {
                let c = c.lift_to(e)?;
                for (x, y) in lhs.iter_mut().zip(&cols[k]) {
                    *x += &(&c * y);
                }
            }
            if lhs != sum.bracket(&cols[a], &cols[b])? {
                preserves = false;
                break 'outer;
            }
        }
    }
    Ok(CanonicalEmbedding {
        group,
        restriction,
        sum,
        injective: f_rank == d * n,
        dimension_match: d * n == g * n,
        e_independent: e_rank == d * n,
        preserves_bracket: preserves,
        matrix: m,
    })
}

/// `(L_F) ⊗_F E → ⊕_σ L^σ` as an explicit E-matrix with its verification.
#[derive(Debug, Clone)]
pub struct SumConjugate {
    pub source: LieAlgebra,
    pub target: LieAlgebra,
    pub matrix: Matrix,
    pub check: MorphismCheck,
}

impl SumConjugate {
    pub fn verified(&self) -> bool {
        self.check.is_isomorphism()
    }
}

pub fn verify_sumconjugate(l: &LieAlgebra, f: &Field) -> Result<SumConjugate> {
    let emb = canonical_embedding(l, f)?;
    let (source, _) = extend_scalars(&emb.restriction, l.field())?;
    let check = verify_morphism(&source, &emb.sum, &emb.matrix);
    Ok(SumConjugate {
        source,
        target: emb.sum,
        matrix: emb.matrix,
        check,
    })
}

/// Whether the basis given by the columns of `p` has all structure constants
/// in the level `f` (equivalently, fixed by `Gal(E, F)` for Galois `E/F`).
pub fn defined_over_witness_check(l: &LieAlgebra, f: &Field, p: &Matrix) -> Result<bool> {
    if !l.field().has_level(f) {
        return Err(Error::NotSubLevel);
    }
    let changed = l.change_basis(p)?;
    Ok(changed.constants().iter().all(|(_, _, _, c)| c.in_level(f).is_some()))
}

/// Partition of the group (by index) according to the isomorphism class of
/// `L^σ`, classes ordered by their first member.
pub fn conjugate_orbit(
    l: &LieAlgebra,
    group: &GaloisGroup,
    oracle: impl Fn(&LieAlgebra, &LieAlgebra) -> IsoVerdict,
) -> Result<Vec<Vec<usize>>> {
    let conjugates = all_conjugates(l, group)?;
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'next: for (idx, c) in conjugates.iter().enumerate() {
        for class in classes.iter_mut() {
            match oracle(&conjugates[class[0]], c) {
                IsoVerdict::Isomorphic(_) => {
                    class.push(idx);
                    continue 'next;
                }
                IsoVerdict::NotIsomorphic(_) => {}
                IsoVerdict::Unknown => {
                    return Err(Error::OracleUndecided(format!(
                        "conjugates by {} and {}",
                        group.elements[class[0]], group.elements[idx]
                    )))
                }
            }
        }
        classes.push(vec![idx]);
    }
    Ok(classes)
}
