//! Named algebra families and the explicit F-form construction for `r_{3,λ}`.

use crate::error::{Error, Result};
use crate::fields::{galois_group, Automorphism, Field, FieldElement};
use crate::liealg::LieAlgebra;
use crate::linalg::Matrix;

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn one(f: &Field) -> FieldElement {
    FieldElement::one(f)
}

/// The 3-dimensional Heisenberg algebra `[X, Y] = Z`.
pub fn heisenberg(field: &Field) -> LieAlgebra {
    LieAlgebra::new(field, 3, [(1, 2, 3, one(field))])
        .and_then(|l| l.with_labels(labels(&["X", "Y", "Z"])))
        .expect("valid table")
}

pub fn abelian(field: &Field, dim: usize) -> LieAlgebra {
    LieAlgebra::abelian(field, dim)
}

/// The 10-dimensional 2-step nilpotent algebra `g_λ` on `X1..X8, Z1, Z2`.
pub fn g_lambda(field: &Field, lambda: &FieldElement) -> Result<LieAlgebra> {
    if lambda.field() != field {
        return Err(Error::FieldMismatch);
    }
    let o = one(field);
    let (z1, z2) = (9, 10);
    let table = vec![
        (1, 5, z1, o.clone()),
        (2, 6, z1, o.clone()),
        (3, 7, z1, o.clone()),
        (4, 8, z1, o.clone()),
        (2, 5, z2, o.clone()),
        (3, 6, z2, o.clone()),
        (4, 7, z2, o.clone()),
        (1, 8, z2, -&o),
        (2, 7, z2, -lambda),
    ];
    LieAlgebra::new(field, 10, table)?
        .with_labels(labels(&["X1", "X2", "X3", "X4", "X5", "X6", "X7", "X8", "Z1", "Z2"]))
}

/// `r_{3,λ}`: `[X1, X2] = X2`, `[X1, X3] = λ X3`.
pub fn r3_lambda(field: &Field, lambda: &FieldElement) -> Result<LieAlgebra> {
    if lambda.is_zero() {
        return Err(Error::ZeroLambda);
    }
    if lambda.field() != field {
        return Err(Error::FieldMismatch);
    }
    LieAlgebra::new(field, 3, [(1, 2, 2, one(field)), (1, 3, 3, lambda.clone())])?
        .with_labels(labels(&["X1", "X2", "X3"]))
}

/// `r_{3,λ} ⊕ E`.
pub fn r3_lambda_plus_abelian(field: &Field, lambda: &FieldElement) -> Result<LieAlgebra> {
    let l = r3_lambda(field, lambda)?.direct_sum(&LieAlgebra::abelian(field, 1))?;
    l.with_labels(labels(&["X1", "X2", "X3", "X4"]))
}

/// `r_{3,λ} ≅ r_{3,μ}` exactly when `λ = μ` or `λμ = 1`.
pub fn r3_iso_criterion(lambda: &FieldElement, mu: &FieldElement) -> Result<bool> {
    if lambda.is_zero() || mu.is_zero() {
        return Err(Error::ZeroLambda);
    }
    if lambda.field() != mu.field() {
        return Err(Error::TowerMismatch);
    }
    Ok(lambda == mu || (lambda * mu).is_one())
}

/// `g1(α)`: `[X1, X2] = X2`, `[X1, X3] = X3`, `[X1, X4] = α X4`.
pub fn g1_alpha(field: &Field, alpha: &FieldElement) -> Result<LieAlgebra> {
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    if alpha.field() != field {
        return Err(Error::FieldMismatch);
    }
    LieAlgebra::new(
        field,
        4,
        [(1, 2, 2, one(field)), (1, 3, 3, one(field)), (1, 4, 4, alpha.clone())],
    )?
    .with_labels(labels(&["X1", "X2", "X3", "X4"]))
}

/// Diagonal of `ad_{X1}` on `X2, X3, X4` for an algebra of the `g1` shape;
/// `None` if that restriction is not diagonal.
pub fn g1_spectrum(l: &LieAlgebra) -> Option<Vec<FieldElement>> {
    if l.dim() != 4 {
        return None;
    }
    let ad = l.ad_matrix(&l.basis_vector(0)).ok()?;
    for r in 1..4 {
        for c in 1..4 {
            if r != c && !ad.get(r, c).is_zero() {
                return None;
            }
        }
        if !ad.get(0, r).is_zero() {
            return None;
        }
    }
    Some((1..4).map(|k| ad.get(k, k).clone()).collect())
}

fn multiset_eq(a: &[FieldElement], b: &[FieldElement]) -> bool {
    let mut used = vec![false; b.len()];
    a.len() == b.len()
        && a.iter().all(|x| match (0..b.len()).find(|&k| !used[k] && &b[k] == x) {
            Some(k) => {
                used[k] = true;
                true
            }
            None => false,
        })
}

/// Whether two spectra agree up to a common nonzero scale factor.
pub fn spectra_equivalent(a: &[FieldElement], b: &[FieldElement]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(x) = a.iter().find(|x| !x.is_zero()) else {
        return b.iter().all(FieldElement::is_zero);
    };
    b.iter().filter(|y| !y.is_zero()).any(|y| {
        let c = y.checked_div(x).expect("nonzero");
        let scaled: Vec<FieldElement> = a.iter().map(|v| v * &c).collect();
        multiset_eq(&scaled, b)
    })
}

/// `g1(α) ≅ g1(β)` decided by the normalized `ad_{X1}` spectrum.
pub fn g1_iso_criterion(alpha: &FieldElement, beta: &FieldElement) -> Result<bool> {
    let f = alpha.field();
    let a = g1_spectrum(&g1_alpha(f, alpha)?).expect("g1 shape");
    let b = g1_spectrum(&g1_alpha(f, beta)?).expect("g1 shape");
    Ok(spectra_equivalent(&a, &b))
}

/// Data produced by [`overfprop_witness`].
#[derive(Debug, Clone)]
pub struct OverFWitness {
    /// `[Y1, Y2] = Y3`, `[Y1, Y3] = (a-2) Y2 + (2-a) Y3`, constants in F.
    pub y_algebra: LieAlgebra,
    /// Columns are `X1, X2, X3` in Y-coordinates.
    pub basis_change: Matrix,
    /// The algebra in the X basis.
    pub x_algebra: LieAlgebra,
    /// The Galois element used, the first one moving λ.
    pub sigma: Automorphism,
    /// `σ(λ)`, the parameter of the X-basis algebra.
    pub sigma_lambda: FieldElement,
    /// Whether `[X1,X2] = X2`, `[X1,X3] = σ(λ) X3`, `[X2,X3] = 0` hold exactly.
    pub verified: bool,
}

/// Builds an F-basis witness for `r_{3,σ(λ)}` from `λ² + aλ + 1 = 0`.
///
/// `a` is given in the top field `λ` lives in and must lie in the level `f`.
pub fn overfprop_witness(f: &Field, a: &FieldElement, lambda: &FieldElement) -> Result<OverFWitness> {
    let e = lambda.field().clone();
    if !e.has_level(f) {
        return Err(Error::NotSubLevel);
    }
    let a = if a.field() == &e { a.clone() } else { a.lift_to(&e)? };
    let violated = |m: &str| Err(Error::ConstraintViolated(m.into()));
    if a.in_level(f).is_none() {
        return violated("a must lie in F");
    }
    let o = one(&e);
    if !(&(lambda * lambda) + &(&(&a * lambda) + &o)).is_zero() {
        return violated("lambda^2 + a*lambda + 1 must vanish");
    }
    if lambda.in_level(f).is_some() {
        return violated("lambda must not lie in F");
    }
    let two = FieldElement::from_int(&e, 2);
    if a == two {
        return violated("a must differ from 2");
    }
    if lambda == &-&o {
        return violated("lambda must differ from -1");
    }
    let group = galois_group(&e, f)?;
    let sigma = group
        .elements
        .iter()
        .find(|s| &s.apply(lambda).expect("same tower") != lambda)
        .cloned()
        .ok_or_else(|| Error::ConstraintViolated("no Galois element moves lambda".into()))?;
    let mu = sigma.apply(lambda)?;
    let am2 = &a - &two;
    let y = LieAlgebra::new(&e, 3, [(1, 2, 3, o.clone()), (1, 3, 2, am2.clone()), (1, 3, 3, -&am2)])?
        .with_labels(labels(&["Y1", "Y2", "Y3"]))?;
    let z = FieldElement::zero(&e);
    let lp1 = lambda + &o;
    let mp1 = &mu + &o;
    let x1 = vec![lp1.inv()?, z.clone(), z.clone()];
    let x2 = vec![z.clone(), -&mp1, o.clone()];
    let x3 = vec![z, -&lp1, o];
    let p = Matrix::from_cols(&e, 3, &[x1, x2, x3])?;
    let x = y.change_basis(&p)?.with_labels(labels(&["X1", "X2", "X3"]))?;
    let verified = x.constants() == r3_lambda(&e, &mu)?.constants();
    Ok(OverFWitness {
        y_algebra: y,
        basis_change: p,
        x_algebra: x,
        sigma,
        sigma_lambda: mu,
        verified,
    })
}

/// `j` copies of `g_λ` followed by `k - j` copies of `g_{σ(λ)}`.
pub fn nintot_family(
    field: &Field,
    lambda: &FieldElement,
    k: usize,
    j: usize,
    sigma: &Automorphism,
) -> Result<LieAlgebra> {
    if k == 0 {
        return Err(Error::IndexOutOfRange("k must be at least 1".into()));
    }
    if j > k {
        return Err(Error::IndexOutOfRange(format!("j = {j} exceeds k = {k}")));
    }
    let g = g_lambda(field, lambda)?;
    let gbar = g_lambda(field, &sigma.apply(lambda)?)?;
    let parts: Vec<LieAlgebra> = (0..k).map(|s| if s < j { g.clone() } else { gbar.clone() }).collect();
    LieAlgebra::direct_sum_all(&parts)
}
