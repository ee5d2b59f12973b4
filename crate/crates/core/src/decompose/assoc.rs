//! Matrix algebras: the centroid, its radical and idempotents.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fields::{factor_over_field, Field, FieldElement, Poly};
use crate::liealg::LieAlgebra;
use crate::linalg::{Matrix, SparseSystem, Subspace};

/// Seed of the generator used for random combinations.
pub const IDEMPOTENT_SEED: u64 = 0x5eed_1dea;
/// Default number of random combinations tried after the basis elements.
pub const DEFAULT_TRIALS: usize = 200;

/// An associative algebra of `n × n` matrices, given by a basis.
#[derive(Debug, Clone)]
pub struct AssocAlgebra {
    field: Field,
    n: usize,
    basis: Vec<Matrix>,
}

impl AssocAlgebra {
    /// Checks closure under products and that the identity is in the span.
    pub fn new(field: &Field, n: usize, basis: Vec<Matrix>) -> Result<AssocAlgebra> {
        let a = AssocAlgebra::from_basis(field, n, basis)?;
        let span = a.span();
        if !span.contains(&flatten(&Matrix::identity(field, n))) {
            return Err(Error::ConstraintViolated("identity is not in the span".into()));
        }
        for x in &a.basis {
            for y in &a.basis {
                if !span.contains(&flatten(&x.mul(y)?)) {
                    return Err(Error::ConstraintViolated("span is not closed under products".into()));
                }
            }
        }
        Ok(a)
    }

    fn from_basis(field: &Field, n: usize, basis: Vec<Matrix>) -> Result<AssocAlgebra> {
        if basis
            .iter()
            .any(|m| m.nrows() != n || m.ncols() != n || m.field() != field)
        {
            return Err(Error::DimensionMismatch("basis matrices".into()));
        }
        Ok(AssocAlgebra {
            field: field.clone(),
            n,
            basis,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Size of the matrices.
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// The basis as flattened vectors.
    pub fn span(&self) -> Subspace {
        let flat: Vec<_> = self.basis.iter().map(flatten).collect();
        Subspace::span(&self.field, self.n * self.n, &flat)
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.span().contains(&flatten(m))
    }

    /// `Σ c_k B_k`.
    pub fn combination(&self, coeffs: &[FieldElement]) -> Matrix {
        let mut acc = Matrix::zeros(&self.field, self.n, self.n);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c)).expect("same shape");
            }
        }
        acc
    }
}

/// Row-major entries of a matrix.
pub(crate) fn flatten(m: &Matrix) -> Vec<FieldElement> {
    (0..m.nrows()).flat_map(|r| m.row(r).to_vec()).collect()
}

fn unflatten(field: &Field, n: usize, v: &[FieldElement]) -> Matrix {
    Matrix::from_rows(field, v.chunks(n).map(|r| r.to_vec()).collect()).expect("square")
}

/// Maps `φ` with `φ[x, y] = [φx, y]` for all `x, y`; this also gives
/// `φ[x, y] = [x, φy]` by antisymmetry.
pub fn centroid(l: &LieAlgebra) -> AssocAlgebra {
    let n = l.dim();
    let field = l.field();
    // Unknown φ_{mk} (the e_m-coefficient of φ e_k) has index m·n + k.
    let mut sys = SparseSystem::new(field, n * n);
    let brackets: Vec<Vec<_>> = (0..n)
        .map(|i| (0..n).map(|j| l.bracket_basis(i, j)).collect())
        .collect();
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                let mut eq: Vec<(usize, FieldElement)> =
                    brackets[i][j].iter().map(|(k, c)| (m * n + k, c.clone())).collect();
                for (b, row) in brackets.iter().enumerate() {
                    for (k, c) in &row[j] {
                        if *k == m {
                            eq.push((b * n + i, -c));
                        }
                    }
                }
                if !eq.is_empty() {
                    sys.add_equation(eq);
                }
            }
        }
    }
    let basis = sys.nullspace().iter().map(|v| unflatten(field, n, v)).collect();
    AssocAlgebra::from_basis(field, n, basis).expect("square matrices")
}

fn trace_product(a: &Matrix, b: &Matrix) -> FieldElement {
    let n = a.nrows();
    let mut acc = FieldElement::zero(a.field());
    for r in 0..n {
        for c in 0..n {
            let x = a.get(r, c);
            if x.is_zero() {
                continue;
            }
            let y = b.get(c, r);
            if !y.is_zero() {
                acc += &(x * y);
            }
        }
    }
    acc
}

/// The radical as coefficient vectors over the basis: the kernel of the
/// trace form `(a, b) ↦ tr(ab)` of the natural representation, which in
/// characteristic zero is the Jacobson radical.
pub fn radical(a: &AssocAlgebra) -> Vec<Vec<FieldElement>> {
    let d = a.dim();
    let mut g = Matrix::zeros(a.field(), d, d);
    for i in 0..d {
        for j in i..d {
            let t = trace_product(&a.basis[i], &a.basis[j]);
            g.set(j, i, t.clone());
            g.set(i, j, t);
        }
    }
    g.nullspace()
}

/// The radical as matrices.
pub fn radical_matrices(a: &AssocAlgebra) -> Vec<Matrix> {
    radical(a).iter().map(|c| a.combination(c)).collect()
}

/// Evaluates `p` at a square matrix by Horner's rule.
pub fn eval_poly_at(p: &Poly, t: &Matrix) -> Matrix {
    let n = t.nrows();
    let field = t.field();
    let mut acc = Matrix::zeros(field, n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(t).expect("square");
        if !c.is_zero() {
            for i in 0..n {
                let v = acc.get(i, i) + c;
                acc.set(i, i, v);
            }
        }
    }
    acc
}

/// Minimal polynomial of a square matrix (monic).
pub fn matrix_minpoly(t: &Matrix) -> Poly {
    let field = t.field();
    let n = t.nrows();
    let mut powers = vec![flatten(&Matrix::identity(field, n))];
    let mut cur = Matrix::identity(field, n);
    loop {
        cur = cur.mul(t).expect("square");
        let next = flatten(&cur);
        let m = Matrix::from_cols(field, n * n, &powers).expect("consistent");
        if let Some(c) = m.solve(&next) {
            let mut coeffs: Vec<FieldElement> = c.iter().map(|x| -x).collect();
            coeffs.push(FieldElement::one(field));
            return Poly::new(field, coeffs);
        }
        powers.push(next);
    }
}

/// A nontrivial idempotent `e(t)` from a factorization `m = f·g` of the
/// minimal polynomial into coprime nonconstant parts, if one exists.
fn spectral_idempotent(t: &Matrix, m: &Poly) -> Option<Matrix> {
    let f = coprime_part(m)?;
    let g = m.exact_div(&f).ok()?;
    let (d, _, v) = f.ext_gcd(&g);
    if d.degree() != Some(0) {
        return None;
    }
    // v·g ≡ 1 mod f and ≡ 0 mod g.
    let e = v.mul(&g).rem(m).ok()?;
    Some(eval_poly_at(&e, t))
}

/// A factor `p^k` of `m` with `p` irreducible and `m / p^k` nonconstant
/// and coprime to it.
fn coprime_part(m: &Poly) -> Option<Poly> {
    let sq = m.squarefree_decomposition();
    if sq.len() >= 2 {
        let (p, k) = &sq[0];
        return Some(p.pow(*k));
    }
    let (p, k) = sq.first()?;
    if p.degree()? < 2 {
        return None;
    }
    let fac = factor_over_field(p);
    if fac.factors.len() < 2 {
        return None;
    }
    Some(fac.factors[0].0.pow(*k))
}

fn is_nontrivial_idempotent(e: &Matrix) -> bool {
    !e.is_zero() && !e.is_identity() && e.mul(e).expect("square") == *e
}

/// Searches the basis and then `trials` seeded random combinations with
/// coefficients in `-2..=2` for an element whose minimal polynomial splits
/// into coprime parts; returns the resulting idempotent.
pub fn find_idempotent(a: &AssocAlgebra, trials: Option<usize>) -> Option<Matrix> {
    let field = a.field();
    for b in &a.basis {
        if let Some(e) = spectral_idempotent(b, &matrix_minpoly(b)) {
            debug_assert!(is_nontrivial_idempotent(&e));
            return Some(e);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(IDEMPOTENT_SEED);
    for _ in 0..trials.unwrap_or(DEFAULT_TRIALS) {
        let coeffs: Vec<FieldElement> = (0..a.dim())
            .map(|_| FieldElement::from_int(field, rng.gen_range(-2..=2)))
            .collect();
        let t = a.combination(&coeffs);
        if let Some(e) = spectral_idempotent(&t, &matrix_minpoly(&t)) {
            debug_assert!(is_nontrivial_idempotent(&e));
            return Some(e);
        }
    }
    None
}

/// Why an algebra was found to have only the trivial idempotents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalCertificate {
    /// The algebra is one-dimensional (scalars).
    Scalars,
    /// The quotient by the radical is the base field.
    Local,
    /// The quotient by the radical is a field generated by one element with
    /// an irreducible minimal polynomial.
    FieldQuotient,
}

/// Certifies that `a` has no idempotents besides 0 and 1, when the quotient
/// by the radical is a field. Idempotents lift along the radical, so this is
/// exactly the condition for their absence.
pub fn certify_local(a: &AssocAlgebra, trials: Option<usize>) -> Option<LocalCertificate> {
    if a.dim() == 1 {
        return Some(LocalCertificate::Scalars);
    }
    let rad = radical_matrices(a);
    let q = a.dim() - rad.len();
    if q == 1 {
        return Some(LocalCertificate::Local);
    }
    let field = a.field();
    let n = a.degree();
    let rad_flat: Vec<_> = rad.iter().map(flatten).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(IDEMPOTENT_SEED);
    let candidates = a
        .basis
        .iter()
        .cloned()
        .chain((0..trials.unwrap_or(DEFAULT_TRIALS)).map(|_| {
            let coeffs: Vec<FieldElement> = (0..a.dim())
                .map(|_| FieldElement::from_int(field, rng.gen_range(-2..=2)))
                .collect();
            a.combination(&coeffs)
        }));
    for t in candidates {
        // Powers 1, t, …, t^{q-1} modulo the radical must be independent.
        let mut cols = rad_flat.clone();
        let mut cur = Matrix::identity(field, n);
        for _ in 0..q {
            cols.push(flatten(&cur));
            cur = cur.mul(&t).expect("square");
        }
        let m = Matrix::from_cols(field, n * n, &cols).expect("consistent");
        if m.rank() != cols.len() {
            continue;
        }
        let Some(sol) = m.solve(&flatten(&cur)) else { continue };
        let mut coeffs: Vec<FieldElement> = sol[rad_flat.len()..].iter().map(|x| -x).collect();
        coeffs.push(FieldElement::one(field));
        let mp = Poly::new(field, coeffs);
        let fac = factor_over_field(&mp);
        if fac.complete && fac.factors.len() == 1 && fac.factors[0].1 == 1 {
            return Some(LocalCertificate::FieldQuotient);
        }
        // A reducible minimal polynomial of a generator means a product of fields.
        if fac.complete {
            return None;
        }
    }
    None
}
