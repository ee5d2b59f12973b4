//! Structure-constant tensors with eager Jacobi validation.

use std::fmt;

use crate::error::{Error, Result};
use crate::fields::{Field, FieldElement};
use crate::linalg::{Matrix, Subspace};

/// Sparse vector: `(basis index, nonzero coefficient)` sorted by index.
pub type SparseVec = Vec<(usize, FieldElement)>;

/// A finite-dimensional Lie algebra given by structure constants.
///
/// Only brackets `[e_i, e_j]` with `i < j` are stored; indices are 0-based
/// internally and 1-based in constructors taking user tables.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    field: Field,
    dim: usize,
    table: Vec<SparseVec>,
    labels: Vec<String>,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn add_sparse(acc: &mut [FieldElement], v: &SparseVec, scale: &FieldElement) {
    for (k, c) in v {
        acc[*k] += &(c * scale);
    }
}

pub(crate) fn to_sparse(v: &[FieldElement]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

impl LieAlgebra {
    /// Builds and validates an algebra from 1-based triples `(i, j, k, c)`
    /// meaning `[X_i, X_j]` has coefficient `c` on `X_k`. A triple with
    /// `i > j` contributes `-c` to `[X_j, X_i]`; repeated triples add up.
    pub fn new(
        field: &Field,
        dim: usize,
        constants: impl IntoIterator<Item = (usize, usize, usize, FieldElement)>,
    ) -> Result<LieAlgebra> {
        let mut dense: Vec<Vec<FieldElement>> = vec![Vec::new(); dim * dim.saturating_sub(1) / 2];
        for (i, j, k, c) in constants {
            for (name, idx) in [("i", i), ("j", j), ("k", k)] {
                if idx == 0 || idx > dim {
                    return Err(Error::IndexOutOfRange(format!("{name} = {idx} not in 1..={dim}")));
                }
            }
            if i == j {
                if c.is_zero() {
                    continue;
                }
                return Err(Error::IndexOutOfRange(format!("bracket [X{i}, X{i}] must vanish")));
            }
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
            let (a, b, c) = if i < j { (i - 1, j - 1, c) } else { (j - 1, i - 1, -c) };
            let slot = &mut dense[pair_index(dim, a, b)];
            if slot.is_empty() {
                *slot = vec![FieldElement::zero(field); dim];
            }
            slot[k - 1] += &c;
        }
        let table = dense.iter().map(|v| to_sparse(v)).collect();
        LieAlgebra::from_table(field, dim, table)
    }

    /// Validates a pair-indexed table (0-based, `i < j`).
    pub(crate) fn from_table(field: &Field, dim: usize, table: Vec<SparseVec>) -> Result<LieAlgebra> {
        let alg = LieAlgebra {
            field: field.clone(),
            dim,
            table,
            labels: (1..=dim).map(|i| format!("X{i}")).collect(),
        };
        alg.check_jacobi()?;
        Ok(alg)
    }

    /// Builds an algebra from dense brackets `brackets[i][j] = [e_i, e_j]`
    /// for `i < j` given by a closure.
    pub(crate) fn from_fn(
        field: &Field,
        dim: usize,
        mut f: impl FnMut(usize, usize) -> Result<Vec<FieldElement>>,
    ) -> Result<LieAlgebra> {
        let mut table = Vec::with_capacity(dim * dim.saturating_sub(1) / 2);
        for i in 0..dim {
            for j in i + 1..dim {
                table.push(to_sparse(&f(i, j)?));
            }
        }
        LieAlgebra::from_table(field, dim, table)
    }

    /// The abelian algebra of the given dimension.
    pub fn abelian(field: &Field, dim: usize) -> LieAlgebra {
        LieAlgebra::new(field, dim, []).expect("no brackets")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<LieAlgebra> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for dimension {}",
                labels.len(),
                self.dim
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `[e_i, e_j]` as a sparse vector (0-based indices).
    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => Vec::new(),
            std::cmp::Ordering::Less => self.table[pair_index(self.dim, i, j)].clone(),
            std::cmp::Ordering::Greater => self.table[pair_index(self.dim, j, i)]
                .iter()
                .map(|(k, c)| (*k, -c))
                .collect(),
        }
    }

    fn stored(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[pair_index(self.dim, i, j)]
    }

    /// Coefficient of `e_k` in `[e_i, e_j]` (0-based).
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> FieldElement {
        let v = self.bracket_basis(i, j);
        v.into_iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(|| FieldElement::zero(&self.field), |(_, c)| c)
    }

    /// Nonzero constants `(i, j, k, c)`, 0-based, `i < j`, in index order.
    pub fn constants(&self) -> Vec<(usize, usize, usize, FieldElement)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for (k, c) in self.stored(i, j) {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    fn check_vec(&self, x: &[FieldElement]) -> Result<()> {
        if x.len() != self.dim || x.iter().any(|c| c.field() != &self.field) {
            return Err(Error::OwnerMismatch);
        }
        Ok(())
    }

    /// Bilinear bracket of coordinate vectors.
    pub fn bracket(&self, x: &[FieldElement], y: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[FieldElement], y: &[FieldElement]) -> Vec<FieldElement> {
        let mut acc = vec![FieldElement::zero(&self.field); self.dim];
        let xs = to_sparse(x);
        let ys = to_sparse(y);
        for (a, xa) in &xs {
            for (b, yb) in &ys {
                if a == b {
                    continue;
                }
                let (i, j, sign) = if a < b { (*a, *b, false) } else { (*b, *a, true) };
                let v = self.stored(i, j);
                if v.is_empty() {
                    continue;
                }
                let s = xa * yb;
                let s = if sign { -s } else { s };
                add_sparse(&mut acc, v, &s);
            }
        }
        acc
    }

    /// `[e_i, y]` for a basis vector and a sparse vector.
    pub(crate) fn bracket_basis_with(&self, i: usize, y: &SparseVec) -> Vec<FieldElement> {
        let mut acc = vec![FieldElement::zero(&self.field); self.dim];
        for (b, yb) in y {
            if *b == i {
                continue;
            }
            let v = self.bracket_basis(i, *b);
            add_sparse(&mut acc, &v, yb);
        }
        acc
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut acc = self.bracket_sparse_basis(&self.bracket_basis(i, j), k);
                    let t2 = self.bracket_sparse_basis(&self.bracket_basis(j, k), i);
                    let t3 = self.bracket_sparse_basis(&self.bracket_basis(k, i), j);
                    for (a, (b, c)) in acc.iter_mut().zip(t2.iter().zip(&t3)) {
                        *a += b;
                        *a += c;
                    }
                    if acc.iter().any(|c| !c.is_zero()) {
                        return Err(Error::JacobiFailure(i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        Ok(())
    }

    /// `[v, e_k]` for sparse `v`.
    fn bracket_sparse_basis(&self, v: &SparseVec, k: usize) -> Vec<FieldElement> {
        let mut acc = vec![FieldElement::zero(&self.field); self.dim];
        for (a, c) in v {
            if *a == k {
                continue;
            }
            add_sparse(&mut acc, &self.bracket_basis(*a, k), c);
        }
        acc
    }

    /// Rebuilds the algebra with every constant mapped through `f` into
    /// `field` (re-validated).
    pub fn map_constants(
        &self,
        field: &Field,
        f: impl Fn(&FieldElement) -> Result<FieldElement>,
    ) -> Result<LieAlgebra> {
        let mut table = Vec::with_capacity(self.table.len());
        for v in &self.table {
            let mut out = Vec::with_capacity(v.len());
            for (k, c) in v {
                let y = f(c)?;
                if y.field() != field {
                    return Err(Error::FieldMismatch);
                }
                if !y.is_zero() {
                    out.push((*k, y));
                }
            }
            table.push(out);
        }
        let alg = LieAlgebra::from_table(field, self.dim, table)?;
        Ok(LieAlgebra {
            labels: self.labels.clone(),
            ..alg
        })
    }

    /// `self ⊕ other` with block constants and vanishing cross brackets.
    pub fn direct_sum(&self, other: &LieAlgebra) -> Result<LieAlgebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let n1 = self.dim;
        let n = n1 + other.dim;
        let mut table = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                let v = if j < n1 {
                    self.stored(i, j).clone()
                } else if i >= n1 {
                    other
                        .stored(i - n1, j - n1)
                        .iter()
                        .map(|(k, c)| (k + n1, c.clone()))
                        .collect()
                } else {
                    Vec::new()
                };
                table.push(v);
            }
        }
        let mut labels: Vec<String> = self.labels.iter().map(|l| format!("{l}_1")).collect();
        labels.extend(other.labels.iter().map(|l| format!("{l}_2")));
        Ok(LieAlgebra {
            field: self.field.clone(),
            dim: n,
            table,
            labels,
        })
    }

    /// Direct sum of a nonempty list.
    pub fn direct_sum_all(parts: &[LieAlgebra]) -> Result<LieAlgebra> {
        let (first, rest) = parts
            .split_first()
            .ok_or_else(|| Error::DimensionMismatch("empty direct sum".into()))?;
        let mut acc = first.clone();
        for p in rest {
            acc = acc.direct_sum(p)?;
        }
        if parts.len() > 2 {
            let mut labels = Vec::new();
            for (s, p) in parts.iter().enumerate() {
                labels.extend(p.labels.iter().map(|l| format!("{l}_{}", s + 1)));
            }
            acc.labels = labels;
        }
        Ok(acc)
    }

    /// The algebra in the basis given by the columns of `p` (old coordinates):
    /// new constants are `p⁻¹ [p e_i, p e_j]`.
    pub fn change_basis(&self, p: &Matrix) -> Result<LieAlgebra> {
        if p.nrows() != self.dim || p.ncols() != self.dim || p.field() != &self.field {
            return Err(Error::DimensionMismatch("basis change matrix".into()));
        }
        let inv = p.inverse()?;
        let cols = p.cols_vec();
        LieAlgebra::from_fn(&self.field, self.dim, |i, j| {
            inv.mul_vec(&self.bracket_unchecked(&cols[i], &cols[j]))
        })
    }

    /// Matrix of `ad_x` (columns are `[x, e_j]`).
    pub fn ad_matrix(&self, x: &[FieldElement]) -> Result<Matrix> {
        self.check_vec(x)?;
        let xs = to_sparse(x);
        let cols: Vec<Vec<FieldElement>> = (0..self.dim)
            .map(|j| {
                let mut v = self.bracket_basis_with(j, &xs);
                for c in v.iter_mut() {
                    *c = -&*c;
                }
                v
            })
            .collect();
        Matrix::from_cols(&self.field, self.dim, &cols)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<FieldElement> {
        let mut v = vec![FieldElement::zero(&self.field); self.dim];
        v[i] = FieldElement::one(&self.field);
        v
    }

    pub fn zero_vector(&self) -> Vec<FieldElement> {
        vec![FieldElement::zero(&self.field); self.dim]
    }

    /// `[A, B]` for subspaces of this algebra.
    pub fn bracket_spaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                let v = self.bracket_unchecked(x, y);
                if v.iter().any(|c| !c.is_zero()) {
                    vs.push(v);
                }
            }
        }
        Subspace::span(&self.field, self.dim, &vs)
    }

    pub fn whole_space(&self) -> Subspace {
        Subspace::full(&self.field, self.dim)
    }

    /// Span of all brackets `[e_i, e_j]`.
    pub fn derived_subalgebra(&self) -> Subspace {
        let vs: Vec<Vec<FieldElement>> = self
            .table
            .iter()
            .filter(|v| !v.is_empty())
            .map(|v| {
                let mut d = self.zero_vector();
                for (k, c) in v {
                    d[*k] = c.clone();
                }
                d
            })
            .collect();
        Subspace::span(&self.field, self.dim, &vs)
    }

    /// `{x : [x, L] = 0}`.
    pub fn center(&self) -> Subspace {
        // Unknown x; equation for each (j, k): Σ_i x_i c_ij^k = 0.
        let n = self.dim;
        let mut rows = Vec::new();
        for j in 0..n {
            for k in 0..n {
                let row: Vec<FieldElement> = (0..n).map(|i| self.structure_constant(i, j, k)).collect();
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return self.whole_space();
        }
        let m = Matrix::from_rows(&self.field, rows).expect("rectangular");
        Subspace::span(&self.field, n, &m.nullspace())
    }

    /// Whether the span of `vectors` is an ideal, with its echelon basis.
    pub fn ideal_check(&self, vectors: &[Vec<FieldElement>]) -> Result<(bool, Subspace)> {
        for v in vectors {
            self.check_vec(v)?;
        }
        let s = Subspace::span(&self.field, self.dim, vectors);
        let ok = s.basis().iter().all(|v| {
            let vs = to_sparse(v);
            (0..self.dim).all(|i| s.contains(&self.bracket_basis_with(i, &vs)))
        });
        Ok((ok, s))
    }

    /// The algebra structure induced on an ideal (or subalgebra) with the
    /// given basis, expressed in that basis.
    pub fn restrict_to(&self, basis: &[Vec<FieldElement>]) -> Result<LieAlgebra> {
        let m = basis.len();
        let cols = Matrix::from_cols(&self.field, self.dim, basis)?;
        if cols.rank() != m {
            return Err(Error::SingularMatrix);
        }
        LieAlgebra::from_fn(&self.field, m, |i, j| {
            let v = self.bracket_unchecked(&basis[i], &basis[j]);
            cols.solve(&v)
                .ok_or_else(|| Error::ConstraintViolated("span is not closed under the bracket".into()))
        })
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim {} over {})", self.dim, self.field)
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {} over {}", self.dim, self.field)?;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.stored(i, j);
                if v.is_empty() {
                    continue;
                }
                let terms: Vec<String> = v
                    .iter()
                    .map(|(k, c)| {
                        if c.is_one() {
                            self.labels[*k].clone()
                        } else {
                            format!("({c})*{}", self.labels[*k])
                        }
                    })
                    .collect();
                writeln!(f, "[{}, {}] = {}", self.labels[i], self.labels[j], terms.join(" + "))?;
            }
        }
        Ok(())
    }
}
