//! Exact linear algebra over tower levels.
//!
//! Elimination always pivots on the first nonzero entry of a column, taking
//! the lowest row index, so echelon bases are reproducible.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::fields::{Field, FieldElement};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![FieldElement::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::one(field));
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<FieldElement>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data: Vec<FieldElement> = rows.into_iter().flatten().collect();
        if data.iter().any(|x| x.field() != field) {
            return Err(Error::TowerMismatch);
        }
        Ok(Matrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(field: &Field, nrows: usize, cols: &[Vec<FieldElement>]) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            if col.len() != nrows {
                return Err(Error::DimensionMismatch("column length".into()));
            }
            for (i, x) in col.iter().enumerate() {
                if x.field() != field {
                    return Err(Error::TowerMismatch);
                }
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn from_ints(field: &Field, rows: &[Vec<i64>]) -> Matrix {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| FieldElement::from_int(field, x)).collect())
            .collect();
        Matrix::from_rows(field, rows).expect("rectangular")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: FieldElement) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn cols_vec(&self) -> Vec<Vec<FieldElement>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = Matrix::zeros(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        m.data[r * other.cols + c] += &(a * b);
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = FieldElement::zero(&self.field);
                for (a, x) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        Matrix {
            data: self.data.iter().map(|a| a * c).collect(),
            ..self.clone()
        }
    }

    fn check_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix shapes differ".into()));
        }
        Ok(())
    }

    /// Applies `f` entrywise; `f` must land in `field`.
    pub fn map(&self, field: &Field, f: impl Fn(&FieldElement) -> FieldElement) -> Matrix {
        Matrix {
            field: field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn lift_to(&self, bigger: &Field) -> Result<Matrix> {
        let data = self
            .data
            .iter()
            .map(|x| x.lift_to(bigger))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            field: bigger.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            for c in col..m.cols {
                let x = m.get(row, c) * &inv;
                m.set(row, c, x);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for c in col..m.cols {
                    let pc = m.get(row, c);
                    if pc.is_zero() {
                        continue;
                    }
                    let x = m.get(r, c) - &(&f * pc);
                    m.set(r, c, x);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : M v = 0}`; one vector per free column, with a 1 there.
    pub fn nullspace(&self) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![FieldElement::zero(&self.field); self.cols];
                v[f] = FieldElement::one(&self.field);
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f);
                }
                v
            })
            .collect()
    }

    /// Determinant by Bareiss elimination.
    pub fn det(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(FieldElement::one(&self.field));
        }
        let mut m = self.clone();
        let mut sign_neg = false;
        let mut prev = FieldElement::one(&self.field);
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !m.get(r, k).is_zero()) {
                    Some(p) => {
                        m.swap_rows(k, p);
                        sign_neg = !sign_neg;
                    }
                    None => return Ok(FieldElement::zero(&self.field)),
                }
            }
            let pivot = m.get(k, k).clone();
            let prev_inv = prev.inv()?;
            for i in k + 1..n {
                for j in k + 1..n {
                    let x = &(&(&pivot * m.get(i, j)) - &(m.get(i, k) * m.get(k, j))) * &prev_inv;
                    m.set(i, j, x);
                }
                m.set(i, k, FieldElement::zero(&self.field));
            }
            prev = pivot;
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if sign_neg { -d } else { d })
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::SingularMatrix);
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, FieldElement::one(&self.field));
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        let mut inv = Matrix::zeros(&self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Ok(inv)
    }

    /// Some solution of `M x = b`, if one exists.
    pub fn solve(&self, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
        let mut aug = Matrix::zeros(&self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![FieldElement::zero(&self.field); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red.get(i, self.cols).clone();
        }
        Some(x)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A subspace of `field^ambient`, kept as a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace::span(field, ambient, &Matrix::identity(field, ambient).rows_vec())
    }

    pub fn span(field: &Field, ambient: usize, vectors: &[Vec<FieldElement>]) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(field, ambient);
        }
        let m = Matrix::from_rows(field, vectors.to_vec()).expect("rectangular");
        let (r, pivots) = m.rref();
        let rows = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            field: field.clone(),
            ambient,
            rows,
            pivots,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection along the echelon basis.
    pub fn reduce(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.reduce(v).iter().all(FieldElement::is_zero)
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[FieldElement]) -> Option<Vec<FieldElement>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.rows.clone();
        vs.extend(other.rows.iter().cloned());
        Subspace::span(&self.field, self.ambient, &vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // Solve a·A = b·B via the nullspace of the stacked transpose.
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Subspace::zero(&self.field, self.ambient);
        }
        let mut cols = self.rows.clone();
        cols.extend(other.rows.iter().cloned());
        let m = Matrix::from_cols(&self.field, self.ambient, &cols).expect("shape");
        let vecs: Vec<Vec<FieldElement>> = m
            .nullspace()
            .into_iter()
            .map(|coef| {
                let mut v = vec![FieldElement::zero(&self.field); self.ambient];
                for (c, row) in coef[..a].iter().zip(&self.rows) {
                    for (x, r) in v.iter_mut().zip(row) {
                        *x += &(c * r);
                    }
                }
                v
            })
            .collect();
        Subspace::span(&self.field, self.ambient, &vecs)
    }

    /// Standard basis indices completing this subspace to the whole space,
    /// in increasing order.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }
}

/// Incremental sparse elimination for large homogeneous systems.
pub struct SparseSystem {
    field: Field,
    nvars: usize,
    /// Echelon rows keyed by their leading variable; leading coefficient 1.
    rows: BTreeMap<usize, BTreeMap<usize, FieldElement>>,
}

impl SparseSystem {
    pub fn new(field: &Field, nvars: usize) -> SparseSystem {
        SparseSystem {
            field: field.clone(),
            nvars,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds the equation `Σ coeff·x_var = 0`.
    pub fn add_equation(&mut self, terms: impl IntoIterator<Item = (usize, FieldElement)>) {
        let mut eq: BTreeMap<usize, FieldElement> = BTreeMap::new();
        for (v, c) in terms {
            if c.is_zero() {
                continue;
            }
            let e = eq.entry(v).or_insert_with(|| FieldElement::zero(&self.field));
            *e += &c;
        }
        eq.retain(|_, c| !c.is_zero());
        let mut cursor = 0;
        loop {
            let next = eq.range(cursor..).map(|(&k, _)| k).find(|k| self.rows.contains_key(k));
            let Some(k) = next else { break };
            let f = eq.remove(&k).expect("present");
            for (&j, c) in self.rows[&k].iter().skip(1) {
                let e = eq.entry(j).or_insert_with(|| FieldElement::zero(&self.field));
                *e -= &(&f * c);
                if e.is_zero() {
                    eq.remove(&j);
                }
            }
            cursor = k + 1;
        }
        let Some((&lead, c)) = eq.iter().next() else { return };
        let inv = c.inv().expect("nonzero");
        for c in eq.values_mut() {
            *c = &*c * &inv;
        }
        self.rows.insert(lead, eq);
    }

    /// Basis of the solution space, one vector per free variable.
    pub fn nullspace(&self) -> Vec<Vec<FieldElement>> {
        let free: Vec<usize> = (0..self.nvars).filter(|v| !self.rows.contains_key(v)).collect();
        let nf = free.len();
        let free_pos: BTreeMap<usize, usize> = free.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        // value[var] expressed as a combination of the free variables
        let mut value: BTreeMap<usize, Vec<FieldElement>> = BTreeMap::new();
        for (&lead, row) in self.rows.iter().rev() {
            let mut acc = vec![FieldElement::zero(&self.field); nf];
            for (&j, c) in row.iter().skip(1) {
                if let Some(&fi) = free_pos.get(&j) {
                    acc[fi] -= c;
                } else {
                    let vj = &value[&j];
                    for (a, x) in acc.iter_mut().zip(vj) {
                        if !x.is_zero() {
                            *a -= &(c * x);
                        }
                    }
                }
            }
            value.insert(lead, acc);
        }
        (0..nf)
            .map(|fi| {
                (0..self.nvars)
                    .map(|v| match free_pos.get(&v) {
                        Some(&g) if g == fi => FieldElement::one(&self.field),
                        Some(_) => FieldElement::zero(&self.field),
                        None => value[&v][fi].clone(),
                    })
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn rref_and_rank() {
        let m = Matrix::from_ints(&q(), &[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        let (r, p) = m.rref();
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r.row(0), Matrix::from_ints(&q(), &[vec![1, 0, 1]]).row(0));
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).unwrap().iter().all(FieldElement::is_zero));
    }

    #[test]
    fn det_and_inverse() {
        let m = Matrix::from_ints(&q(), &[vec![0, 2, 1], vec![1, 1, 0], vec![3, 0, 1]]);
        assert_eq!(m.det().unwrap(), FieldElement::from_int(&q(), -5));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        let s = Matrix::from_ints(&q(), &[vec![1, 2], vec![2, 4]]);
        assert_eq!(s.inverse(), Err(Error::SingularMatrix));
        assert!(s.det().unwrap().is_zero());
    }

    #[test]
    fn subspace_ops() {
        let f = q();
        let e = |v: &[i64]| v.iter().map(|&x| FieldElement::from_int(&f, x)).collect::<Vec<_>>();
        let a = Subspace::span(&f, 3, &[e(&[1, 0, 0]), e(&[0, 1, 0])]);
        let b = Subspace::span(&f, 3, &[e(&[0, 1, 0]), e(&[0, 0, 1])]);
        assert_eq!(a.intersection(&b).dim(), 1);
        assert_eq!(a.sum(&b).dim(), 3);
        assert!(a.contains(&e(&[2, -3, 0])));
        assert!(!a.contains(&e(&[0, 0, 1])));
        assert_eq!(a.complement_indices(), vec![2]);
    }

    #[test]
    fn sparse_matches_dense() {
        let f = q();
        let m = Matrix::from_ints(&f, &[vec![1, 1, 0, 2], vec![0, 0, 1, -1], vec![1, 1, 1, 1]]);
        let mut s = SparseSystem::new(&f, 4);
        for r in 0..3 {
            s.add_equation(m.row(r).iter().cloned().enumerate());
        }
        assert_eq!(s.rank(), 2);
        let ns = s.nullspace();
        assert_eq!(ns, m.nullspace());
    }
}
