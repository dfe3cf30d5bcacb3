use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};

/// Systems with both dimensions at or below this size are eliminated densely;
/// anything larger goes through the sparse row engine.
pub const DENSE_LIMIT: usize = 64;

pub type SparseRow = Vec<(usize, Scalar)>;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, rows: &[Vec<Scalar>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let data: Vec<Scalar> = rows.iter().flatten().copied().collect();
        if data.iter().any(|s| s.field() != field) {
            return Err(Error::Shape(format!("entries outside {field}")));
        }
        Ok(Matrix { field, rows: rows.len(), cols, data })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Self::from_rows(field, &rows).expect("rectangular literal")
    }

    /// Builds the matrix whose `j`-th column is `cols[j]`.
    pub fn from_sparse_columns(field: Field, rows: usize, cols: &[SparseRow]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for &(i, v) in col {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!("{} columns vs vector of {}", self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += *a * *b;
                    }
                }
                acc
            })
            .collect())
    }

    pub fn pow(&self, mut e: u64) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, *v)).collect())
            .collect();
        SparseMatrix { field: self.field, cols: self.cols, rows }
    }

    pub fn echelon(&self) -> Echelon {
        if self.rows <= DENSE_LIMIT && self.cols <= DENSE_LIMIT {
            dense_echelon(self)
        } else {
            self.to_sparse().echelon()
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        self.echelon().kernel()
    }

    /// One solution of `self * x = b`, free variables set to zero;
    /// `Ok(None)` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::Shape(format!("{} rows vs right-hand side of {}", self.rows, b.len())));
        }
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = b[i];
        }
        Ok(aug.echelon().solve_augmented())
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        let ech = self.echelon();
        if ech.rank() != n {
            return None;
        }
        for j in 0..n {
            let mut e = vec![self.field.zero(); n];
            e[j] = self.field.one();
            cols.push(self.solve(&e).ok()??);
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                inv[(i, j)] = c[i];
            }
        }
        Some(inv)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Row-sparse matrix used for systems above [`DENSE_LIMIT`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub field: Field,
    pub cols: usize,
    /// Each row sorted by column, without zeros.
    pub rows: Vec<SparseRow>,
}

impl SparseMatrix {
    /// Assembles a matrix from its columns.
    pub fn from_columns(field: Field, nrows: usize, cols: &[SparseRow]) -> Self {
        let mut rows: Vec<SparseRow> = vec![Vec::new(); nrows];
        for (j, col) in cols.iter().enumerate() {
            for &(i, v) in col {
                if !v.is_zero() {
                    rows[i].push((j, v));
                }
            }
        }
        SparseMatrix { field, cols: cols.len(), rows }
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows.len(), self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                m[(i, j)] = v;
            }
        }
        m
    }

    /// Incremental sparse elimination: each row is reduced against the pivots
    /// found so far, and a surviving row contributes a new pivot at its first
    /// nonzero column.
    pub fn echelon(&self) -> Echelon {
        let zero = self.field.zero();
        let mut pivot_of: Vec<Option<usize>> = vec![None; self.cols];
        let mut pivots: Vec<(usize, SparseRow)> = Vec::new();
        let mut scratch = vec![zero; self.cols];
        for row in &self.rows {
            if row.is_empty() {
                continue;
            }
            let start = row[0].0;
            for &(j, v) in row {
                scratch[j] = v;
            }
            for c in start..self.cols {
                let v = scratch[c];
                if v.is_zero() {
                    continue;
                }
                if let Some(k) = pivot_of[c] {
                    for &(j, w) in &pivots[k].1 {
                        scratch[j] -= v * w;
                    }
                }
            }
            let mut reduced: SparseRow = Vec::new();
            for (c, slot) in scratch.iter_mut().enumerate().skip(start) {
                if !slot.is_zero() {
                    reduced.push((c, *slot));
                    *slot = zero;
                }
            }
            if let Some(&(lead, lv)) = reduced.first() {
                let inv = lv.inv().expect("nonzero pivot");
                for e in reduced.iter_mut() {
                    e.1 *= inv;
                }
                pivot_of[lead] = Some(pivots.len());
                pivots.push((lead, reduced));
            }
        }
        pivots.sort_by_key(|(c, _)| *c);
        Echelon { field: self.field, cols: self.cols, pivots }
    }
}

/// A row echelon form: rows with normalized leading entries, sorted by pivot
/// column. Because the row space determines the reduced form uniquely, every
/// derived quantity (rank, the canonical solution, the kernel basis) is
/// independent of which engine produced it.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    cols: usize,
    pivots: Vec<(usize, SparseRow)>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|(c, _)| *c).collect()
    }

    fn back_substitute(&self, x: &mut [Scalar], rhs: impl Fn(&SparseRow) -> Scalar) {
        for (c, row) in self.pivots.iter().rev() {
            let mut v = rhs(row);
            for &(j, w) in row {
                if j != *c && j < x.len() {
                    v -= w * x[j];
                }
            }
            x[*c] = v;
        }
    }

    /// Interprets the last column as the right-hand side.
    pub fn solve_augmented(&self) -> Option<Vec<Scalar>> {
        let n = self.cols - 1;
        if self.pivots.iter().any(|(c, _)| *c == n) {
            return None;
        }
        let mut x = vec![self.field.zero(); n];
        let zero = self.field.zero();
        self.back_substitute(&mut x, |row| row.last().filter(|(j, _)| *j == n).map_or(zero, |(_, v)| *v));
        Some(x)
    }

    /// Kernel basis, one vector per free column in increasing order.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut is_pivot = vec![false; self.cols];
        for (c, _) in &self.pivots {
            is_pivot[*c] = true;
        }
        let zero = self.field.zero();
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = vec![zero; self.cols];
                x[f] = self.field.one();
                self.back_substitute(&mut x, |_| zero);
                x
            })
            .collect()
    }

    /// Reduced rows (pivot entries equal to one), in pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseRow> {
        self.pivots.iter().map(|(_, r)| r)
    }
}

fn dense_echelon(m: &Matrix) -> Echelon {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(pr) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else { continue };
        if pr != r {
            for j in 0..a.cols {
                a.data.swap(pr * a.cols + j, r * a.cols + j);
            }
        }
        let inv = a[(r, c)].inv().expect("nonzero pivot");
        for j in c..a.cols {
            a[(r, j)] *= inv;
        }
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let f = a[(i, c)];
            if f.is_zero() {
                continue;
            }
            for j in c..a.cols {
                let v = a[(r, j)];
                if !v.is_zero() {
                    a[(i, j)] -= f * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let pivots = pivots
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let row = a.row(i).iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, *v));
            (c, row.collect())
        })
        .collect();
    Echelon { field: m.field, cols: m.cols, pivots }
}

/// Incrementally maintained basis of a subspace, for span and membership tests.
#[derive(Clone, Debug)]
pub struct SubspaceBuilder {
    field: Field,
    dim: usize,
    pivot_of: Vec<Option<usize>>,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl SubspaceBuilder {
    pub fn new(field: Field, dim: usize) -> Self {
        SubspaceBuilder { field, dim, pivot_of: vec![None; dim], rows: Vec::new() }
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for c in 0..self.dim {
            let x = w[c];
            if x.is_zero() {
                continue;
            }
            if let Some(k) = self.pivot_of[c] {
                let row = &self.rows[k].1;
                for j in c..self.dim {
                    if !row[j].is_zero() {
                        w[j] -= x * row[j];
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut w = self.reduce(v);
        let Some(lead) = w.iter().position(|x| !x.is_zero()) else { return false };
        let inv = w[lead].inv().expect("nonzero");
        for x in w.iter_mut() {
            *x *= inv;
        }
        self.pivot_of[lead] = Some(self.rows.len());
        self.rows.push((lead, w));
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The reduced basis vectors, in insertion order.
    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(Matrix::identity(f5(), 3).rank(), 3);
        assert_eq!(Matrix::zeros(f5(), 4, 2).rank(), 0);
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let f = f5();
        let b: Vec<Scalar> = [1, 4, 2].iter().map(|&x| f.from_i64(x)).collect();
        assert_eq!(Matrix::identity(f, 3).solve(&b).unwrap(), Some(b));
    }

    #[test]
    fn inconsistent_system_has_no_solution() {
        let f = f5();
        let m = Matrix::zeros(f, 1, 1);
        assert_eq!(m.solve(&[f.one()]).unwrap(), None);
    }

    #[test]
    fn free_variables_are_zero() {
        let f = f5();
        // x + y = 1 -> (1, 0)
        let m = Matrix::from_i64(f, &[&[1, 1]]);
        assert_eq!(m.solve(&[f.one()]).unwrap(), Some(vec![f.one(), f.zero()]));
    }

    #[test]
    fn rational_inverse() {
        let q = Field::Q;
        let m = Matrix::from_i64(q, &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(q, 2));
    }

    fn arb_matrix(p: u32, max: usize) -> impl Strategy<Value = Matrix> {
        (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(0..p as i64, r * c).prop_map(move |v| {
                let f = Field::Fp(p);
                let rows: Vec<Vec<Scalar>> =
                    v.chunks(c).map(|ch| ch.iter().map(|&x| f.from_i64(x)).collect()).collect();
                Matrix::from_rows(f, &rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix(3, 7)) {
            let k = m.kernel();
            prop_assert_eq!(m.rank() + k.len(), m.cols());
            for v in &k {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn solutions_satisfy_system(m in arb_matrix(2, 6), seed in proptest::collection::vec(0i64..2, 6)) {
            let f = m.field();
            let b: Vec<Scalar> = (0..m.rows()).map(|i| f.from_i64(seed[i % seed.len()])).collect();
            if let Some(x) = m.solve(&b).unwrap() {
                prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
            }
        }

        #[test]
        fn dense_and_sparse_engines_agree(m in arb_matrix(5, 8)) {
            let dense = dense_echelon(&m);
            let sparse = m.to_sparse().echelon();
            prop_assert_eq!(dense.pivot_columns(), sparse.pivot_columns());
            prop_assert_eq!(dense.kernel(), sparse.kernel());
        }
    }
}
