//! Dense matrices over a [`Field`] with exact row reduction.
//!
//! Matrices act on column vectors: a `rows x cols` matrix maps `k^cols` to
//! `k^rows`.

use std::fmt;

use num_traits::{One, Zero};

use crate::field::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

pub type Vector = Vec<Scalar>;

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(field: Field, rows: usize, cols: usize, entries: Vec<Vec<Scalar>>) -> Mat {
        assert_eq!(entries.len(), rows, "row count");
        let mut data = Vec::with_capacity(rows * cols);
        for row in entries {
            assert_eq!(row.len(), cols, "column count");
            data.extend(row.into_iter().map(|v| field.reduce(v)));
        }
        Mat { field, rows, cols, data }
    }

    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Mat {
        assert_eq!(entries.len(), rows * cols);
        Mat { field, rows, cols, data: entries.iter().map(|&v| field.from_i64(v)).collect() }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Mat {
        let mut m = Mat::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m.data[i * columns.len() + j] = v.clone();
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

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = self.field.reduce(v);
    }

    pub fn row(&self, r: usize) -> Vector {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = f.add(&acc, &f.mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape");
        let f = self.field;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f.add(a, b)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape");
        let f = self.field;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f.sub(a, b)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        let f = self.field;
        let data = self.data.iter().map(|a| f.mul(a, s)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Mat {
        let f = self.field;
        let data = self.data.iter().map(|a| f.neg(a)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn hstack(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.rows, rhs.rows, "hstack rows");
        let mut out = Mat::zeros(self.field, self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * out.cols + j] = self.get(i, j).clone();
            }
            for j in 0..rhs.cols {
                out.data[i * out.cols + self.cols + j] = rhs.get(i, j).clone();
            }
        }
        out
    }

    pub fn vstack(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.cols, "vstack cols");
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Mat { field: self.field, rows: self.rows + rhs.rows, cols: self.cols, data }
    }

    pub fn block_diag(&self, rhs: &Mat) -> Mat {
        let mut out = Mat::zeros(self.field, self.rows + rhs.rows, self.cols + rhs.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, rhs);
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut out = Mat::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.data[i * cols + j] = self.get(r0 + i, c0 + j).clone();
            }
        }
        out
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.data[r * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.data[i * m.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column, in column order.
    pub fn nullspace(&self) -> Vec<Vector> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of `{y : y^T * self = 0}`.
    pub fn left_nullspace(&self) -> Vec<Vector> {
        self.transpose().nullspace()
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let f = self.field;
        let aug = self.hstack(&Mat::from_columns(f, self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Some `X` with `self * X = rhs`, if one exists.
    pub fn solve_matrix(&self, rhs: &Mat) -> Option<Mat> {
        assert_eq!(rhs.rows, self.rows);
        let cols: Option<Vec<Vector>> = rhs.columns().iter().map(|c| self.solve(c)).collect();
        cols.map(|c| Mat::from_columns(self.field, self.cols, &c))
    }

    /// Indices of a maximal independent subset of the columns, chosen greedily
    /// from left to right.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_invertible() {
            return None;
        }
        self.solve_matrix(&Mat::identity(self.field, self.rows))
    }

    pub fn is_nilpotent(&self) -> bool {
        assert_eq!(self.rows, self.cols);
        let mut p = self.clone();
        for _ in 0..self.rows {
            if p.is_zero() {
                return true;
            }
            p = p.mul(self);
        }
        p.is_zero()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }
}

/// Rank of a family of vectors of common length `dim`.
pub fn rank_of(field: Field, dim: usize, vectors: &[Vector]) -> usize {
    if vectors.is_empty() || dim == 0 {
        return 0;
    }
    Mat::from_columns(field, dim, vectors).rank()
}

/// Extends nothing: returns the indices of the vectors that are independent of
/// all earlier ones.
pub fn greedy_independent(field: Field, dim: usize, vectors: &[Vector]) -> Vec<usize> {
    if vectors.is_empty() || dim == 0 {
        return Vec::new();
    }
    Mat::from_columns(field, dim, vectors).independent_columns()
}

impl fmt::Debug for Mat {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| self.field.display(v)).collect();
            write!(fm, "[{}]", row.join(", "))?;
        }
        write!(fm, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::RATIONALS
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = Mat::from_i64(q(), 2, 3, &[1, 2, 3, 2, 4, 6]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.apply(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_inconsistent() {
        let m = Mat::from_i64(q(), 2, 1, &[1, 1]);
        let f = q();
        assert!(m.solve(&[f.from_i64(1), f.from_i64(2)]).is_none());
        assert_eq!(m.solve(&[f.from_i64(3), f.from_i64(3)]).unwrap(), vec![f.from_i64(3)]);
    }

    #[test]
    fn empty_shapes() {
        let m = Mat::zeros(q(), 0, 3);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.nullspace().len(), 3);
        let n = Mat::zeros(q(), 2, 0);
        assert_eq!(n.nullspace().len(), 0);
        assert!(n.solve(&[q().zero(), q().zero()]).is_some());
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(-3i64..4, 12), p in prop::sample::select(vec![0u64, 2, 3, 101])) {
            let f = if p == 0 { Field::RATIONALS } else { Field::prime(p).unwrap() };
            let m = Mat::from_i64(f, 3, 4, &entries);
            prop_assert_eq!(m.rank() + m.nullspace().len(), 4);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }
    }
}
