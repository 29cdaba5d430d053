//! Dense matrices over an exact field, with an optional sparse row view.

use crate::error::{Error, Result};
use crate::exact::nullspace::{IncrementalNullspace, Nullspace};
use crate::exact::scalar::{Field, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Mat<S: Scalar> {
    field: S::Field,
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// A row stored as `(column, value)` pairs with nonzero values, columns
/// strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRow<S> {
    pub entries: Vec<(usize, S)>,
}

impl<S: Scalar> SparseRow<S> {
    pub fn from_dense(row: &[S]) -> Self {
        SparseRow {
            entries: row
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense<F: Field<Elem = S>>(&self, field: F, cols: usize) -> Vec<S> {
        let mut v = field.zeros(cols);
        for (i, x) in &self.entries {
            v[*i] = x.clone();
        }
        v
    }
}

/// How a nullspace is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NullspaceMode {
    /// Full reduction of every row.
    Exhaustive,
    /// Streamed reduction that stops once the rank has been stable for
    /// `3 * cols` consecutive rows; the remaining rows (up to `10 * cols`)
    /// are then used to verify the basis.
    Incremental,
}

impl<S: Scalar> std::fmt::Debug for Mat<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<S: Scalar> Mat<S> {
    pub fn zeros<F: Field<Elem = S>>(field: F, rows: usize, cols: usize) -> Self {
        Mat { field: field.zero().field(), rows, cols, data: field.zeros(rows * cols) }
    }

    pub fn identity<F: Field<Elem = S>>(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn<F: Field<Elem = S>>(field: F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let field = field.zero().field();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { field, rows, cols, data }
    }

    /// Builds a matrix from equal-length rows; rejects ragged input and
    /// scalars from another field.
    pub fn from_rows<F: Field<Elem = S>>(field: F, rows: Vec<Vec<S>>) -> Result<Self> {
        let field = field.zero().field();
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension { expected: cols, found: r.len() });
            }
            if r.iter().any(|x| x.field() != field) {
                return Err(Error::MixedModes);
            }
            data.extend(r);
        }
        Ok(Mat { field, rows: n, cols, data })
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns<F: Field<Elem = S>>(field: F, n: usize, columns: &[Vec<S>]) -> Self {
        let mut m = Self::zeros(field, n, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), n);
            for (i, x) in c.iter().enumerate() {
                m.data[i * columns.len() + j] = x.clone();
            }
        }
        m
    }

    pub fn from_sparse_rows<F: Field<Elem = S>>(field: F, cols: usize, rows: &[SparseRow<S>]) -> Self {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, x) in &r.entries {
                m.data[i * cols + j] = x.clone();
            }
        }
        m
    }

    pub fn to_sparse_rows(&self) -> Vec<SparseRow<S>> {
        (0..self.rows).map(|i| SparseRow::from_dense(self.row(i))).collect()
    }

    pub fn field(&self) -> S::Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [S] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    /// Rectangular block `[r0, r0 + nr) x [c0, c0 + nc)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Mat<S> {
        Mat::from_fn(self.field, nr, nc, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat<S>) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn transpose(&self) -> Mat<S> {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, k: &S) -> Mat<S> {
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| k.mul_ref(x)).collect(),
        }
    }

    pub fn add(&self, o: &Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b).collect(),
        }
    }

    pub fn sub(&self, o: &Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b).collect(),
        }
    }

    pub fn mul(&self, o: &Mat<S>) -> Mat<S> {
        assert_eq!(self.cols, o.rows, "inner dimensions differ");
        let mut out = Mat::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * o.cols..(i + 1) * o.cols];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if !a.is_zero() {
                    S::axpy(dst, a, o.row(k));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| S::dot(self.field, self.row(i), v)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat<S>, Vec<usize>) {
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
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for x in m.row_mut(r) {
                *x *= &inv;
            }
            let pivot_row = m.row(r).to_vec();
            for i in 0..m.rows {
                if i != r {
                    let f = m.get(i, c).clone();
                    if !f.is_zero() {
                        S::axpy(m.row_mut(i), &(-f), &pivot_row);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn invert(&self) -> Result<Mat<S>> {
        if !self.is_square() {
            return Err(Error::Dimension { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let mut aug = Mat::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(red.block(0, n, n, n))
    }

    /// Solves `self * x = b` for square invertible `self`.
    pub fn solve(&self, b: &[S]) -> Result<Vec<S>> {
        Ok(self.invert()?.mul_vec(b))
    }

    pub fn nullspace(&self, mode: NullspaceMode) -> Result<Nullspace<S>> {
        match mode {
            NullspaceMode::Exhaustive => {
                let (red, pivots) = self.rref();
                let mut inc = IncrementalNullspace::new(self.field, self.cols);
                for i in 0..pivots.len() {
                    inc.insert(red.row(i));
                }
                Ok(inc.finish(self.rows))
            }
            NullspaceMode::Incremental => {
                let window = 3 * self.cols;
                let mut inc = IncrementalNullspace::new(self.field, self.cols);
                let mut stable = 0;
                let mut used = 0;
                for i in 0..self.rows {
                    used = i + 1;
                    if inc.insert(self.row(i)) {
                        stable = 0;
                    } else {
                        stable += 1;
                        if stable >= window {
                            break;
                        }
                    }
                }
                let ns = inc.finish(used);
                let extra = (used..self.rows).take(10 * self.cols);
                for i in extra {
                    if !ns.annihilated_by(self.row(i)) {
                        return Err(Error::Verification(format!(
                            "row {i} is not annihilated by the incremental nullspace"
                        )));
                    }
                }
                Ok(ns)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::fp::PrimeField;
    use crate::exact::rational::{Rational, RationalField};
    use crate::exact::rng::Rng;

    fn q(n: i64) -> Rational {
        Rational::int(n)
    }

    #[test]
    fn invert_small_matrix() {
        let m = Mat::from_rows(RationalField, vec![vec![q(2), q(1)], vec![q(1), q(1)]]).unwrap();
        let inv = m.invert().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(*inv.get(0, 1), q(-1));
    }

    #[test]
    fn singular_is_reported() {
        let m = Mat::from_rows(RationalField, vec![vec![q(1), q(2)], vec![q(2), q(4)]]).unwrap();
        assert_eq!(m.invert(), Err(Error::Singular));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn ragged_and_mixed_rows_rejected() {
        assert!(Mat::from_rows(RationalField, vec![vec![q(1)], vec![q(1), q(2)]]).is_err());
        let f5 = PrimeField::new(5).unwrap();
        let f7 = PrimeField::new(7).unwrap();
        let r = Mat::from_rows(f5, vec![vec![f5.one(), f7.one()]]);
        assert_eq!(r, Err(Error::MixedModes));
    }

    #[test]
    fn sparse_view_round_trips() {
        let f = RationalField;
        let mut rng = Rng::new(2);
        let m = Mat::from_fn(f, 6, 9, |_, _| if rng.coin() { f.random(&mut rng) } else { f.zero() });
        let back = Mat::from_sparse_rows(f, 9, &m.to_sparse_rows());
        assert_eq!(back, m);
    }

    #[test]
    fn nullspace_of_rank_deficient_matrix() {
        let f = RationalField;
        let mut rng = Rng::new(9);
        let a = Mat::from_fn(f, 8, 3, |_, _| f.random(&mut rng));
        let b = Mat::from_fn(f, 3, 7, |_, _| f.random(&mut rng));
        let m = a.mul(&b);
        let ns = m.nullspace(NullspaceMode::Exhaustive).unwrap();
        assert_eq!(ns.rank, 3);
        assert_eq!(ns.basis.len(), 4);
        for v in &ns.basis {
            assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }
}
