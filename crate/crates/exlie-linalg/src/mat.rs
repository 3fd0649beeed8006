use exlie_field::Field;

use crate::{vector, LinalgError};

/// Row-major dense matrix. Columns are images of basis vectors when a matrix
/// represents a linear map, so `A·v` is matrix-vector multiplication.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone + PartialEq> Mat<E> {
    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![f.zero(); rows * cols] }
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.data[i * n + i] = f.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Mat { rows: r, cols, data }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<E>], rows: usize) -> Self {
        let cols = columns.len();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for c in columns {
                assert_eq!(c.len(), rows, "ragged columns");
                data.push(c[i].clone());
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [E] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<E>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Mat { rows: self.cols, cols: self.rows, data }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        vector::is_zero(f, &self.data)
    }

    pub fn is_identity<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let a = self.get(i, j);
                    if i == j {
                        f.is_one(a)
                    } else {
                        f.is_zero(a)
                    }
                })
            })
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols, "mul_vec shape mismatch");
        (0..self.rows).map(|i| vector::dot(f, self.row(i), v)).collect()
    }

    pub fn try_mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if f.is_zero(a) {
                    continue;
                }
                vector::axpy(f, out_row, a, other.row(k));
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on incompatible shapes.
    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.try_mul(f, other).expect("matrix product shape")
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum shape");
        Mat { rows: self.rows, cols: self.cols, data: vector::add(f, &self.data, &other.data) }
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix difference shape");
        Mat { rows: self.rows, cols: self.cols, data: vector::sub(f, &self.data, &other.data) }
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, s: &E) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: vector::scale(f, s, &self.data) }
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: vector::neg(f, &self.data) }
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, e: u32) -> Self {
        let mut acc = Self::identity(f, self.rows);
        for _ in 0..e {
            acc = acc.mul(f, self);
        }
        acc
    }

    /// Applies `g` entrywise, e.g. a field automorphism.
    pub fn map(&self, g: impl Fn(&E) -> E) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(g).collect() }
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    /// Inverse by Gauss-Jordan elimination on `[A | I]`.
    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::ShapeMismatch(format!("inverse of {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(f, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !f.is_zero(a.get(r, col))).ok_or(LinalgError::Singular)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let s = f.inv(a.get(col, col)).expect("nonzero pivot");
            a.scale_row(f, col, &s);
            inv.scale_row(f, col, &s);
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                let neg = f.neg(&factor);
                a.add_row_multiple(f, r, col, &neg);
                inv.add_row_multiple(f, r, col, &neg);
            }
        }
        Ok(inv)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn scale_row<F: Field<Elem = E>>(&mut self, f: &F, r: usize, s: &E) {
        for x in self.row_mut(r) {
            *x = f.mul(s, x);
        }
    }

    /// `row[dst] += s * row[src]`.
    pub(crate) fn add_row_multiple<F: Field<Elem = E>>(&mut self, f: &F, dst: usize, src: usize, s: &E) {
        let cols = self.cols;
        let (d, sr) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * cols);
            (&mut lo[dst * cols..(dst + 1) * cols], &hi[..cols])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * cols);
            (&mut hi[..cols], &lo[src * cols..(src + 1) * cols])
        };
        vector::axpy(f, d, s, sr);
    }

    pub fn format<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| vector::format(f, self.row(i))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exlie_field::FiniteField;

    #[test]
    fn inverse_round_trip() {
        let f = FiniteField::prime(7).unwrap();
        let a = Mat::from_rows(vec![vec![1, 2], vec![3, 4]], 2);
        let inv = a.inverse(&f).unwrap();
        assert!(a.mul(&f, &inv).is_identity(&f));
        let singular = Mat::from_rows(vec![vec![1, 2], vec![2, 4]], 2);
        assert_eq!(singular.inverse(&f), Err(LinalgError::Singular));
    }

    #[test]
    fn columns_and_transpose() {
        let m = Mat::from_columns(&[vec![1u32, 2], vec![3, 4], vec![5, 6]], 2);
        assert_eq!(m.row(0), &[1, 3, 5]);
        assert_eq!(m.transpose().row(2), &[5, 6]);
    }
}
