use std::fmt;
use std::ops::Index;

use super::{IntLinError, Scalar};

/// Dense row-major integer matrix. Zero rows or zero columns are allowed and
/// behave as zero maps.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, IntLinError> {
        let expected = rows
            .checked_mul(cols)
            .ok_or(IntLinError::ShapeMismatch { rows, cols, expected: usize::MAX, found: data.len() })?;
        if data.len() != expected {
            return Err(IntLinError::ShapeMismatch { rows, cols, expected, found: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from rows. An empty row list gives the 0x0 matrix;
    /// use [`Matrix::zeros`] for `0 x n` or `n x 0` shapes.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, IntLinError> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n_cols {
                return Err(IntLinError::RaggedRows { row: i, expected: n_cols, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n_rows, cols: n_cols, data })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, IntLinError>
    where
        T: From<i64>,
    {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| T::from(x)).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[T]) -> Self {
        assert!(diag.len() <= rows.min(cols), "diagonal longer than matrix");
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m.data[i * cols + i] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, IntLinError> {
        if self.cols != other.rows {
            return Err(IntLinError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }

    pub fn add(&self, other: &Self) -> Result<Self, IntLinError> {
        if self.shape() != other.shape() {
            return Err(IntLinError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        })
    }

    /// Block matrix `[[a, b], [c, d]]`. Block shapes must line up.
    pub fn blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self, IntLinError> {
        let mismatch = |x: &Self, y: &Self| IntLinError::DimensionMismatch {
            left_rows: x.rows,
            left_cols: x.cols,
            right_rows: y.rows,
            right_cols: y.cols,
        };
        if a.rows != b.rows {
            return Err(mismatch(a, b));
        }
        if c.rows != d.rows {
            return Err(mismatch(c, d));
        }
        if a.cols != c.cols {
            return Err(mismatch(a, c));
        }
        if b.cols != d.cols {
            return Err(mismatch(b, d));
        }
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..a.rows {
            data.extend_from_slice(a.row(i));
            data.extend_from_slice(b.row(i));
        }
        for i in 0..c.rows {
            data.extend_from_slice(c.row(i));
            data.extend_from_slice(d.row(i));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn block_diag(a: &Self, b: &Self) -> Self {
        Self::blocks(a, &Self::zeros(a.rows, b.cols), &Self::zeros(b.rows, a.cols), b)
            .expect("block shapes are consistent by construction")
    }

    /// Determinant by fraction-free (Bareiss) elimination. Panics on non-square input.
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut m = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j).clone() * m.get(k, k).clone()
                        - m.get(i, k).clone() * m.get(k, j).clone())
                        / prev.clone();
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1).clone()
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &T) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self.data[source * self.cols + j].clone();
            if !s.is_zero() {
                let idx = target * self.cols + j;
                self.data[idx] = self.data[idx].clone() + factor.clone() * s;
            }
        }
    }

    /// col[target] += factor * col[source]
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, factor: &T) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self.data[i * self.cols + source].clone();
            if !s.is_zero() {
                let idx = i * self.cols + target;
                self.data[idx] = self.data[idx].clone() + factor.clone() * s;
            }
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = -self.data[idx].clone();
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}
