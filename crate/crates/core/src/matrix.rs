//! Small dense row-major matrices.

use std::fmt;
use std::ops::Mul;

use num_traits::{Num, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Integer matrices act on root data coordinates.
pub type IntMatrix = Matrix<i64>;

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch(format!(
                "row {bad} has length {}, expected {ncols}",
                rows[bad].len()
            )));
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.rows().map(<[T]>::to_vec).collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Block diagonal sum `self ⊕ other`, padding with `zero`.
    pub fn direct_sum(&self, other: &Self, zero: T) -> Self {
        Self::from_fn(
            self.rows + other.rows,
            self.cols + other.cols,
            |i, j| match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - self.rows, j - self.cols).clone(),
                _ => zero.clone(),
            },
        )
    }
}

impl<T: Clone + Num> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    /// `self · v` for a column vector `v`.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix");
        self.rows().map(|row| dot(row, v)).collect()
    }

    /// `row_target += factor · row_source`
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: T) {
        for j in 0..self.cols {
            let v = self.get(target, j).clone() + factor.clone() * self.get(source, j).clone();
            self.set(target, j, v);
        }
    }

    /// `col_target += factor · col_source`
    pub fn add_col_multiple(&mut self, target: usize, source: usize, factor: T) {
        for i in 0..self.rows {
            let v = self.get(i, target).clone() + factor.clone() * self.get(i, source).clone();
            self.set(i, target, v);
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = T::zero() - self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = T::zero() - self.get(i, j).clone();
            self.set(i, j, v);
        }
    }
}

pub fn dot<T: Clone + Num>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

impl<T: Clone + Num> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix shapes do not compose");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                acc + self.get(i, k).clone() * rhs.get(k, j).clone()
            })
        })
    }
}

impl IntMatrix {
    pub fn to_scalar<T: Scalar>(&self) -> Matrix<T> {
        self.map(|&x| T::from_i64(x))
    }

    /// Integer inverse, if the matrix is unimodular.
    pub fn unimodular_inverse(&self) -> Option<IntMatrix> {
        let q: Matrix<crate::Rational> = self.to_scalar();
        let inv = q.inverse().ok()?;
        let rows = inv
            .rows()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_int().and_then(|i| num_traits::ToPrimitive::to_i64(&i)))
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Matrix::from_rows(rows).ok()
    }
}

impl<T: Scalar> Matrix<T> {
    /// Row echelon reduction; returns the pivot columns. `companion`, when
    /// given, receives the same row operations.
    fn reduce(&mut self, mut companion: Option<&mut Matrix<T>>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            if let Some(m) = companion.as_deref_mut() {
                m.swap_rows(r, p);
            }
            let inv = T::one() / self.get(r, c).clone();
            for j in 0..self.cols {
                let v = self.get(r, j).clone() * inv.clone();
                self.set(r, j, v);
            }
            if let Some(m) = companion.as_deref_mut() {
                for j in 0..m.cols {
                    let v = m.get(r, j).clone() * inv.clone();
                    m.set(r, j, v);
                }
            }
            for i in 0..self.rows {
                if i != r && !self.get(i, c).is_zero() {
                    let f = -self.get(i, c).clone();
                    self.add_row_multiple(i, r, f.clone());
                    if let Some(m) = companion.as_deref_mut() {
                        m.add_row_multiple(i, r, f);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().reduce(None).len()
    }

    pub fn determinant(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = T::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(T::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = det * pivot.clone();
            for i in c + 1..n {
                if !m.get(i, c).is_zero() {
                    let f = -(m.get(i, c).clone() / pivot.clone());
                    m.add_row_multiple(i, c, f);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "inverse of a non-square matrix".into(),
            ));
        }
        let mut m = self.clone();
        let mut inv = Self::identity(self.rows);
        if m.reduce(Some(&mut inv)).len() < self.rows {
            return Err(Error::Singular);
        }
        Ok(inv)
    }

    /// Solves `xᵀ · self = target` for a row vector `x`, i.e. expresses
    /// `target` as a combination of the rows of `self`. Returns `None` when
    /// `target` is outside the row span. Rows need not be independent; the
    /// returned combination is then one particular solution.
    pub fn row_combination(&self, target: &[T]) -> Option<Vec<T>> {
        assert_eq!(
            target.len(),
            self.cols,
            "target length does not match matrix"
        );
        // Solve selfᵀ x = target by reducing the augmented system.
        let mut aug = Matrix::from_fn(self.cols, self.rows + 1, |i, j| {
            if j < self.rows {
                self.get(j, i).clone()
            } else {
                target[i].clone()
            }
        });
        let pivots = aug.reduce(None);
        if pivots.last() == Some(&self.rows) {
            return None;
        }
        let mut x = vec![T::zero(); self.rows];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.rows).clone();
        }
        Some(x)
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cols == 0 {
            return f.debug_list().finish();
        }
        f.debug_list().entries(self.data.chunks(self.cols)).finish()
    }
}

impl<T: Clone> TryFrom<Vec<Vec<T>>> for Matrix<T> {
    type Error = Error;

    fn try_from(rows: Vec<Vec<T>>) -> Result<Self> {
        Matrix::from_rows(rows)
    }
}

impl<T: Clone> From<Matrix<T>> for Vec<Vec<T>> {
    fn from(m: Matrix<T>) -> Self {
        m.to_rows()
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }
}
