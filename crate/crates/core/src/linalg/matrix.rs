use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use serde::{Serialize, Serializer};

use super::scalar::{Rational, Scalar};

/// Dense row-major matrix over a [`Scalar`].
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Matrix over exact rationals.
pub type ExactMatrix = Matrix<Rational>;
/// Matrix over 64-bit binary floats.
pub type FloatMatrix = Matrix<f64>;

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
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

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        Self {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix from column vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        assert!(
            columns.iter().all(|c| c.len() == rows),
            "column length mismatch"
        );
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(
            data.len(),
            rows * cols,
            "entry count must equal rows * cols"
        );
        Self { rows, cols, data }
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in add");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.add(b))
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in sub");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.sub(b))
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        let data = self.data.iter().map(|a| a.mul(s)).collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.cols,
            rhs.rows,
            "inner dimensions differ: {:?} x {:?}",
            self.shape(),
            rhs.shape()
        );
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let cur = &out.data[i * rhs.cols + j];
                        out.data[i * rhs.cols + j] = cur.add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    /// `D * self` for a diagonal `D` given by its entries.
    pub fn scale_rows(&self, diag: &[T]) -> Self {
        assert_eq!(diag.len(), self.rows);
        Self::from_fn(self.rows, self.cols, |i, j| diag[i].mul(&self[(i, j)]))
    }

    /// `self * D` for a diagonal `D` given by its entries.
    pub fn scale_cols(&self, diag: &[T]) -> Self {
        assert_eq!(diag.len(), self.cols);
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].mul(&diag[j]))
    }

    /// Principal or general submatrix picked by index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows[i], cols[j])].clone()
        })
    }

    pub fn block(
        &self,
        row_range: std::ops::Range<usize>,
        col_range: std::ops::Range<usize>,
    ) -> Self {
        let rows: Vec<usize> = row_range.collect();
        let cols: Vec<usize> = col_range.collect();
        self.select(&rows, &cols)
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows, "row counts differ in hstack");
        Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols, "column counts differ in vstack");
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Self {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    /// Places `inner` in the top-left corner of an `rows x cols` zero matrix.
    pub fn pad(&self, rows: usize, cols: usize) -> Self {
        assert!(rows >= self.rows && cols >= self.cols);
        Self::from_fn(rows, cols, |i, j| {
            if i < self.rows && j < self.cols {
                self[(i, j)].clone()
            } else {
                T::zero()
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        (0..self.rows).fold(T::zero(), |acc, i| acc.add(&self[(i, i)]))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_float(&self) -> FloatMatrix {
        self.map(Scalar::to_f64)
    }

    /// Largest absolute entry, as a float.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::abs_f64).fold(0.0, f64::max)
    }
}

impl FloatMatrix {
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub(crate) fn to_nalgebra(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub(crate) fn from_nalgebra(m: &nalgebra::DMatrix<f64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: Self) -> Matrix<T> {
        self.matmul(rhs)
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "[]({}x{})", self.rows, self.cols);
        }
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl ExactMatrix {
    /// Row-major nested `"p/q"` strings (integers print without a denominator).
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect()
    }

    /// Parses row-major nested rational strings.
    pub fn from_string_rows(rows: &[Vec<String>]) -> Option<Self> {
        let parsed: Option<Vec<Vec<Rational>>> = rows
            .iter()
            .map(|r| r.iter().map(|s| super::scalar::parse_rational(s)).collect())
            .collect();
        let parsed = parsed?;
        let cols = parsed.first().map_or(0, Vec::len);
        if parsed.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(Self::from_rows(parsed))
    }
}

/// Exact matrices serialize as row-major nested `"p/q"` strings.
impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_string_rows().serialize(serializer)
    }
}

/// Float matrices serialize as row-major nested numbers.
impl Serialize for FloatMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

/// Shorthand for building exact matrices from `(numer, denom)` literals in tests
/// and fixtures.
pub fn exact_from_ratios(rows: &[&[(i64, i64)]]) -> ExactMatrix {
    ExactMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&(n, d)| super::scalar::ratio(n, d)).collect())
            .collect(),
    )
}

/// Shorthand for exact matrices with integer entries.
pub fn exact_from_ints(rows: &[&[i64]]) -> ExactMatrix {
    ExactMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| Rational::from_i64(v)).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::ratio;

    #[test]
    fn matmul_and_transpose() {
        let a = exact_from_ints(&[&[1, 2, 3], &[4, 5, 6]]);
        let b = a.transpose();
        let c = &a * &b;
        assert_eq!(c, exact_from_ints(&[&[14, 32], &[32, 77]]));
        assert!(c.is_symmetric());
        assert_eq!(c.trace(), ratio(91, 1));
    }

    #[test]
    fn empty_shapes_multiply() {
        let a = ExactMatrix::zeros(3, 0);
        let b = ExactMatrix::zeros(0, 2);
        assert_eq!(&a * &b, ExactMatrix::zeros(3, 2));
        let c = ExactMatrix::zeros(0, 3);
        assert_eq!((&c * &a).shape(), (0, 0));
    }

    #[test]
    fn string_rows_roundtrip() {
        let m = exact_from_ratios(&[&[(7, 2), (0, 1)], &[(-1, 3), (4, 1)]]);
        let s = m.to_string_rows();
        assert_eq!(
            s,
            vec![
                vec!["7/2".to_string(), "0".into()],
                vec!["-1/3".into(), "4".into()]
            ]
        );
        assert_eq!(ExactMatrix::from_string_rows(&s), Some(m));
    }

    #[test]
    fn blocks_and_stacking() {
        let m = exact_from_ints(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(m.block(1..3, 0..2), exact_from_ints(&[&[4, 5], &[7, 8]]));
        let top = m.block(0..1, 0..3);
        let rest = m.block(1..3, 0..3);
        assert_eq!(top.vstack(&rest), m);
        assert_eq!(m.block(0..3, 0..1).hstack(&m.block(0..3, 1..3)), m);
        assert_eq!(
            top.pad(2, 4).row(1),
            &[ratio(0, 1), ratio(0, 1), ratio(0, 1), ratio(0, 1)]
        );
    }
}
