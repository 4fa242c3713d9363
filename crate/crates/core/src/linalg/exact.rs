//! Exact backend: Gauss–Jordan elimination over arbitrary-precision rationals.
//!
//! Every routine here is exact, so ranks, nullities and pseudoinverses are
//! authoritative.

use super::matrix::ExactMatrix;
use super::scalar::{Rational, Scalar};
use super::LinalgError;

/// Reduced row echelon form together with the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    pub reduced: ExactMatrix,
    pub pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn row_reduce(a: &ExactMatrix) -> RowEchelon {
    let (rows, cols) = a.shape();
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = m[(p, j)].clone();
                m[(p, j)] = m[(r, j)].clone();
                m[(r, j)] = tmp;
            }
        }
        let inv = Rational::one().div(&m[(r, c)]);
        for j in c..cols {
            m[(r, j)] = m[(r, j)].mul(&inv);
        }
        for i in 0..rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let factor = m[(i, c)].clone();
            for j in c..cols {
                if m[(r, j)].is_zero() {
                    continue;
                }
                let delta = factor.mul(&m[(r, j)]);
                m[(i, j)] = m[(i, j)].sub(&delta);
            }
        }
        pivots.push(c);
        r += 1;
    }
    RowEchelon { reduced: m, pivots }
}

pub fn rank(a: &ExactMatrix) -> usize {
    row_reduce(a).rank()
}

/// Columns spanning `ker(a)`, one per free column of the echelon form.
pub fn kernel_basis(a: &ExactMatrix) -> ExactMatrix {
    let cols = a.cols();
    let echelon = row_reduce(a);
    let free: Vec<usize> = (0..cols).filter(|c| !echelon.pivots.contains(c)).collect();
    let mut basis = ExactMatrix::zeros(cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis[(f, k)] = Rational::one();
        for (row, &p) in echelon.pivots.iter().enumerate() {
            basis[(p, k)] = echelon.reduced[(row, f)].neg();
        }
    }
    basis
}

/// Indices of a maximal independent subset of columns (the pivot columns).
pub fn independent_columns(a: &ExactMatrix) -> Vec<usize> {
    row_reduce(a).pivots
}

pub fn inverse(a: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let augmented = a.hstack(&ExactMatrix::identity(n));
    let echelon = row_reduce(&augmented);
    if echelon.pivots.iter().take_while(|&&p| p < n).count() < n {
        return Err(LinalgError::Singular);
    }
    Ok(echelon.reduced.block(0..n, n..2 * n))
}

/// Determinant by elimination with row swaps.
pub fn determinant(a: &ExactMatrix) -> Result<Rational, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != c {
            for j in 0..n {
                let tmp = m[(p, j)].clone();
                m[(p, j)] = m[(c, j)].clone();
                m[(c, j)] = tmp;
            }
            det = det.neg();
        }
        let pivot = m[(c, c)].clone();
        det = det.mul(&pivot);
        for i in c + 1..n {
            if m[(i, c)].is_zero() {
                continue;
            }
            let factor = m[(i, c)].div(&pivot);
            for j in c..n {
                let delta = factor.mul(&m[(c, j)]);
                m[(i, j)] = m[(i, j)].sub(&delta);
            }
        }
    }
    Ok(det)
}

/// Moore–Penrose pseudoinverse via a full-rank factorization `A = F G`:
/// `A† = Gᵀ (G Gᵀ)⁻¹ (Fᵀ F)⁻¹ Fᵀ`.
pub fn pseudoinverse(a: &ExactMatrix) -> ExactMatrix {
    let echelon = row_reduce(a);
    let r = echelon.rank();
    if r == 0 {
        return ExactMatrix::zeros(a.cols(), a.rows());
    }
    let g = echelon.reduced.block(0..r, 0..a.cols());
    let f = a.select_columns(&echelon.pivots);
    let gt = g.transpose();
    let ft = f.transpose();
    // Both Gram matrices are r x r and invertible because F and G have full rank r.
    let ggt_inv = inverse(&(&g * &gt)).expect("G has full row rank");
    let ftf_inv = inverse(&(&ft * &f)).expect("F has full column rank");
    &(&(&gt * &ggt_inv) * &ftf_inv) * &ft
}

/// Solves `a x = b` for `x` when `a` has full column rank and `b` lies in the
/// column space of `a`. Returns `None` otherwise.
pub fn solve_in_span(a: &ExactMatrix, b: &ExactMatrix) -> Option<ExactMatrix> {
    if a.cols() == 0 {
        return b.is_zero().then(|| ExactMatrix::zeros(0, b.cols()));
    }
    let at = a.transpose();
    let gram_inv = inverse(&(&at * a)).ok()?;
    let x = &gram_inv * &(&at * b);
    (&(a * &x) == b).then_some(x)
}

/// Exact positive semi-definiteness test for a symmetric rational matrix,
/// by symmetric elimination on positive diagonal pivots.
pub fn is_psd(a: &ExactMatrix) -> bool {
    if !a.is_symmetric() {
        return false;
    }
    let mut m = a.clone();
    let mut active: Vec<usize> = (0..m.rows()).collect();
    loop {
        if active.iter().any(|&i| m[(i, i)] < Rational::zero()) {
            return false;
        }
        // A zero diagonal entry forces its whole row to vanish.
        for &i in &active {
            if m[(i, i)].is_zero() && active.iter().any(|&j| !m[(i, j)].is_zero()) {
                return false;
            }
        }
        let Some(pos) = active.iter().position(|&i| !m[(i, i)].is_zero()) else {
            return true;
        };
        let k = active.remove(pos);
        let pivot = m[(k, k)].clone();
        for &i in &active {
            if m[(i, k)].is_zero() {
                continue;
            }
            let factor = m[(i, k)].div(&pivot);
            for &j in &active {
                let delta = factor.mul(&m[(k, j)]);
                m[(i, j)] = m[(i, j)].sub(&delta);
            }
        }
    }
}
