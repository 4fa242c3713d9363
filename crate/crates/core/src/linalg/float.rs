//! Float backend. Ranks, kernels and pseudoinverses come from a singular value
//! decomposition with a relative threshold; only spectra should rely on it.

use nalgebra::DMatrix;

use super::matrix::FloatMatrix;
use super::LinalgError;

/// Default singular-value cutoff: `max(rows, cols) * eps * sigma_max`.
pub fn default_threshold(a: &FloatMatrix, sigma_max: f64) -> f64 {
    a.rows().max(a.cols()) as f64 * f64::EPSILON * sigma_max
}

fn singular_values(a: &FloatMatrix) -> Vec<f64> {
    if a.is_empty() {
        return Vec::new();
    }
    a.to_nalgebra().singular_values().iter().copied().collect()
}

/// Numerical rank: the number of singular values above `threshold`, or above
/// [`default_threshold`] when `threshold` is `None`.
pub fn rank_with_threshold(a: &FloatMatrix, threshold: Option<f64>) -> usize {
    let sv = singular_values(a);
    let sigma_max = sv.iter().copied().fold(0.0, f64::max);
    let cutoff = threshold.unwrap_or_else(|| default_threshold(a, sigma_max));
    sv.iter().filter(|&&s| s > cutoff).count()
}

pub fn rank(a: &FloatMatrix) -> usize {
    rank_with_threshold(a, None)
}

/// Orthonormal columns spanning the numerical kernel of `a`.
pub fn kernel_basis(a: &FloatMatrix) -> FloatMatrix {
    let (rows, cols) = a.shape();
    if cols == 0 {
        return FloatMatrix::zeros(0, 0);
    }
    if rows == 0 {
        return FloatMatrix::identity(cols);
    }
    // Pad wide matrices with zero rows so the SVD returns a full V.
    let mut m = a.to_nalgebra();
    if rows < cols {
        m = m.resize_vertically(cols, 0.0);
    }
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cutoff = default_threshold(a, sigma_max);
    let columns: Vec<Vec<f64>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= cutoff)
        .map(|(k, _)| v_t.row(k).iter().copied().collect())
        .collect();
    FloatMatrix::from_columns(cols, &columns)
}

pub fn pseudoinverse_with_threshold(a: &FloatMatrix, threshold: Option<f64>) -> FloatMatrix {
    let (rows, cols) = a.shape();
    if rows == 0 || cols == 0 {
        return FloatMatrix::zeros(cols, rows);
    }
    let svd = a.to_nalgebra().svd(true, true);
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    if sigma_max == 0.0 {
        return FloatMatrix::zeros(cols, rows);
    }
    let cutoff = threshold.unwrap_or_else(|| default_threshold(a, sigma_max));
    let u = svd.u.as_ref().expect("requested U");
    let v_t = svd.v_t.as_ref().expect("requested V");
    let k = svd.singular_values.len();
    let mut out = DMatrix::<f64>::zeros(cols, rows);
    for s in 0..k {
        let sigma = svd.singular_values[s];
        if sigma <= cutoff {
            continue;
        }
        let inv = 1.0 / sigma;
        for i in 0..cols {
            for j in 0..rows {
                out[(i, j)] += v_t[(s, i)] * inv * u[(j, s)];
            }
        }
    }
    FloatMatrix::from_nalgebra(&out)
}

pub fn pseudoinverse(a: &FloatMatrix) -> FloatMatrix {
    pseudoinverse_with_threshold(a, None)
}

pub fn inverse(a: &FloatMatrix) -> Result<FloatMatrix, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() == 0 {
        return Ok(FloatMatrix::zeros(0, 0));
    }
    let inv = a.to_nalgebra().try_inverse().ok_or(LinalgError::Singular)?;
    let out = FloatMatrix::from_nalgebra(&inv);
    if out.is_finite() {
        Ok(out)
    } else {
        Err(LinalgError::Singular)
    }
}

/// Lower-triangular `L` with `a = L Lᵀ` for a symmetric positive definite `a`.
pub fn cholesky(a: &FloatMatrix) -> Result<FloatMatrix, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() == 0 {
        return Ok(FloatMatrix::zeros(0, 0));
    }
    let chol = a
        .to_nalgebra()
        .cholesky()
        .ok_or(LinalgError::NotPositiveDefinite)?;
    Ok(FloatMatrix::from_nalgebra(&chol.l()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fm(rows: &[&[f64]]) -> FloatMatrix {
        FloatMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn rank_and_kernel_of_rank_one() {
        let t = fm(&[&[1.0, -1.0], &[-2.0, 2.0]]);
        assert_eq!(rank(&t), 1);
        let k = kernel_basis(&t);
        assert_eq!(k.shape(), (2, 1));
        assert!((k[(0, 0)] - k[(1, 0)]).abs() < 1e-12);
        let wide = fm(&[&[1.0, 1.0, 0.0]]);
        assert_eq!(kernel_basis(&wide).shape(), (3, 2));
    }

    #[test]
    fn pseudoinverse_of_rank_one() {
        let t = fm(&[&[1.0, -1.0], &[-2.0, 2.0]]);
        let p = pseudoinverse(&t);
        let expected = fm(&[&[0.1, -0.2], &[-0.1, 0.2]]);
        assert!(p.sub(&expected).max_abs() < 1e-12);
        assert_eq!(
            pseudoinverse(&FloatMatrix::zeros(2, 3)),
            FloatMatrix::zeros(3, 2)
        );
    }

    #[test]
    fn threshold_override_changes_rank() {
        let a = fm(&[&[1.0, 0.0], &[0.0, 1e-6]]);
        assert_eq!(rank(&a), 2);
        assert_eq!(rank_with_threshold(&a, Some(1e-3)), 1);
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        assert!(cholesky(&fm(&[&[1.0, 2.0], &[2.0, 1.0]])).is_err());
        let l = cholesky(&fm(&[&[4.0, 2.0], &[2.0, 3.0]])).unwrap();
        assert!(
            (&l * &l.transpose())
                .sub(&fm(&[&[4.0, 2.0], &[2.0, 3.0]]))
                .max_abs()
                < 1e-12
        );
    }
}
