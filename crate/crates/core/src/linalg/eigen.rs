use serde::{Deserialize, Serialize};

use super::matrix::FloatMatrix;
use super::LinalgError;

/// Convergence target for the off-diagonal Frobenius norm, relative to `‖S‖_F`.
pub const JACOBI_RELATIVE_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Real eigenvalues in ascending order, with multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn min(&self) -> Option<f64> {
        self.eigenvalues.first().copied()
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn product(&self) -> f64 {
        self.eigenvalues.iter().product()
    }

    /// Number of eigenvalues with absolute value at most `tol`.
    pub fn zero_count(&self, tol: f64) -> usize {
        self.eigenvalues.iter().filter(|v| v.abs() <= tol).count()
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i * n + j] * a[i * n + j];
            }
        }
    }
    sum.sqrt()
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
///
/// Inputs whose largest asymmetry `|S_ij - S_ji|` exceeds `tol` are rejected;
/// smaller asymmetries are averaged away before iterating.
pub fn symmetric_spectrum(s: &FloatMatrix, tol: f64) -> Result<Spectrum, LinalgError> {
    if !s.is_square() {
        return Err(LinalgError::NotSquare {
            rows: s.rows(),
            cols: s.cols(),
        });
    }
    if !s.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    let n = s.rows();
    let mut asymmetry: f64 = 0.0;
    for i in 0..n {
        for j in 0..i {
            asymmetry = asymmetry.max((s[(i, j)] - s[(j, i)]).abs());
        }
    }
    if asymmetry > tol {
        return Err(LinalgError::Asymmetric {
            deviation: asymmetry,
        });
    }
    let mut a: Vec<f64> = (0..n * n)
        .map(|k| 0.5 * (s[(k / n, k % n)] + s[(k % n, k / n)]))
        .collect();
    let target = JACOBI_RELATIVE_TOL * s.frobenius_norm();

    let mut sweeps = 0;
    while off_diagonal_norm(&a, n) > target {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(LinalgError::NotConverged { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - sn * akq;
                    a[k * n + q] = sn * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - sn * aqk;
                    a[q * n + k] = sn * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }

    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eigenvalues.sort_by(f64::total_cmp);
    Ok(Spectrum { eigenvalues })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fm(rows: &[&[f64]]) -> FloatMatrix {
        FloatMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn diagonal_input_is_sorted() {
        let spec = symmetric_spectrum(&fm(&[&[2.0, 0.0], &[0.0, 1.0]]), 1e-12).unwrap();
        assert_eq!(spec.eigenvalues, vec![1.0, 2.0]);
    }

    #[test]
    fn zero_matrix() {
        let spec = symmetric_spectrum(&FloatMatrix::zeros(4, 4), 1e-12).unwrap();
        assert_eq!(spec.eigenvalues, vec![0.0; 4]);
        assert!(symmetric_spectrum(&FloatMatrix::zeros(0, 0), 1e-12)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn path_graph_laplacian() {
        // Eigenvalues of the path P3 Laplacian are 0, 1, 3.
        let l = fm(&[&[1.0, -1.0, 0.0], &[-1.0, 2.0, -1.0], &[0.0, -1.0, 1.0]]);
        let spec = symmetric_spectrum(&l, 1e-12).unwrap();
        for (got, want) in spec.eigenvalues.iter().zip([0.0, 1.0, 3.0]) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn rejects_asymmetric() {
        let err = symmetric_spectrum(&fm(&[&[1.0, 2.0], &[0.0, 1.0]]), 1e-9).unwrap_err();
        assert!(matches!(err, LinalgError::Asymmetric { .. }));
    }

    #[test]
    fn matches_nalgebra_on_dense_input() {
        let n = 7;
        let m = FloatMatrix::from_fn(n, n, |i, j| {
            ((i * 7 + j * 3) % 5) as f64 - 2.0 + if i == j { 4.0 } else { 0.0 }
        });
        let s = m.add(&m.transpose());
        let ours = symmetric_spectrum(&s, 1e-12).unwrap();
        let mut theirs: Vec<f64> = s
            .to_nalgebra()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        theirs.sort_by(f64::total_cmp);
        for (a, b) in ours.eigenvalues.iter().zip(&theirs) {
            assert!((a - b).abs() < 1e-9 * (1.0 + b.abs()));
        }
    }
}
