//! Dense linear algebra over two backends: exact rationals ([`ExactMatrix`])
//! and binary floats ([`FloatMatrix`]).
//!
//! Both backends share the [`Field`] surface (rank, kernel, inverse,
//! pseudoinverse), so [`schur_complement`] and friends are written once.

pub mod eigen;
pub mod exact;
pub mod float;
pub mod matrix;
pub mod scalar;
pub mod verify;

use thiserror::Error;

pub use eigen::{symmetric_spectrum, Spectrum};
pub use matrix::{exact_from_ints, exact_from_ratios, ExactMatrix, FloatMatrix, Matrix};
pub use scalar::{parse_rational, ratio, Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix is not square: {rows} x {cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("matrix is not symmetric (max deviation {deviation:e})")]
    Asymmetric { deviation: f64 },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NotConverged { sweeps: usize },
    #[error("matrix contains NaN or infinite entries")]
    NonFinite,
    #[error("columns are linearly dependent")]
    DependentColumns,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Backend-specific decompositions.
pub trait Field: Scalar {
    fn rank(a: &Matrix<Self>) -> usize;
    fn kernel_basis(a: &Matrix<Self>) -> Matrix<Self>;
    fn inverse(a: &Matrix<Self>) -> Result<Matrix<Self>, LinalgError>;
    fn pseudoinverse(a: &Matrix<Self>) -> Matrix<Self>;
}

impl Field for Rational {
    fn rank(a: &ExactMatrix) -> usize {
        exact::rank(a)
    }
    fn kernel_basis(a: &ExactMatrix) -> ExactMatrix {
        exact::kernel_basis(a)
    }
    fn inverse(a: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        exact::inverse(a)
    }
    fn pseudoinverse(a: &ExactMatrix) -> ExactMatrix {
        exact::pseudoinverse(a)
    }
}

impl Field for f64 {
    fn rank(a: &FloatMatrix) -> usize {
        float::rank(a)
    }
    fn kernel_basis(a: &FloatMatrix) -> FloatMatrix {
        float::kernel_basis(a)
    }
    fn inverse(a: &FloatMatrix) -> Result<FloatMatrix, LinalgError> {
        float::inverse(a)
    }
    fn pseudoinverse(a: &FloatMatrix) -> FloatMatrix {
        float::pseudoinverse(a)
    }
}

impl<T: Field> Matrix<T> {
    pub fn rank(&self) -> usize {
        T::rank(self)
    }

    pub fn nullity(&self) -> usize {
        self.cols() - self.rank()
    }

    /// Columns spanning the kernel.
    pub fn kernel_basis(&self) -> Self {
        T::kernel_basis(self)
    }

    pub fn inverse(&self) -> Result<Self, LinalgError> {
        T::inverse(self)
    }

    pub fn pseudoinverse(&self) -> Self {
        T::pseudoinverse(self)
    }
}

/// Generalized Schur complement `A - B D† C` of the trailing `d x d` block
/// `D` of a square matrix `M = [[A, B], [C, D]]`.
pub fn schur_complement<T: Field>(m: &Matrix<T>, d: usize) -> Result<Matrix<T>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if d > n {
        return Err(LinalgError::DimensionMismatch(format!(
            "trailing block {d} exceeds matrix size {n}"
        )));
    }
    let k = n - d;
    let a = m.block(0..k, 0..k);
    if d == 0 {
        return Ok(a);
    }
    let b = m.block(0..k, k..n);
    let c = m.block(k..n, 0..k);
    let dd = m.block(k..n, k..n);
    Ok(a.sub(&(&(&b * &dd.pseudoinverse()) * &c)))
}

/// Weighted inner product `⟨x, y⟩ = Σ x_i y_i / w_i`.
pub fn weighted_inner(x: &[Rational], y: &[Rational], weights: &[Rational]) -> Rational {
    x.iter()
        .zip(y)
        .zip(weights)
        .fold(Rational::zero(), |acc, ((a, b), w)| {
            if a.is_zero() || b.is_zero() {
                acc
            } else {
                acc.add(&a.mul(b).div(w))
            }
        })
}

/// Columns spanning the orthogonal complement of `span(v)` under the inner
/// product `⟨e_i, e_j⟩ = δ_ij / w_i`.
///
/// Gram–Schmidt over the canonical basis in index order, exact and
/// unnormalized, so the result is deterministic. Errors if the columns of `v`
/// are dependent.
pub fn weighted_complement_basis(
    v: &ExactMatrix,
    weights: &[Rational],
) -> Result<ExactMatrix, LinalgError> {
    let n = v.rows();
    if weights.len() != n {
        return Err(LinalgError::DimensionMismatch(format!(
            "{} weights for ambient dimension {n}",
            weights.len()
        )));
    }
    let mut orthogonal: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let push_reduced = |candidate: Vec<Rational>,
                        orthogonal: &mut Vec<(Vec<Rational>, Rational)>| {
        let mut x = candidate;
        for (u, uu) in orthogonal.iter() {
            let coeff = weighted_inner(u, &x, weights).div(uu);
            if !coeff.is_zero() {
                for (xi, ui) in x.iter_mut().zip(u) {
                    *xi = xi.sub(&coeff.mul(ui));
                }
            }
        }
        if x.iter().all(Scalar::is_zero) {
            return None;
        }
        let norm = weighted_inner(&x, &x, weights);
        orthogonal.push((x.clone(), norm));
        Some(x)
    };
    for j in 0..v.cols() {
        if push_reduced(v.column(j), &mut orthogonal).is_none() {
            return Err(LinalgError::DependentColumns);
        }
    }
    let mut complement = Vec::new();
    for i in 0..n {
        if orthogonal.len() == n {
            break;
        }
        let mut e = vec![Rational::zero(); n];
        e[i] = Rational::one();
        if let Some(x) = push_reduced(e, &mut orthogonal) {
            complement.push(x);
        }
    }
    Ok(ExactMatrix::from_columns(n, &complement))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn penrose_identities_hold(a: &ExactMatrix, p: &ExactMatrix) -> bool {
        let ap = a * p;
        let pa = p * a;
        &ap * a == *a && &pa * p == *p && ap.is_symmetric() && pa.is_symmetric()
    }

    #[test]
    fn pseudoinverse_identity_and_zero() {
        let i3 = ExactMatrix::identity(3);
        assert_eq!(i3.pseudoinverse(), i3);
        let z = ExactMatrix::zeros(2, 3);
        assert_eq!(z.pseudoinverse(), ExactMatrix::zeros(3, 2));
    }

    #[test]
    fn pseudoinverse_rank_one() {
        // T = u v^T with u = (1, -2), v = (1, -1); T† = v u^T / (|u|^2 |v|^2).
        let t = exact_from_ints(&[&[1, -1], &[-2, 2]]);
        let expected = exact_from_ratios(&[&[(1, 10), (-1, 5)], &[(-1, 10), (1, 5)]]);
        let p = t.pseudoinverse();
        assert_eq!(p, expected);
        assert!(penrose_identities_hold(&t, &p));
    }

    #[test]
    fn schur_complement_examples() {
        let m = exact_from_ints(&[&[2, 1], &[1, 3]]);
        assert_eq!(schur_complement(&m, 0).unwrap(), m);
        assert_eq!(schur_complement(&m, 2).unwrap().shape(), (0, 0));
        assert_eq!(
            schur_complement(&m, 1).unwrap(),
            exact_from_ratios(&[&[(5, 3)]])
        );
        assert!(schur_complement(&m, 3).is_err());
    }

    #[test]
    fn schur_complement_of_down_block_matrix() {
        // Change-of-basis representation of a 1-dimensional down Laplacian with
        // a rank-deficient trailing block.
        let n = exact_from_ratios(&[
            &[(3, 1), (-1, 2), (1, 1), (0, 1), (0, 1)],
            &[(-1, 1), (2, 1), (1, 1), (-1, 1), (1, 1)],
            &[(2, 1), (1, 1), (2, 1), (0, 1), (0, 1)],
            &[(0, 1), (-1, 2), (0, 1), (1, 1), (-1, 1)],
            &[(0, 1), (1, 1), (0, 1), (-2, 1), (2, 1)],
        ]);
        let expected = exact_from_ratios(&[
            &[(3, 1), (-1, 2), (1, 1)],
            &[(-1, 1), (3, 2), (1, 1)],
            &[(2, 1), (1, 1), (2, 1)],
        ]);
        assert_eq!(schur_complement(&n, 2).unwrap(), expected);
    }

    #[test]
    fn kernel_of_example_down_matrix() {
        let d = exact_from_ratios(&[
            &[(3, 1), (-1, 1), (2, 1)],
            &[(-1, 2), (3, 2), (1, 1)],
            &[(1, 1), (1, 1), (2, 1)],
        ]);
        let k = d.kernel_basis();
        assert_eq!(k.shape(), (3, 1));
        assert!((&d * &k).is_zero());
        // Proportional to (1, 1, -1).
        let v = exact_from_ints(&[&[1], &[1], &[-1]]);
        assert_eq!(v.hstack(&k).rank(), 1);
    }

    #[test]
    fn weighted_complement_predicate() {
        let w = vec![ratio(2, 1), ratio(1, 1), ratio(1, 1)];
        let v = exact_from_ints(&[&[1], &[1], &[-1]]);
        let c = weighted_complement_basis(&v, &w).unwrap();
        assert_eq!(c.cols(), 2);
        for j in 0..c.cols() {
            assert!(weighted_inner(&v.column(0), &c.column(j), &w).is_zero());
        }
        assert_eq!(v.hstack(&c).rank(), 3);
        // The hand-picked complement {(2,-1,0), (0,1,1)} satisfies the same predicate.
        let alt = exact_from_ints(&[&[2, 0], &[-1, 1], &[0, 1]]);
        for j in 0..2 {
            assert!(weighted_inner(&v.column(0), &alt.column(j), &w).is_zero());
        }
    }

    #[test]
    fn weighted_complement_edge_cases() {
        let w = vec![ratio(1, 1), ratio(3, 1)];
        assert_eq!(
            weighted_complement_basis(&ExactMatrix::identity(2), &w)
                .unwrap()
                .shape(),
            (2, 0)
        );
        let full = weighted_complement_basis(&ExactMatrix::zeros(2, 0), &w).unwrap();
        assert_eq!(full, ExactMatrix::identity(2));
        let dependent = exact_from_ints(&[&[1, 2], &[1, 2]]);
        assert_eq!(
            weighted_complement_basis(&dependent, &w),
            Err(LinalgError::DependentColumns)
        );
    }
}
