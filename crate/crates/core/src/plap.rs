//! Matrix representations of the persistent Laplacian of a weight-preserving
//! simplicial map `f: K -> L`, in the canonical basis of `Im(f_q)`.
//!
//! The down part is the Schur restriction of `Δ_{q,down}^K` to the orthogonal
//! complement of `ker f_q`, transported to `Im(f_q)`. The up part is the Schur
//! restriction of `Δ_{q,up}^L` to `f_q(ker ∂_q^K)`, zero-padded to `Im(f_q)`.
//! Both are computed exactly; only spectra go through floats.

use serde::{Serialize, Serializer};

use crate::chains::{
    basis_decomposition, combinatorial_laplacian, reciprocals, BasisDecomposition, LaplacianKind,
};
use crate::complex::{SimplicialComplex, SimplicialMap};
use crate::error::Result;
use crate::linalg::float::cholesky;
use crate::linalg::{
    schur_complement, symmetric_spectrum, weighted_complement_basis, ExactMatrix, FloatMatrix,
    LinalgError, Rational, Scalar, Spectrum,
};

/// Largest tolerated asymmetry of a symmetrized float matrix, relative to
/// its largest entry.
pub const SYMMETRY_TOL: f64 = 1e-9;

fn serialize_rationals<S: Serializer>(
    values: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .serialize(s)
}

/// Down part with its intermediates: `N = M⁻¹ [Δ_{q,down}^K] M` split as
/// `[[X, Y], [Z, T]]` with `X` of size `n = dim Im(f_q)`.
#[derive(Clone, Debug, Serialize)]
pub struct DownPart {
    #[serde(rename = "N")]
    pub n_matrix: ExactMatrix,
    #[serde(rename = "X")]
    pub x: ExactMatrix,
    #[serde(rename = "Y")]
    pub y: ExactMatrix,
    #[serde(rename = "Z")]
    pub z: ExactMatrix,
    #[serde(rename = "T")]
    pub t: ExactMatrix,
    /// `W_Im (X - Y T† Z) W_Im⁻¹`.
    pub matrix: ExactMatrix,
}

/// Up part with its intermediates. `R1` spans `f_q(ker ∂_q^K)` and `R2` its
/// weighted complement in `Im(f_q)`; `Q` is `[Δ_{q,up}^L]` in the basis
/// `R1 ∪ R2 ∪ 𝒟` of `C_q^L`, split as `[[E, F], [G, H]]` with `E` of size `n_p`.
#[derive(Clone, Debug, Serialize)]
pub struct UpPart {
    #[serde(rename = "R1")]
    pub r1: ExactMatrix,
    #[serde(rename = "R2")]
    pub r2: ExactMatrix,
    #[serde(rename = "Q")]
    pub q_matrix: ExactMatrix,
    #[serde(rename = "E")]
    pub e: ExactMatrix,
    #[serde(rename = "F")]
    pub f: ExactMatrix,
    #[serde(rename = "G")]
    pub g: ExactMatrix,
    #[serde(rename = "H")]
    pub h: ExactMatrix,
    /// `E - F H† G`, the essential block.
    #[serde(rename = "SchQ")]
    pub sch_q: ExactMatrix,
    /// `R · pad(SchQ) · R⁻¹` with `R = (R1 R2)`.
    pub matrix: ExactMatrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct LaplacianReport {
    pub q: usize,
    /// Labels of the hit simplices `τ_1..τ_n`, the basis of every matrix.
    pub basis: Vec<String>,
    #[serde(serialize_with = "serialize_rationals")]
    pub weights: Vec<Rational>,
    pub n: usize,
    pub n_p: usize,
    pub down: DownPart,
    pub up: UpPart,
    pub full: ExactMatrix,
    pub nullity: usize,
}

impl LaplacianReport {
    pub fn matrix(&self, kind: LaplacianKind) -> &ExactMatrix {
        match kind {
            LaplacianKind::Up => &self.up.matrix,
            LaplacianKind::Down => &self.down.matrix,
            LaplacianKind::Full => &self.full,
        }
    }

    pub fn spectrum(&self, kind: SpectrumKind) -> Result<Spectrum> {
        match kind {
            SpectrumKind::Up => weighted_spectrum(&self.up.matrix, &self.weights),
            SpectrumKind::Down => weighted_spectrum(&self.down.matrix, &self.weights),
            SpectrumKind::Full => weighted_spectrum(&self.full, &self.weights),
            SpectrumKind::EssentialUp => {
                let gram =
                    &self.up.r1.transpose() * &self.up.r1.scale_rows(&reciprocals(&self.weights));
                gram_spectrum(&self.up.sch_q, &gram)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumKind {
    Up,
    Down,
    Full,
    EssentialUp,
}

impl From<LaplacianKind> for SpectrumKind {
    fn from(kind: LaplacianKind) -> Self {
        match kind {
            LaplacianKind::Up => SpectrumKind::Up,
            LaplacianKind::Down => SpectrumKind::Down,
            LaplacianKind::Full => SpectrumKind::Full,
        }
    }
}

fn down_from_decomposition(k: &SimplicialComplex, d: &BasisDecomposition) -> Result<DownPart> {
    let (n, total) = (d.n(), d.m.rows());
    let laplacian = combinatorial_laplacian(k, d.q, LaplacianKind::Down);
    let n_matrix = &(&d.m.inverse()? * &laplacian) * &d.m;
    let sch = schur_complement(&n_matrix, total - n)?;
    let matrix = sch
        .scale_rows(&d.image_weights)
        .scale_cols(&reciprocals(&d.image_weights));
    Ok(DownPart {
        x: n_matrix.block(0..n, 0..n),
        y: n_matrix.block(0..n, n..total),
        z: n_matrix.block(n..total, 0..n),
        t: n_matrix.block(n..total, n..total),
        n_matrix,
        matrix,
    })
}

fn up_from_decomposition(
    l: &SimplicialComplex,
    d: &BasisDecomposition,
    down: &ExactMatrix,
    r2_mix: Option<&ExactMatrix>,
) -> Result<UpPart> {
    let (q, n, n_l) = (d.q, d.n(), l.n_simplices(d.q));
    // The kernel of the down part is f_q(ker ∂_q^K), so no boundary kernel is needed.
    let r1 = down.kernel_basis();
    let n_p = r1.cols();
    let mut r2 = weighted_complement_basis(&r1, &d.image_weights)?;
    if let Some(mix) = r2_mix {
        if mix.shape() != (r2.cols(), r2.cols()) || mix.rank() != r2.cols() {
            return Err(LinalgError::DimensionMismatch(format!(
                "complement change of basis must be an invertible {0}x{0} matrix",
                r2.cols()
            ))
            .into());
        }
        r2 = &r2 * mix;
    }
    let r = r1.hstack(&r2);

    let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(n_l);
    for j in 0..n {
        let mut c = vec![Rational::zero(); n_l];
        for (i, &t) in d.hit.iter().enumerate() {
            c[t] = r[(i, j)].clone();
        }
        columns.push(c);
    }
    let mut is_hit = vec![false; n_l];
    for &t in &d.hit {
        is_hit[t] = true;
    }
    for t in (0..n_l).filter(|&t| !is_hit[t]) {
        let mut c = vec![Rational::zero(); n_l];
        c[t] = Rational::one();
        columns.push(c);
    }
    let basis = ExactMatrix::from_columns(n_l, &columns);
    let laplacian = combinatorial_laplacian(l, q, LaplacianKind::Up);
    let q_matrix = &(&basis.inverse()? * &laplacian) * &basis;
    let sch_q = schur_complement(&q_matrix, n_l - n_p)?;
    let matrix = &(&r * &sch_q.pad(n, n)) * &r.inverse()?;
    Ok(UpPart {
        e: q_matrix.block(0..n_p, 0..n_p),
        f: q_matrix.block(0..n_p, n_p..n_l),
        g: q_matrix.block(n_p..n_l, 0..n_p),
        h: q_matrix.block(n_p..n_l, n_p..n_l),
        r1,
        r2,
        q_matrix,
        sch_q,
        matrix,
    })
}

/// Requires `f` to be weight preserving in dimension `q`.
pub fn down_persistent_laplacian(f: &SimplicialMap, q: usize) -> Result<DownPart> {
    let d = basis_decomposition(f, q)?;
    down_from_decomposition(f.domain(), &d)
}

/// Requires `f` to be weight preserving in dimension `q`.
pub fn up_persistent_laplacian(f: &SimplicialMap, q: usize) -> Result<UpPart> {
    let d = basis_decomposition(f, q)?;
    let down = down_from_decomposition(f.domain(), &d)?;
    up_from_decomposition(f.codomain(), &d, &down.matrix, None)
}

/// The up part computed with the complement basis `R2 · mix` in place of
/// `R2`, for an invertible `mix`. The result must not depend on `mix`.
pub fn up_persistent_laplacian_with_complement(
    f: &SimplicialMap,
    q: usize,
    mix: &ExactMatrix,
) -> Result<UpPart> {
    let d = basis_decomposition(f, q)?;
    let down = down_from_decomposition(f.domain(), &d)?;
    up_from_decomposition(f.codomain(), &d, &down.matrix, Some(mix))
}

/// Every matrix of the computation for one dimension.
pub fn laplacian_report(f: &SimplicialMap, q: usize) -> Result<LaplacianReport> {
    let d = basis_decomposition(f, q)?;
    let down = down_from_decomposition(f.domain(), &d)?;
    let up = up_from_decomposition(f.codomain(), &d, &down.matrix, None)?;
    let full = down.matrix.add(&up.matrix);
    let nullity = full.nullity();
    let l = f.codomain();
    Ok(LaplacianReport {
        q,
        basis: d
            .hit
            .iter()
            .map(|&t| l.simplex_label(&l.simplices(q)[t]))
            .collect(),
        weights: d.image_weights.clone(),
        n: d.n(),
        n_p: up.r1.cols(),
        down,
        up,
        full,
        nullity,
    })
}

pub fn persistent_laplacian(f: &SimplicialMap, q: usize) -> Result<ExactMatrix> {
    Ok(laplacian_report(f, q)?.full)
}

/// The persistent Betti number as the exact nullity of the persistent Laplacian.
/// Zero when `Im(f_q)` is trivial.
pub fn persistent_betti(f: &SimplicialMap, q: usize) -> Result<usize> {
    Ok(laplacian_report(f, q)?.nullity)
}

/// The `n_p x n_p` block `SchQ`, in the basis `R1` of `f_q(ker ∂_q^K)`.
pub fn essential_up_laplacian(f: &SimplicialMap, q: usize) -> Result<ExactMatrix> {
    Ok(up_persistent_laplacian(f, q)?.sch_q)
}

/// Schur restriction of `Δ_{q,up}^L` to the span of the independent columns
/// of `basis ⊆ C_q^L`, as a matrix in that basis. Needs no weight-preserving
/// map, only the subspace.
pub fn essential_up_on_subspace(
    l: &SimplicialComplex,
    q: usize,
    basis: &ExactMatrix,
) -> Result<ExactMatrix> {
    let complement = weighted_complement_basis(basis, l.weights(q))?;
    let full_basis = basis.hstack(&complement);
    let laplacian = combinatorial_laplacian(l, q, LaplacianKind::Up);
    let in_basis = &(&full_basis.inverse()? * &laplacian) * &full_basis;
    Ok(schur_complement(&in_basis, complement.cols())?)
}

/// Spectrum of one of the persistent operators of `f` in dimension `q`.
pub fn spectrum(f: &SimplicialMap, q: usize, kind: SpectrumKind) -> Result<Spectrum> {
    laplacian_report(f, q)?.spectrum(kind)
}

/// `W^{-1/2} A W^{1/2}` in floats: `S_ij = A_ij sqrt(w_j / w_i)`.
pub fn symmetrize(a: &ExactMatrix, weights: &[Rational]) -> FloatMatrix {
    let w: Vec<f64> = weights.iter().map(Scalar::to_f64).collect();
    FloatMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        a[(i, j)].to_f64() * (w[j] / w[i]).sqrt()
    })
}

/// Exact self-adjointness for the inner product `⟨e_i, e_i⟩ = 1 / w_i`:
/// `W⁻¹ A` is symmetric.
pub fn is_self_adjoint(a: &ExactMatrix, weights: &[Rational]) -> bool {
    a.scale_rows(&reciprocals(weights)).is_symmetric()
}

fn symmetry_tol(s: &FloatMatrix) -> f64 {
    SYMMETRY_TOL * s.max_abs().max(1.0)
}

/// Eigenvalues of an operator self-adjoint for the inner product with
/// diagonal weights `1 / w_i`.
pub fn weighted_spectrum(a: &ExactMatrix, weights: &[Rational]) -> Result<Spectrum> {
    let s = symmetrize(a, weights);
    Ok(symmetric_spectrum(&s, symmetry_tol(&s))?)
}

/// Eigenvalues of an operator `a` self-adjoint for the positive definite
/// Gram matrix `gram`: with `gram = L Lᵀ`, `Lᵀ a L⁻ᵀ` is symmetric.
pub fn gram_spectrum(a: &ExactMatrix, gram: &ExactMatrix) -> Result<Spectrum> {
    if a.rows() == 0 {
        return Ok(Spectrum::default());
    }
    let l = cholesky(&gram.to_float())?;
    let l_inv_t = crate::linalg::float::inverse(&l)?.transpose();
    let s = &(&l.transpose() * &a.to_float()) * &l_inv_t;
    Ok(symmetric_spectrum(&s, symmetry_tol(&s))?)
}
