//! Independent verifiers written against raw boundary and chain-map matrices.
//!
//! Nothing here goes through the block-Schur computation of [`crate::plap`]:
//! persistent Betti numbers come from ranks of subspaces of cycles and
//! boundaries, and Schur restrictions are built directly as `g_W g_W*` on
//! the preimage `g⁻¹(W)`.

use serde::Serialize;

use crate::chains::{adjoint, boundary_matrix, induced_chain_map, reciprocals};
use crate::complex::SimplicialMap;
use crate::error::Result;
use crate::linalg::exact::{independent_columns, solve_in_span};
use crate::linalg::{ExactMatrix, LinalgError, Rational, Scalar};

/// A subspace given by independent spanning columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis {
    basis: ExactMatrix,
}

impl SubspaceBasis {
    /// The span of the columns of `columns`, keeping an independent subset.
    pub fn span(columns: &ExactMatrix) -> Self {
        SubspaceBasis {
            basis: columns.select_columns(&independent_columns(columns)),
        }
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn sum(&self, other: &Self) -> Self {
        Self::span(&self.basis.hstack(&other.basis))
    }

    /// `dim(A ∩ B) = dim A + dim B - dim(A + B)`.
    pub fn intersection_dim(&self, other: &Self) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    pub fn contains(&self, other: &Self) -> bool {
        self.sum(other).dim() == self.dim()
    }

    /// Equality as subspaces, by mutual containment.
    pub fn same_span(&self, other: &Self) -> bool {
        self.contains(other) && other.contains(self)
    }
}

/// `f_q(ker ∂_q^K)` as a subspace of `C_q^L`.
pub fn image_of_cycles(f: &SimplicialMap, q: usize) -> SubspaceBasis {
    let cycles = boundary_matrix(f.domain(), q).kernel_basis();
    SubspaceBasis::span(&(&induced_chain_map(f, q).matrix * &cycles))
}

/// `rank(H_q(K) -> H_q(L)) = dim f_q(ker ∂_q^K) - dim(f_q(ker ∂_q^K) ∩ Im ∂_{q+1}^L)`.
/// Weights are never read.
pub fn oracle_persistent_betti(f: &SimplicialMap, q: usize) -> usize {
    let cycles = image_of_cycles(f, q);
    let boundaries = SubspaceBasis::span(&boundary_matrix(f.codomain(), q + 1));
    cycles.dim() - cycles.intersection_dim(&boundaries)
}

/// Classical Betti number `dim ker ∂_q - rank ∂_{q+1}`.
pub fn betti_number(complex: &crate::complex::SimplicialComplex, q: usize) -> usize {
    boundary_matrix(complex, q).nullity() - boundary_matrix(complex, q + 1).rank()
}

/// Matrix of `g_W ∘ g_W*` on `W`, in the basis `w_basis`, where `g: V̂ -> V`
/// has matrix `g`, `g_W` is its restriction `g⁻¹(W) -> W`, and the inner
/// products on `V̂` and `V` have Gram matrices `gram_domain`, `gram_codomain`.
pub fn restricted_product(
    g: &ExactMatrix,
    gram_domain: &ExactMatrix,
    gram_codomain: &ExactMatrix,
    w_basis: &ExactMatrix,
) -> Result<ExactMatrix> {
    let (rows, cols) = g.shape();
    if w_basis.rows() != rows
        || gram_domain.shape() != (cols, cols)
        || gram_codomain.shape() != (rows, rows)
    {
        return Err(LinalgError::DimensionMismatch(format!(
            "map {rows}x{cols}, grams {:?} / {:?}, subspace basis {:?}",
            gram_domain.shape(),
            gram_codomain.shape(),
            w_basis.shape()
        ))
        .into());
    }
    if w_basis.rank() != w_basis.cols() {
        return Err(LinalgError::DependentColumns.into());
    }
    let d = w_basis.cols();
    // x ∈ g⁻¹(W) iff g x = W a for some a: the kernel of [g | -W].
    let stacked = g.hstack(&w_basis.scale(&Rational::from_i64(-1)));
    let kernel = stacked.kernel_basis();
    let preimage = kernel.block(0..cols, 0..kernel.cols());
    let p = preimage.select_columns(&independent_columns(&preimage));
    if p.cols() == 0 {
        return Ok(ExactMatrix::zeros(d, d));
    }
    let a = solve_in_span(w_basis, &(g * &p)).expect("g maps the preimage into W");
    let gram_p = &(&p.transpose() * gram_domain) * &p;
    let gram_w = &(&w_basis.transpose() * gram_codomain) * w_basis;
    Ok(&(&(&a * &gram_p.inverse()?) * &a.transpose()) * &gram_w)
}

/// [`restricted_product`] for chain inner products `⟨σ, σ⟩ = 1 / w(σ)`.
pub fn schur_restriction_direct(
    g: &ExactMatrix,
    w_basis: &ExactMatrix,
    domain_weights: &[Rational],
    codomain_weights: &[Rational],
) -> Result<ExactMatrix> {
    restricted_product(
        g,
        &ExactMatrix::from_diagonal(&reciprocals(domain_weights)),
        &ExactMatrix::from_diagonal(&reciprocals(codomain_weights)),
        w_basis,
    )
}

/// Persistent Laplacian built directly from its definition as Schur
/// restrictions, in the canonical basis of `Im(f_q)`.
#[derive(Clone, Debug, Serialize)]
pub struct DirectLaplacian {
    pub q: usize,
    /// Codomain indices of the hit simplices.
    pub hit: Vec<usize>,
    pub down: ExactMatrix,
    pub up: ExactMatrix,
    /// The up restriction on `f_q(ker ∂_q^K)` in the basis `cycle_basis`.
    pub essential: ExactMatrix,
    pub cycle_basis: ExactMatrix,
}

impl DirectLaplacian {
    pub fn full(&self) -> ExactMatrix {
        self.down.add(&self.up)
    }
}

/// Assumes `f` is weight preserving in dimension `q`; otherwise the result is
/// not the persistent Laplacian.
pub fn direct_laplacian(f: &SimplicialMap, q: usize) -> Result<DirectLaplacian> {
    let (k, l) = (f.domain(), f.codomain());
    let chain = induced_chain_map(f, q).matrix;
    let hit: Vec<usize> = (0..chain.rows())
        .filter(|&t| (0..chain.cols()).any(|j| !chain[(t, j)].is_zero()))
        .collect();
    let n = hit.len();
    let hit_weights: Vec<Rational> = hit.iter().map(|&t| l.weights(q)[t].clone()).collect();

    // Down: Sch(∂_q* ∂_q, ker(f_q)⊥) is g_W g_W* for g = ∂_q*, and ker(f_q)⊥ is
    // spanned by W_K [f_q]ᵀ e_τ / w(τ), which f_q sends to τ.
    let down = if q == 0 {
        ExactMatrix::zeros(n, n)
    } else {
        let b = boundary_matrix(k, q);
        let g = adjoint(&b, k.weights(q), k.weights(q - 1));
        let complement = chain
            .transpose()
            .scale_rows(k.weights(q))
            .select_columns(&hit)
            .scale_cols(&reciprocals(&hit_weights));
        schur_restriction_direct(&g, &complement, k.weights(q - 1), k.weights(q))?
    };

    // Up: Sch(∂_{q+1} ∂_{q+1}*, f_q(ker ∂_q^K)), zero on the rest of Im(f_q).
    let cycles = image_of_cycles(f, q);
    let b_up = boundary_matrix(l, q + 1);
    let essential =
        schur_restriction_direct(&b_up, cycles.basis(), l.weights(q + 1), l.weights(q))?;
    let in_image = cycles
        .basis()
        .select(&hit, &(0..cycles.dim()).collect::<Vec<_>>());
    let gram = ExactMatrix::from_diagonal(&reciprocals(&hit_weights));
    let up = if cycles.dim() == 0 {
        ExactMatrix::zeros(n, n)
    } else {
        let wt_g = &in_image.transpose() * &gram;
        let projector_coords = &(&wt_g * &in_image).inverse()? * &wt_g;
        &(&in_image * &essential) * &projector_coords
    };
    Ok(DirectLaplacian {
        q,
        hit,
        down,
        up,
        essential,
        cycle_basis: cycles.basis().clone(),
    })
}

/// Exact comparison between chain-side matrices and the cochain construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub q: usize,
    pub down: bool,
    pub up: bool,
    pub full: bool,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.down && self.up && self.full
    }
}

/// Adjoint for cochain inner products `⟨χ_σ, χ_σ⟩ = w(σ)`: `W_dom⁻¹ aᵀ W_cod`.
fn cochain_adjoint(
    a: &ExactMatrix,
    domain_weights: &[Rational],
    codomain_weights: &[Rational],
) -> ExactMatrix {
    adjoint(
        a,
        &reciprocals(domain_weights),
        &reciprocals(codomain_weights),
    )
}

/// Builds the cochain-side persistent Laplacian of the pullback
/// `f^q = [f_q]ᵀ: C^q_L -> C^q_K` on `ker(f^q)⊥`, with cochain inner products
/// `⟨χ_σ, χ_σ⟩ = w(σ)`, and compares it with the chain-side matrices `down`,
/// `up` (canonical basis of `Im(f_q)`) after transport by the isometry
/// `τ ↦ χ_τ / w(τ)`.
pub fn compare_with_cochains(
    f: &SimplicialMap,
    q: usize,
    down: &ExactMatrix,
    up: &ExactMatrix,
) -> Result<DualityReport> {
    let (k, l) = (f.domain(), f.codomain());
    let fq = induced_chain_map(f, q).matrix;
    let pullback = fq.transpose();
    let (wk, wl) = (k.weights(q), l.weights(q));
    let gram_l = ExactMatrix::from_diagonal(wl);
    let gram_k = ExactMatrix::from_diagonal(wk);

    // ker(f^q)⊥ for the Gram W_L, i.e. the weighted complement with weights 1 / w.
    let u = crate::linalg::weighted_complement_basis(&pullback.kernel_basis(), &reciprocals(wl))?;
    let dim = u.cols();
    let gram_u = &(&u.transpose() * &gram_l) * &u;

    // Down: restriction of δ ∘ δ* with δ = δ^{q-1}_K to f^q(span U), moved back to U.
    let down_u = if q == 0 || dim == 0 {
        ExactMatrix::zeros(dim, dim)
    } else {
        let delta = boundary_matrix(k, q).transpose();
        let image = &pullback * &u;
        restricted_product(
            &delta,
            &ExactMatrix::from_diagonal(k.weights(q - 1)),
            &gram_k,
            &image,
        )?
    };

    // Up: restriction of δ* ∘ δ with δ = δ^q_L, to (f^q)*(ker (δ^{q-1}_K)*).
    let up_u = if dim == 0 {
        ExactMatrix::zeros(0, 0)
    } else {
        let f_adj = cochain_adjoint(&pullback, wl, wk);
        let cocycles = if q == 0 {
            ExactMatrix::identity(k.n_simplices(0))
        } else {
            let delta_adj =
                cochain_adjoint(&boundary_matrix(k, q).transpose(), k.weights(q - 1), wk);
            delta_adj.kernel_basis()
        };
        let w_prime = SubspaceBasis::span(&(&f_adj * &cocycles));
        if w_prime.dim() == 0 {
            ExactMatrix::zeros(dim, dim)
        } else {
            let delta_l_adj =
                cochain_adjoint(&boundary_matrix(l, q + 1).transpose(), wl, l.weights(q + 1));
            let s = restricted_product(
                &delta_l_adj,
                &ExactMatrix::from_diagonal(l.weights(q + 1)),
                &gram_l,
                w_prime.basis(),
            )?;
            let coords = solve_in_span(&u, w_prime.basis()).expect("(f^q)* lands in ker(f^q)⊥");
            let ct_g = &coords.transpose() * &gram_u;
            &(&(&coords * &s) * &(&ct_g * &coords).inverse()?) * &ct_g
        }
    };

    // The isometry sends τ to χ_τ / w(τ); express those cochains in U.
    let hit: Vec<usize> = (0..fq.rows())
        .filter(|&t| (0..fq.cols()).any(|j| !fq[(t, j)].is_zero()))
        .collect();
    let mut iso_columns = Vec::with_capacity(hit.len());
    for &t in &hit {
        let mut c = vec![Rational::zero(); l.n_simplices(q)];
        c[t] = Rational::one().div(&wl[t]);
        iso_columns.push(c);
    }
    let iso = ExactMatrix::from_columns(l.n_simplices(q), &iso_columns);
    let p = solve_in_span(&u, &iso).ok_or(LinalgError::DimensionMismatch(
        "isometry image outside ker(f^q)⊥".into(),
    ))?;
    if !p.is_square() || down.shape() != p.shape() || up.shape() != p.shape() {
        return Ok(DualityReport {
            q,
            down: false,
            up: false,
            full: false,
        });
    }
    let p_inv = p.inverse()?;
    let transport = |a: &ExactMatrix| &(&p * a) * &p_inv;
    let down_ok = transport(down) == down_u;
    let up_ok = transport(up) == up_u;
    let full_ok = transport(&down.add(up)) == down_u.add(&up_u);
    Ok(DualityReport {
        q,
        down: down_ok,
        up: up_ok,
        full: full_ok,
    })
}

/// Runs [`compare_with_cochains`] against the matrices produced by
/// [`crate::plap::laplacian_report`]. Requires `f` weight preserving at `q`.
pub fn cochain_duality_check(f: &SimplicialMap, q: usize) -> Result<DualityReport> {
    let report = crate::plap::laplacian_report(f, q)?;
    compare_with_cochains(f, q, &report.down.matrix, &report.up.matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::{exact_from_ints, exact_from_ratios, ratio};
    use crate::plap::laplacian_report;

    #[test]
    fn persistent_betti_of_fixtures() {
        assert_eq!(oracle_persistent_betti(&fixtures::fig2(), 1), 0);
        assert_eq!(oracle_persistent_betti(&fixtures::fig3(), 1), 1);
        let id = SimplicialMap::identity(fixtures::fig2().domain().clone());
        assert_eq!(oracle_persistent_betti(&id, 0), 1);
        assert_eq!(oracle_persistent_betti(&id, 1), 2);
        assert_eq!(betti_number(fixtures::fig2().domain(), 1), 2);
    }

    #[test]
    fn persisting_class_of_fig3() {
        // [xy] + [yz] - [xz] over (xy, xz, yz)
        let cycle = SubspaceBasis::span(&exact_from_ints(&[&[1], &[-1], &[1]]));
        assert!(image_of_cycles(&fixtures::fig3(), 1).same_span(&cycle));
    }

    #[test]
    fn trivial_restrictions() {
        let one = vec![ratio(1, 1); 2];
        let axis = exact_from_ints(&[&[1], &[0]]);
        let r = schur_restriction_direct(&ExactMatrix::identity(2), &axis, &one, &one).unwrap();
        assert_eq!(r, exact_from_ints(&[&[1]]));
        let g = exact_from_ints(&[&[1, 2], &[0, 1]]);
        let full = schur_restriction_direct(&g, &ExactMatrix::identity(2), &one, &one).unwrap();
        assert_eq!(full, &g * &g.transpose());
    }

    #[test]
    fn essential_value_of_fig2() {
        let f = fixtures::fig2();
        let l = f.codomain();
        let w = exact_from_ints(&[&[1], &[-1], &[1]]);
        let s = schur_restriction_direct(&boundary_matrix(l, 2), &w, l.weights(2), l.weights(1))
            .unwrap();
        assert_eq!(s, exact_from_ratios(&[&[(5, 2)]]));
    }

    #[test]
    fn direct_matches_algorithm_on_fixtures() {
        for f in [fixtures::fig2(), fixtures::fig3()] {
            for q in 0..2 {
                let report = laplacian_report(&f, q).unwrap();
                let direct = direct_laplacian(&f, q).unwrap();
                assert_eq!(direct.down, report.down.matrix, "down q={q}");
                assert_eq!(direct.up, report.up.matrix, "up q={q}");
            }
        }
    }

    #[test]
    fn duality_on_fixtures() {
        for f in [
            fixtures::fig2(),
            fixtures::fig3(),
            SimplicialMap::identity(fixtures::fig2().codomain().clone()),
        ] {
            for q in 0..3 {
                let check = cochain_duality_check(&f, q).unwrap();
                assert!(check.passed(), "q={q}: {check:?}");
            }
        }
    }
}
