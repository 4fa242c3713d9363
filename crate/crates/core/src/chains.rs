//! Chain-level matrices: boundaries, weight diagonals, induced chain maps,
//! combinatorial Laplacians and the basis decomposition of `C_q^K` along a map.
//!
//! Chains carry the inner product `⟨[σ], [σ]⟩ = 1 / w(σ)`, so the adjoint of
//! a matrix `B: C_q -> C_{q-1}` is `W_q Bᵀ W_{q-1}⁻¹`.

use serde::{Serialize, Serializer};

use crate::complex::{SimplicialComplex, SimplicialMap};
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Rational, Scalar};

pub(crate) fn serialize_rational<S: Serializer>(
    value: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}

/// Signed incidence matrix of `∂_q`, `n_{q-1} x n_q`. `∂_0` maps to the zero space.
pub fn boundary_matrix(complex: &SimplicialComplex, q: usize) -> ExactMatrix {
    let cols = complex.n_simplices(q);
    if q == 0 {
        return ExactMatrix::zeros(0, cols);
    }
    let mut b = ExactMatrix::zeros(complex.n_simplices(q - 1), cols);
    for (j, s) in complex.simplices(q).iter().enumerate() {
        for i in 0..s.len() {
            let mut face = s.clone();
            face.remove(i);
            let row = complex.index_of(&face).expect("complex is closed");
            b[(row, j)] = Rational::from_i64(if i % 2 == 0 { 1 } else { -1 });
        }
    }
    b
}

/// Diagonal matrix `W_q` of the `q`-simplex weights.
pub fn weight_matrix(complex: &SimplicialComplex, q: usize) -> ExactMatrix {
    ExactMatrix::from_diagonal(complex.weights(q))
}

pub(crate) fn reciprocals(weights: &[Rational]) -> Vec<Rational> {
    weights.iter().map(|w| Rational::one().div(w)).collect()
}

/// Matrix of the adjoint of `a: C_q -> C_p` given the weights of both sides.
pub fn adjoint(
    a: &ExactMatrix,
    domain_weights: &[Rational],
    codomain_weights: &[Rational],
) -> ExactMatrix {
    a.transpose()
        .scale_rows(domain_weights)
        .scale_cols(&reciprocals(codomain_weights))
}

/// Where one domain simplex goes under `f_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainImage {
    /// `f_q([σ]) = sign · [τ]`, with `τ` given by its codomain index.
    Simplex { target: usize, sign: i8 },
    /// Two vertices of `σ` collide, so `f_q([σ]) = 0`.
    Killed,
}

/// The matrix `[f_q]` (`n_q^L x n_q^K`) together with its column structure.
#[derive(Clone, Debug)]
pub struct ChainMapMatrix {
    pub q: usize,
    pub matrix: ExactMatrix,
    pub columns: Vec<ChainImage>,
}

impl ChainMapMatrix {
    /// Codomain indices that are hit, in canonical order.
    pub fn hit(&self) -> Vec<usize> {
        let mut hit: Vec<usize> = self
            .columns
            .iter()
            .filter_map(|c| match c {
                ChainImage::Simplex { target, .. } => Some(*target),
                ChainImage::Killed => None,
            })
            .collect();
        hit.sort_unstable();
        hit.dedup();
        hit
    }
}

/// Sign of the permutation sorting `values` increasingly (values distinct).
fn sorting_sign(values: &[usize]) -> i8 {
    let mut inversions = 0;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] > values[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn induced_chain_map(f: &SimplicialMap, q: usize) -> ChainMapMatrix {
    let (k, l) = (f.domain(), f.codomain());
    let mut matrix = ExactMatrix::zeros(l.n_simplices(q), k.n_simplices(q));
    let mut columns = Vec::with_capacity(k.n_simplices(q));
    for (j, s) in k.simplices(q).iter().enumerate() {
        let images: Vec<usize> = s.iter().map(|&v| f.vertex_map()[v]).collect();
        let target = f.image(s);
        if target.len() < s.len() {
            columns.push(ChainImage::Killed);
            continue;
        }
        let sign = sorting_sign(&images);
        let row = l.index_of(&target).expect("map is simplicial");
        matrix[(row, j)] = Rational::from_i64(sign.into());
        columns.push(ChainImage::Simplex { target: row, sign });
    }
    ChainMapMatrix { q, matrix, columns }
}

/// A hit codomain simplex whose weight differs from the sum over its preimages.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub simplex: String,
    #[serde(serialize_with = "serialize_rational")]
    pub codomain_weight: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub preimage_sum: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightReport {
    pub q: usize,
    pub weight_preserving: bool,
    pub violations: Vec<Violation>,
}

impl WeightReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        match self.violations.into_iter().next() {
            None => Ok(()),
            Some(v) => Err(Error::NotWeightPreserving {
                q: self.q,
                simplex: v.simplex,
                codomain_weight: v.codomain_weight.to_string(),
                preimage_sum: v.preimage_sum.to_string(),
            }),
        }
    }
}

/// Compares `w^L(τ)` with `Σ_{f_q(σ) = ±τ} w^K(σ)` for every hit `τ`, exactly.
pub fn check_weight_preserving(f: &SimplicialMap, q: usize) -> WeightReport {
    let chain = induced_chain_map(f, q);
    let (k, l) = (f.domain(), f.codomain());
    let mut sums = vec![Rational::zero(); l.n_simplices(q)];
    let mut hit = vec![false; l.n_simplices(q)];
    for (j, c) in chain.columns.iter().enumerate() {
        if let ChainImage::Simplex { target, .. } = c {
            sums[*target] = sums[*target].add(&k.weights(q)[j]);
            hit[*target] = true;
        }
    }
    let violations: Vec<Violation> = (0..l.n_simplices(q))
        .filter(|&t| hit[t] && sums[t] != l.weights(q)[t])
        .map(|t| Violation {
            simplex: l.simplex_label(&l.simplices(q)[t]),
            codomain_weight: l.weights(q)[t].clone(),
            preimage_sum: sums[t].clone(),
        })
        .collect();
    WeightReport {
        q,
        weight_preserving: violations.is_empty(),
        violations,
    }
}

/// One report per dimension `0..=dim K`.
pub fn check_weight_preserving_all(f: &SimplicialMap) -> Vec<WeightReport> {
    let top = f.domain().dim().map_or(0, |d| d + 1);
    (0..top).map(|q| check_weight_preserving(f, q)).collect()
}

pub fn is_weight_preserving(f: &SimplicialMap) -> bool {
    check_weight_preserving_all(f)
        .iter()
        .all(WeightReport::is_ok)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LaplacianKind {
    Up,
    Down,
    Full,
}

/// `up = B_{q+1} W_{q+1} B_{q+1}ᵀ W_q⁻¹`, `down = W_q B_qᵀ W_{q-1}⁻¹ B_q`.
pub fn combinatorial_laplacian(
    complex: &SimplicialComplex,
    q: usize,
    kind: LaplacianKind,
) -> ExactMatrix {
    let n = complex.n_simplices(q);
    let up = || {
        let b = boundary_matrix(complex, q + 1);
        &b * &adjoint(&b, complex.weights(q + 1), complex.weights(q))
    };
    let down = || {
        if q == 0 {
            return ExactMatrix::zeros(n, n);
        }
        let b = boundary_matrix(complex, q);
        &adjoint(&b, complex.weights(q), complex.weights(q - 1)) * &b
    };
    match kind {
        LaplacianKind::Up => up(),
        LaplacianKind::Down => down(),
        LaplacianKind::Full => up().add(&down()),
    }
}

/// Decomposition `C_q^K = span(𝒥) ⊕ span(ℬ)` along `f_q`.
///
/// For each hit simplex `τ_i` (canonical codomain order) with preimages
/// `σ_1^i < ... < σ_{d_i}^i`, `𝒥` holds `c^{τ_i} = Σ_k sgn(σ_k^i) w(σ_k^i) σ_k^i`
/// and `ℬ` holds the differences `sgn(σ_1^i) σ_1^i - sgn(σ_k^i) σ_k^i`,
/// followed by every killed simplex. `ℬ` spans `ker f_q`, `𝒥` spans its
/// orthogonal complement.
#[derive(Clone, Debug)]
pub struct BasisDecomposition {
    pub q: usize,
    /// Codomain indices of `τ_1..τ_n`.
    pub hit: Vec<usize>,
    /// Domain indices of the preimages of each `τ_i`, increasing.
    pub preimages: Vec<Vec<usize>>,
    /// Domain indices of simplices killed by `f_q`.
    pub killed: Vec<usize>,
    /// Change of basis `M_{𝒥∪ℬ -> 𝒮_q^K}`; its first `n` columns are `𝒥`.
    pub m: ExactMatrix,
    /// Diagonal of `W_Im(f_q)`, the weights `w^L(τ_i)`.
    pub image_weights: Vec<Rational>,
}

impl BasisDecomposition {
    /// `n = dim Im(f_q)`.
    pub fn n(&self) -> usize {
        self.hit.len()
    }

    pub fn j_basis(&self) -> ExactMatrix {
        self.m.block(0..self.m.rows(), 0..self.n())
    }

    pub fn b_basis(&self) -> ExactMatrix {
        self.m.block(0..self.m.rows(), self.n()..self.m.cols())
    }
}

pub fn basis_decomposition(f: &SimplicialMap, q: usize) -> Result<BasisDecomposition> {
    check_weight_preserving(f, q).into_result()?;
    let chain = induced_chain_map(f, q);
    let (k, l) = (f.domain(), f.codomain());
    let hit = chain.hit();
    let position: std::collections::HashMap<usize, usize> =
        hit.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let mut preimages = vec![Vec::new(); hit.len()];
    let mut signs = vec![0i8; chain.columns.len()];
    let mut killed = Vec::new();
    for (j, c) in chain.columns.iter().enumerate() {
        match c {
            ChainImage::Simplex { target, sign } => {
                preimages[position[target]].push(j);
                signs[j] = *sign;
            }
            ChainImage::Killed => killed.push(j),
        }
    }
    let n_k = k.n_simplices(q);
    let sign = |j: usize| Rational::from_i64(signs[j].into());
    let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(n_k);
    for pre in &preimages {
        let mut c = vec![Rational::zero(); n_k];
        for &j in pre {
            c[j] = sign(j).mul(&k.weights(q)[j]);
        }
        columns.push(c);
    }
    for pre in &preimages {
        let first = pre[0];
        for &j in &pre[1..] {
            let mut c = vec![Rational::zero(); n_k];
            c[first] = sign(first);
            c[j] = sign(j).neg();
            columns.push(c);
        }
    }
    for &j in &killed {
        let mut c = vec![Rational::zero(); n_k];
        c[j] = Rational::one();
        columns.push(c);
    }
    let image_weights = hit.iter().map(|&t| l.weights(q)[t].clone()).collect();
    Ok(BasisDecomposition {
        q,
        hit,
        preimages,
        killed,
        m: ExactMatrix::from_columns(n_k, &columns),
        image_weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::{exact_from_ints, exact_from_ratios, ratio};

    #[test]
    fn boundary_matrices_of_fig2() {
        let f = fixtures::fig2();
        let (k, l) = (f.domain(), f.codomain());
        // rows a,b,c,d; columns ab,ac,ad,bc,bd
        let b1 = exact_from_ints(&[
            &[-1, -1, -1, 0, 0],
            &[1, 0, 0, -1, -1],
            &[0, 1, 0, 1, 0],
            &[0, 0, 1, 0, 1],
        ]);
        assert_eq!(boundary_matrix(k, 1), b1);
        assert_eq!(boundary_matrix(k, 0).shape(), (0, 4));
        // rows xy,xz,yz: ∂[xyz] = [yz] - [xz] + [xy]
        assert_eq!(boundary_matrix(l, 2), exact_from_ints(&[&[1], &[-1], &[1]]));
        assert_eq!(
            weight_matrix(l, 0),
            exact_from_ints(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 1]])
        );
        assert_eq!(
            weight_matrix(l, 1),
            exact_from_ints(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]])
        );
    }

    #[test]
    fn boundary_squares_to_zero() {
        let f = fixtures::fig2();
        let l = f.codomain();
        assert!((&boundary_matrix(l, 1) * &boundary_matrix(l, 2)).is_zero());
    }

    #[test]
    fn induced_map_of_fig2() {
        let f = fixtures::fig2();
        let chain = induced_chain_map(&f, 1);
        // columns ab,ac,ad,bc,bd; rows xy,xz,yz
        assert_eq!(
            chain.matrix,
            exact_from_ints(&[&[1, 0, 1, 0, 0], &[0, 1, 0, 0, 0], &[0, 0, 0, 1, 0]])
        );
        assert_eq!(chain.columns[4], ChainImage::Killed);
        let k = f.domain();
        let lhs = &induced_chain_map(&f, 0).matrix * &boundary_matrix(k, 1);
        let rhs = &boundary_matrix(f.codomain(), 1) * &chain.matrix;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn reversed_edge_has_negative_sign() {
        let text = r#"{"vertices":["a","b"],"simplices":[{"verts":["a"],"weight":1},{"verts":["b"],"weight":1},{"verts":["a","b"],"weight":1}]}"#;
        let k = std::sync::Arc::new(crate::complex::io::parse_complex(text).unwrap());
        let swap = SimplicialMap::new(k.clone(), k, vec![1, 0]).unwrap();
        assert_eq!(
            induced_chain_map(&swap, 1).matrix,
            exact_from_ints(&[&[-1]])
        );
    }

    #[test]
    fn weight_preservation_of_fixtures() {
        assert!(is_weight_preserving(&fixtures::fig2()));
        let composed = fixtures::fig5_composition();
        let report = check_weight_preserving(&composed, 1);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].simplex, "xy");
        assert_eq!(report.violations[0].codomain_weight, ratio(2, 1));
        assert_eq!(report.violations[0].preimage_sum, ratio(1, 1));
        let identity = SimplicialMap::identity(fixtures::fig2().domain().clone());
        assert!(is_weight_preserving(&identity));
    }

    #[test]
    fn laplacians_of_fig2() {
        let f = fixtures::fig2();
        let up = combinatorial_laplacian(f.codomain(), 1, LaplacianKind::Up);
        // over xy,xz,yz
        let expected = exact_from_ratios(&[
            &[(1, 2), (-1, 1), (1, 1)],
            &[(-1, 2), (1, 1), (-1, 1)],
            &[(1, 2), (-1, 1), (1, 1)],
        ]);
        assert_eq!(up, expected);
        let down = combinatorial_laplacian(f.domain(), 1, LaplacianKind::Down);
        assert!(down.is_symmetric());
        assert_eq!(down[(0, 4)], ratio(-1, 1));
        assert_eq!(down[(4, 0)], ratio(-1, 1));
        assert!(combinatorial_laplacian(f.domain(), 0, LaplacianKind::Down).is_zero());
    }

    #[test]
    fn decomposition_of_fig2() {
        let f = fixtures::fig2();
        let d = basis_decomposition(&f, 1).unwrap();
        // 𝒥 = {ab+ad, ac, bc}, ℬ = {ab-ad, bd} over ab,ac,ad,bc,bd
        let m = exact_from_ints(&[
            &[1, 0, 0, 1, 0],
            &[0, 1, 0, 0, 0],
            &[1, 0, 0, -1, 0],
            &[0, 0, 1, 0, 0],
            &[0, 0, 0, 0, 1],
        ]);
        assert_eq!(d.m, m);
        assert_eq!(d.image_weights, vec![ratio(2, 1), ratio(1, 1), ratio(1, 1)]);
        let d0 = basis_decomposition(&f, 0).unwrap();
        // 𝒥 = {a, b+d, c}, ℬ = {b-d}
        assert_eq!(d0.b_basis(), exact_from_ints(&[&[0], &[1], &[0], &[-1]]));
        assert_eq!(
            d0.j_basis(),
            exact_from_ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[0, 1, 0]])
        );
        assert!(basis_decomposition(&fixtures::fig5_composition(), 1).is_err());
    }

    #[test]
    fn decomposition_of_identity_is_weight_diagonal() {
        let k = fixtures::fig2().codomain().clone();
        let d = basis_decomposition(&SimplicialMap::identity(k.clone()), 1).unwrap();
        assert_eq!(d.m, weight_matrix(&k, 1));
        assert_eq!(d.b_basis().cols(), 0);
    }
}
