//! Seeded random complexes, collapse maps and filtrations for property tests.

use std::collections::HashSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{facets, pushforward, Simplex, SimplicialComplex, SimplicialMap};
use crate::error::{Error, Result};
use crate::linalg::{ratio, Rational};

/// Weights are drawn as `p / d` with `p` in `1..=max_numerator` and `d` in
/// `1..=max_denominator`.
#[derive(Clone, Copy, Debug)]
pub struct WeightRange {
    pub max_numerator: i64,
    pub max_denominator: i64,
}

impl Default for WeightRange {
    fn default() -> Self {
        WeightRange {
            max_numerator: 5,
            max_denominator: 3,
        }
    }
}

impl WeightRange {
    pub const UNIT: WeightRange = WeightRange {
        max_numerator: 1,
        max_denominator: 1,
    };

    pub fn sample(&self, rng: &mut impl Rng) -> Rational {
        ratio(
            rng.gen_range(1..=self.max_numerator),
            rng.gen_range(1..=self.max_denominator),
        )
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random complex on vertices `v0..v{n-1}`: each edge is present with
/// probability `density`, and each higher simplex whose facets are all
/// present is filled in with probability `density`, up to `max_dim`.
pub fn random_complex(
    n_vertices: usize,
    max_dim: usize,
    density: f64,
    seed: u64,
) -> SimplicialComplex {
    random_complex_with(
        n_vertices,
        max_dim,
        density,
        WeightRange::default(),
        &mut rng_from_seed(seed),
    )
}

pub fn random_complex_with(
    n_vertices: usize,
    max_dim: usize,
    density: f64,
    weights: WeightRange,
    rng: &mut impl Rng,
) -> SimplicialComplex {
    let vertices: Vec<String> = (0..n_vertices).map(|i| format!("v{i}")).collect();
    let mut layers: Vec<Vec<Simplex>> = vec![(0..n_vertices).map(|v| vec![v]).collect()];
    let mut present: HashSet<Simplex> = layers[0].iter().cloned().collect();
    for q in 1..=max_dim {
        let mut layer = Vec::new();
        for base in &layers[q - 1] {
            let last = *base.last().expect("nonempty simplex");
            for v in last + 1..n_vertices {
                let mut candidate = base.clone();
                candidate.push(v);
                if facets(&candidate).all(|f| present.contains(&f))
                    && rng.gen_bool(density.clamp(0.0, 1.0))
                {
                    layer.push(candidate);
                }
            }
        }
        if layer.is_empty() {
            break;
        }
        present.extend(layer.iter().cloned());
        layers.push(layer);
    }
    let simplices = layers
        .into_iter()
        .flatten()
        .map(|s| (s, weights.sample(rng)))
        .collect();
    SimplicialComplex::new(vertices, simplices).expect("generated complex is closed")
}

/// Partition of `0..n` into `blocks` nonempty random blocks (fewer if `n < blocks`).
pub fn random_partition(n: usize, blocks: usize, rng: &mut impl Rng) -> Vec<Vec<usize>> {
    let blocks = blocks.clamp(1, n.max(1));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut parts: Vec<Vec<usize>> = vec![Vec::new(); blocks];
    for (i, v) in order.into_iter().enumerate() {
        let b = if i < blocks {
            i
        } else {
            rng.gen_range(0..blocks)
        };
        parts[b].push(v);
    }
    parts.retain(|p| !p.is_empty());
    for p in &mut parts {
        p.sort_unstable();
    }
    parts.sort();
    parts
}

/// The quotient map collapsing each block of `partition` to a single vertex.
///
/// The codomain carries pushed-forward weights, so the map is weight
/// preserving in every dimension. Block vertices are labelled by joining the
/// member labels with `+`. With a seed the codomain vertex order is shuffled,
/// which changes orientations and exercises the signs of the chain map.
pub fn collapse_map(
    complex: &Arc<SimplicialComplex>,
    partition: &[Vec<usize>],
    seed: Option<u64>,
) -> Result<SimplicialMap> {
    let n = complex.vertices().len();
    let mut block_of = vec![None; n];
    for (b, block) in partition.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::Validation("empty block in partition".into()));
        }
        for &v in block {
            if v >= n {
                return Err(Error::Validation(format!(
                    "partition names unknown vertex index {v}"
                )));
            }
            if block_of[v].replace(b).is_some() {
                return Err(Error::Validation(format!(
                    "vertex {} is in two blocks",
                    complex.vertices()[v]
                )));
            }
        }
    }
    let block_of: Vec<usize> = block_of
        .into_iter()
        .enumerate()
        .map(|(v, b)| {
            b.ok_or_else(|| {
                Error::Validation(format!("vertex {} is in no block", complex.vertices()[v]))
            })
        })
        .collect::<Result<_>>()?;
    let mut order: Vec<usize> = (0..partition.len()).collect();
    if let Some(seed) = seed {
        order.shuffle(&mut rng_from_seed(seed));
    }
    // position of each block in the codomain vertex order
    let mut rank = vec![0; partition.len()];
    for (pos, &b) in order.iter().enumerate() {
        rank[b] = pos;
    }
    let labels: Vec<String> = order
        .iter()
        .map(|&b| {
            partition[b]
                .iter()
                .map(|&v| complex.vertices()[v].as_str())
                .collect::<Vec<_>>()
                .join("+")
        })
        .collect();
    let assign: Vec<usize> = block_of.iter().map(|&b| rank[b]).collect();
    let (codomain, vertex_map) = pushforward(complex, &assign, &labels);
    SimplicialMap::new(complex.clone(), Arc::new(codomain), vertex_map)
}

/// Collapse along a random partition into a random number of blocks.
pub fn random_collapse(complex: &Arc<SimplicialComplex>, rng: &mut impl Rng) -> SimplicialMap {
    let n = complex.vertices().len();
    let blocks = rng.gen_range(1..=n.max(1));
    let partition = random_partition(n, blocks, rng);
    collapse_map(complex, &partition, Some(rng.gen())).expect("random partition is valid")
}

/// A supercomplex of `complex` with `extra_vertices` new vertices and random
/// new simplices up to `max_dim`, existing weights unchanged.
pub fn random_extension(
    complex: &SimplicialComplex,
    extra_vertices: usize,
    max_dim: usize,
    density: f64,
    weights: WeightRange,
    rng: &mut impl Rng,
) -> SimplicialComplex {
    let mut vertices = complex.vertices().to_vec();
    for i in 0..extra_vertices {
        let mut label = format!("n{i}");
        while vertices.contains(&label) {
            label.push('\'');
        }
        vertices.push(label);
    }
    let n = vertices.len();
    let mut simplices: Vec<(Simplex, Rational)> = complex
        .iter()
        .map(|(s, w)| (s.clone(), w.clone()))
        .collect();
    let mut present: HashSet<Simplex> = simplices.iter().map(|(s, _)| s.clone()).collect();
    for v in complex.vertices().len()..n {
        simplices.push((vec![v], weights.sample(rng)));
        present.insert(vec![v]);
    }
    for q in 1..=max_dim {
        let mut base: Vec<Simplex> = present.iter().filter(|s| s.len() == q).cloned().collect();
        base.sort();
        for b in base {
            let last = *b.last().expect("nonempty simplex");
            for v in last + 1..n {
                let mut candidate = b.clone();
                candidate.push(v);
                if !present.contains(&candidate)
                    && facets(&candidate).all(|f| present.contains(&f))
                    && rng.gen_bool(density.clamp(0.0, 1.0))
                {
                    present.insert(candidate.clone());
                    simplices.push((candidate, weights.sample(rng)));
                }
            }
        }
    }
    SimplicialComplex::new(vertices, simplices).expect("extension is closed")
}

/// Replaces the codomain of `f` by a random supercomplex. New simplices have
/// no preimages, so weight preservation is unaffected.
pub fn extend_codomain(
    f: &SimplicialMap,
    extra_vertices: usize,
    max_dim: usize,
    density: f64,
    rng: &mut impl Rng,
) -> SimplicialMap {
    let bigger = random_extension(
        f.codomain(),
        extra_vertices,
        max_dim,
        density,
        WeightRange::default(),
        rng,
    );
    SimplicialMap::new(
        f.domain().clone(),
        Arc::new(bigger),
        f.vertex_map().to_vec(),
    )
    .expect("extension keeps vertex indices")
}

/// Parameters for [`random_wp_map`].
#[derive(Clone, Copy, Debug)]
pub struct RandomMapParams {
    pub max_vertices: usize,
    pub max_dim: usize,
    pub density: f64,
    /// Probability of enlarging the codomain beyond the image.
    pub extend_probability: f64,
}

impl Default for RandomMapParams {
    fn default() -> Self {
        RandomMapParams {
            max_vertices: 8,
            max_dim: 3,
            density: 0.6,
            extend_probability: 0.5,
        }
    }
}

/// A random weight-preserving map: a random complex, collapsed along a
/// random partition, with the codomain optionally enlarged.
pub fn random_wp_map(params: RandomMapParams, seed: u64) -> SimplicialMap {
    let mut rng = rng_from_seed(seed);
    let n = rng.gen_range(2..=params.max_vertices.max(2));
    let k = Arc::new(random_complex_with(
        n,
        params.max_dim,
        params.density,
        WeightRange::default(),
        &mut rng,
    ));
    let f = random_collapse(&k, &mut rng);
    if rng.gen_bool(params.extend_probability) {
        let extra = rng.gen_range(0..=2);
        extend_codomain(&f, extra, params.max_dim, 0.5, &mut rng)
    } else {
        f
    }
}

/// Simplices that are not a face of any other simplex.
pub fn maximal_simplices(complex: &SimplicialComplex) -> Vec<Simplex> {
    let mut covered: HashSet<Simplex> = HashSet::new();
    for (s, _) in complex.iter() {
        covered.extend(facets(s));
    }
    complex
        .iter()
        .map(|(s, _)| s.clone())
        .filter(|s| !covered.contains(s))
        .collect()
}

/// A nested sequence `K_0 ⊆ K_1 ⊆ ... ⊆ K_{len-1} = complex`, each step
/// removing a few random maximal simplices. Weights are inherited.
pub fn random_filtration(
    complex: &SimplicialComplex,
    len: usize,
    rng: &mut impl Rng,
) -> Vec<SimplicialComplex> {
    let mut chain = vec![complex.clone()];
    while chain.len() < len.max(1) {
        let current = chain.last().expect("nonempty chain");
        let mut maximal = maximal_simplices(current);
        // keep at least one vertex
        if current.len() <= 1 {
            chain.push(current.clone());
            continue;
        }
        maximal.shuffle(rng);
        let remove_count = rng.gen_range(1..=maximal.len().min(3));
        let removed: HashSet<Simplex> = maximal.into_iter().take(remove_count).collect();
        let kept_vertices: Vec<usize> = (0..current.vertices().len())
            .filter(|&v| !removed.contains(&vec![v]))
            .collect();
        let relabel: std::collections::HashMap<usize, usize> = kept_vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let labels = kept_vertices
            .iter()
            .map(|&v| current.vertices()[v].clone())
            .collect();
        let simplices = current
            .iter()
            .filter(|(s, _)| !removed.contains(*s))
            .map(|(s, w)| (s.iter().map(|v| relabel[v]).collect(), w.clone()))
            .collect();
        let smaller = SimplicialComplex::new(labels, simplices)
            .expect("removing maximal simplices keeps closure");
        if smaller.is_empty() {
            chain.push(current.clone());
        } else {
            chain.push(smaller);
        }
    }
    chain.reverse();
    chain
}

/// The inclusion of `sub` into `sup` matching vertices by label.
pub fn inclusion(
    sub: Arc<SimplicialComplex>,
    sup: Arc<SimplicialComplex>,
) -> Result<SimplicialMap> {
    let pairs: Vec<(String, String)> = sub
        .vertices()
        .iter()
        .map(|v| (v.clone(), v.clone()))
        .collect();
    SimplicialMap::from_labels(sub, sup, &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::check_weight_preserving_all;

    #[test]
    fn complete_graph_and_single_vertex() {
        let k = random_complex(4, 1, 1.0, 3);
        assert_eq!(
            (k.n_simplices(0), k.n_simplices(1), k.n_simplices(2)),
            (4, 6, 0)
        );
        let v = random_complex(1, 0, 0.5, 3);
        assert_eq!(v.len(), 1);
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(random_complex(6, 2, 0.5, 42), random_complex(6, 2, 0.5, 42));
        assert_eq!(
            random_wp_map(RandomMapParams::default(), 9),
            random_wp_map(RandomMapParams::default(), 9)
        );
    }

    #[test]
    fn collapse_of_an_edge() {
        let k = Arc::new(random_complex_with(
            2,
            1,
            1.0,
            WeightRange::UNIT,
            &mut rng_from_seed(0),
        ));
        let id_like = collapse_map(&k, &[vec![0], vec![1]], None).unwrap();
        assert!(id_like.is_inclusion());
        assert_eq!(id_like.codomain().as_ref(), k.as_ref());
        let point = collapse_map(&k, &[vec![0, 1]], None).unwrap();
        assert_eq!(point.codomain().len(), 1);
        assert_eq!(point.codomain().weight(&[0]), Some(&ratio(2, 1)));
        assert!(collapse_map(&k, &[vec![0]], None).is_err());
    }

    #[test]
    fn generated_maps_are_weight_preserving() {
        for seed in 0..30 {
            let f = random_wp_map(RandomMapParams::default(), seed);
            assert!(
                check_weight_preserving_all(&f).iter().all(|r| r.is_ok()),
                "seed {seed}"
            );
            let k = random_complex(6, 2, 0.7, seed);
            let chain = random_filtration(&k, 4, &mut rng_from_seed(seed));
            assert_eq!(chain.len(), 4);
            for pair in chain.windows(2) {
                let inc = inclusion(Arc::new(pair[0].clone()), Arc::new(pair[1].clone())).unwrap();
                assert!(inc.is_inclusion());
            }
        }
    }
}
