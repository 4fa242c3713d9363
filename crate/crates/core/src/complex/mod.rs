//! Weighted simplicial complexes and simplicial maps between them.

pub mod generate;
pub mod io;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Rational, Scalar};

/// A simplex as a strictly increasing list of vertex indices.
pub type Simplex = Vec<usize>;

/// A finite simplicial complex with a positive rational weight on every simplex.
///
/// Vertex order is the position in [`vertices`](Self::vertices) and fixes the
/// orientation of every simplex. Within each dimension simplices are kept in
/// lexicographic order, which is the canonical basis of the chain group.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    simplices: Vec<Vec<Simplex>>,
    weights: Vec<Vec<Rational>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl SimplicialComplex {
    /// Builds a complex from vertex labels and weighted simplices given as
    /// vertex indices in any order.
    pub fn new(vertices: Vec<String>, simplices: Vec<(Simplex, Rational)>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.clone(), i).is_some() {
                return Err(Error::Validation(format!("duplicate vertex {v:?}")));
            }
        }
        let mut by_dim: Vec<Vec<(Simplex, Rational)>> = Vec::new();
        for (mut s, w) in simplices {
            if s.is_empty() {
                return Err(Error::Validation("empty simplex".into()));
            }
            if let Some(&bad) = s.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::Validation(format!("unknown vertex index {bad}")));
            }
            s.sort_unstable();
            if s.windows(2).any(|p| p[0] == p[1]) {
                return Err(Error::Validation(format!(
                    "simplex {} repeats a vertex",
                    join_labels(&vertices, &s)
                )));
            }
            if w <= Rational::zero() {
                return Err(Error::Validation(format!(
                    "simplex {} has non-positive weight {w}",
                    join_labels(&vertices, &s)
                )));
            }
            let q = s.len() - 1;
            if by_dim.len() <= q {
                by_dim.resize_with(q + 1, Vec::new);
            }
            by_dim[q].push((s, w));
        }
        let mut complex = SimplicialComplex {
            vertices,
            simplices: Vec::new(),
            weights: Vec::new(),
            index: Vec::new(),
        };
        for mut layer in by_dim {
            layer.sort_by(|a, b| a.0.cmp(&b.0));
            if let Some(p) = layer.windows(2).find(|p| p[0].0 == p[1].0) {
                return Err(Error::Validation(format!(
                    "duplicate simplex {}",
                    join_labels(&complex.vertices, &p[0].0)
                )));
            }
            let index = layer
                .iter()
                .enumerate()
                .map(|(i, (s, _))| (s.clone(), i))
                .collect();
            let (s, w): (Vec<_>, Vec<_>) = layer.into_iter().unzip();
            complex.simplices.push(s);
            complex.weights.push(w);
            complex.index.push(index);
        }
        complex.check_closed()?;
        Ok(complex)
    }

    /// Builds a complex from simplices given by vertex labels.
    pub fn from_labeled<S: AsRef<str>>(
        vertices: &[S],
        simplices: &[(&[S], Rational)],
    ) -> Result<Self> {
        let labels: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let lookup: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut indexed = Vec::with_capacity(simplices.len());
        for (verts, w) in simplices {
            let mut s = Vec::with_capacity(verts.len());
            for v in verts.iter() {
                let &i = lookup
                    .get(v.as_ref())
                    .ok_or_else(|| Error::Validation(format!("unknown vertex {:?}", v.as_ref())))?;
                s.push(i);
            }
            indexed.push((s, w.clone()));
        }
        Self::new(labels, indexed)
    }

    fn check_closed(&self) -> Result<()> {
        let vertex_count = self.n_simplices(0);
        if vertex_count != self.vertices.len() {
            let missing = (0..self.vertices.len())
                .find(|&v| !self.contains(&[v]))
                .unwrap_or(0);
            return Err(Error::Validation(format!(
                "vertex {:?} has no 0-simplex",
                self.vertices[missing]
            )));
        }
        for q in 1..self.simplices.len() {
            for s in &self.simplices[q] {
                for face in facets(s) {
                    if !self.contains(&face) {
                        return Err(Error::Validation(format!(
                            "not closed under faces: {} is listed but its face {} is not",
                            self.simplex_label(s),
                            self.simplex_label(&face)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    /// Largest simplex dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    /// `n_q`, the number of `q`-simplices.
    pub fn n_simplices(&self, q: usize) -> usize {
        self.simplices.get(q).map_or(0, Vec::len)
    }

    /// The `q`-simplices in canonical order.
    pub fn simplices(&self, q: usize) -> &[Simplex] {
        self.simplices.get(q).map_or(&[], Vec::as_slice)
    }

    /// Weights of the `q`-simplices in canonical order.
    pub fn weights(&self, q: usize) -> &[Rational] {
        self.weights.get(q).map_or(&[], Vec::as_slice)
    }

    /// Position of `simplex` (sorted vertex indices) in the canonical basis.
    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        let q = simplex.len().checked_sub(1)?;
        self.index.get(q)?.get(simplex).copied()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        self.index_of(simplex).is_some()
    }

    pub fn weight(&self, simplex: &[usize]) -> Option<&Rational> {
        let q = simplex.len().checked_sub(1)?;
        self.index_of(simplex).map(|i| &self.weights[q][i])
    }

    /// All simplices with their weights, by dimension then canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, &Rational)> {
        self.simplices
            .iter()
            .zip(&self.weights)
            .flat_map(|(s, w)| s.iter().zip(w))
    }

    /// Total number of simplices.
    pub fn len(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Human-readable name of a simplex: vertex labels concatenated when they
    /// are all single characters (`"ab"`), comma-joined otherwise.
    pub fn simplex_label(&self, simplex: &[usize]) -> String {
        join_labels(&self.vertices, simplex)
    }

    /// Labels of the canonical `q`-basis.
    pub fn basis_labels(&self, q: usize) -> Vec<String> {
        self.simplices(q)
            .iter()
            .map(|s| self.simplex_label(s))
            .collect()
    }

    /// The same complex with every weight replaced by `f(simplex, weight)`.
    pub fn reweighted(&self, mut f: impl FnMut(&[usize], &Rational) -> Rational) -> Result<Self> {
        let simplices = self.iter().map(|(s, w)| (s.clone(), f(s, w))).collect();
        Self::new(self.vertices.clone(), simplices)
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_map();
        for (s, w) in self.iter() {
            list.entry(&self.simplex_label(s), &format_args!("{w}"));
        }
        list.finish()
    }
}

fn join_labels(vertices: &[String], simplex: &[usize]) -> String {
    let labels: Vec<&str> = simplex.iter().map(|&v| vertices[v].as_str()).collect();
    if labels.iter().all(|l| l.chars().count() == 1) {
        labels.concat()
    } else {
        labels.join(",")
    }
}

/// Codimension-one faces, omitting vertex `i` for `i = 0..=q` in turn.
pub fn facets(simplex: &[usize]) -> impl Iterator<Item = Simplex> + '_ {
    (0..simplex.len())
        .filter(move |_| simplex.len() > 1)
        .map(move |i| {
            let mut face = simplex.to_vec();
            face.remove(i);
            face
        })
}

/// A vertex map between complexes that sends every simplex onto a simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    domain: Arc<SimplicialComplex>,
    codomain: Arc<SimplicialComplex>,
    vertex_map: Vec<usize>,
}

impl SimplicialMap {
    /// `vertex_map[i]` is the codomain index of domain vertex `i`.
    pub fn new(
        domain: Arc<SimplicialComplex>,
        codomain: Arc<SimplicialComplex>,
        vertex_map: Vec<usize>,
    ) -> Result<Self> {
        if vertex_map.len() != domain.vertices().len() {
            return Err(Error::Map(format!(
                "vertex map has {} entries for {} domain vertices",
                vertex_map.len(),
                domain.vertices().len()
            )));
        }
        if let Some(&bad) = vertex_map.iter().find(|&&v| v >= codomain.vertices().len()) {
            return Err(Error::Map(format!(
                "codomain vertex index {bad} out of range"
            )));
        }
        let map = SimplicialMap {
            domain,
            codomain,
            vertex_map,
        };
        validate_map(&map)?;
        Ok(map)
    }

    /// Builds a map from a label-to-label assignment, which must be total on
    /// the domain vertices.
    pub fn from_labels<S: AsRef<str>>(
        domain: Arc<SimplicialComplex>,
        codomain: Arc<SimplicialComplex>,
        assignment: &[(S, S)],
    ) -> Result<Self> {
        let mut vertex_map = vec![None; domain.vertices().len()];
        for (from, to) in assignment {
            let (from, to) = (from.as_ref(), to.as_ref());
            let i = domain
                .vertex_index(from)
                .ok_or_else(|| Error::Map(format!("{from:?} is not a domain vertex")))?;
            let j = codomain
                .vertex_index(to)
                .ok_or_else(|| Error::Map(format!("{to:?} is not a codomain vertex")))?;
            if vertex_map[i].replace(j).is_some() {
                return Err(Error::Map(format!("vertex {from:?} is assigned twice")));
            }
        }
        let vertex_map = vertex_map
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    Error::Map(format!("vertex {:?} is not mapped", domain.vertices()[i]))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(domain, codomain, vertex_map)
    }

    pub fn identity(complex: Arc<SimplicialComplex>) -> Self {
        let vertex_map = (0..complex.vertices().len()).collect();
        SimplicialMap {
            domain: complex.clone(),
            codomain: complex,
            vertex_map,
        }
    }

    pub fn domain(&self) -> &Arc<SimplicialComplex> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<SimplicialComplex> {
        &self.codomain
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    /// The image vertex set of a simplex, sorted and deduplicated.
    pub fn image(&self, simplex: &[usize]) -> Simplex {
        let mut img: Simplex = simplex.iter().map(|&v| self.vertex_map[v]).collect();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// Injective on vertices and weight-preserving on every simplex.
    pub fn is_inclusion(&self) -> bool {
        let mut targets = self.vertex_map.clone();
        targets.sort_unstable();
        targets.dedup();
        targets.len() == self.vertex_map.len()
            && self
                .domain
                .iter()
                .all(|(s, w)| self.codomain.weight(&self.image(s)) == Some(w))
    }

    /// Every codomain simplex is the image of some domain simplex.
    pub fn is_surjective(&self) -> bool {
        let mut hit = std::collections::HashSet::new();
        for (s, _) in self.domain.iter() {
            hit.insert(self.image(s));
        }
        hit.len() == self.codomain.len()
    }
}

/// Checks that the image of every domain simplex is a codomain simplex.
pub fn validate_map(f: &SimplicialMap) -> Result<()> {
    for (s, _) in f.domain.iter() {
        let img = f.image(s);
        if !f.codomain.contains(&img) {
            return Err(Error::Map(format!(
                "simplex {} maps to {}, which is not a simplex of the codomain",
                f.domain.simplex_label(s),
                f.codomain.simplex_label(&img)
            )));
        }
    }
    Ok(())
}

/// The image `Im(f)` as a complex with pushed-forward weights
/// `w(τ) = Σ_{f(σ) = τ, dim σ = dim τ} w(σ)`, and the corestriction of `f`.
pub fn image_complex(f: &SimplicialMap) -> (SimplicialComplex, SimplicialMap) {
    let (image, vertex_map) = pushforward(&f.domain, &f.vertex_map, f.codomain.vertices());
    let image = Arc::new(image);
    let map = SimplicialMap {
        domain: f.domain.clone(),
        codomain: image.clone(),
        vertex_map,
    };
    ((*image).clone(), map)
}

/// Pushes `domain` forward along a vertex assignment into the label set
/// `targets`. Only targets that are hit become vertices of the result, in
/// the order of `targets`; returns the complex and the reindexed assignment.
pub(crate) fn pushforward(
    domain: &SimplicialComplex,
    assign: &[usize],
    targets: &[String],
) -> (SimplicialComplex, Vec<usize>) {
    let mut used: Vec<usize> = assign.to_vec();
    used.sort_unstable();
    used.dedup();
    let reindex: HashMap<usize, usize> = used.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let vertex_map: Vec<usize> = assign.iter().map(|t| reindex[t]).collect();
    let mut weights: HashMap<Simplex, Rational> = HashMap::new();
    for (s, w) in domain.iter() {
        let mut img: Simplex = s.iter().map(|&v| vertex_map[v]).collect();
        img.sort_unstable();
        img.dedup();
        if img.len() == s.len() {
            let entry = weights.entry(img).or_insert_with(Rational::zero);
            *entry = entry.add(w);
        }
    }
    let labels = used.iter().map(|&t| targets[t].clone()).collect();
    let image = SimplicialComplex::new(labels, weights.into_iter().collect())
        .expect("the image of a complex is a complex with positive weights");
    (image, vertex_map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;

    fn one() -> Rational {
        ratio(1, 1)
    }

    fn fig2_k() -> SimplicialComplex {
        let s: Vec<(&[&str], Rational)> = vec![
            (&["a"], one()),
            (&["b"], one()),
            (&["c"], one()),
            (&["d"], one()),
            (&["a", "b"], one()),
            (&["b", "c"], one()),
            (&["a", "c"], one()),
            (&["a", "d"], one()),
            (&["b", "d"], one()),
        ];
        SimplicialComplex::from_labeled(&["a", "b", "c", "d"], &s).unwrap()
    }

    fn fig2_l() -> SimplicialComplex {
        let s: Vec<(&[&str], Rational)> = vec![
            (&["x"], one()),
            (&["y"], ratio(2, 1)),
            (&["z"], one()),
            (&["x", "y"], ratio(2, 1)),
            (&["y", "z"], one()),
            (&["x", "z"], one()),
            (&["x", "y", "z"], one()),
        ];
        SimplicialComplex::from_labeled(&["x", "y", "z"], &s).unwrap()
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let k = fig2_k();
        assert_eq!(
            (k.n_simplices(0), k.n_simplices(1), k.n_simplices(2)),
            (4, 5, 0)
        );
        assert_eq!(k.basis_labels(1), ["ab", "ac", "ad", "bc", "bd"]);
        assert_eq!(k.dim(), Some(1));
        assert_eq!(fig2_l().basis_labels(1), ["xy", "xz", "yz"]);
    }

    #[test]
    fn validation_errors() {
        let missing_vertex: Vec<(&[&str], Rational)> = vec![(&["a"], one()), (&["a", "b"], one())];
        assert!(matches!(
            SimplicialComplex::from_labeled(&["a", "b"], &missing_vertex),
            Err(Error::Validation(_))
        ));
        let unknown: Vec<(&[&str], Rational)> = vec![(&["a"], one()), (&["q"], one())];
        assert!(SimplicialComplex::from_labeled(&["a"], &unknown).is_err());
        let zero: Vec<(&[&str], Rational)> = vec![(&["a"], ratio(0, 1))];
        assert!(SimplicialComplex::from_labeled(&["a"], &zero).is_err());
        let dup: Vec<(&[&str], Rational)> = vec![(&["a"], one()), (&["a"], one())];
        assert!(SimplicialComplex::from_labeled(&["a"], &dup).is_err());
        let single: Vec<(&[&str], Rational)> = vec![(&["a"], one())];
        assert_eq!(
            SimplicialComplex::from_labeled(&["a"], &single)
                .unwrap()
                .n_simplices(0),
            1
        );
    }

    #[test]
    fn fig2_map_is_simplicial_and_image_has_pushed_weights() {
        let k = Arc::new(fig2_k());
        let l = Arc::new(fig2_l());
        let f = SimplicialMap::from_labels(
            k.clone(),
            l.clone(),
            &[("a", "x"), ("b", "y"), ("c", "z"), ("d", "y")],
        )
        .unwrap();
        let (im, corestricted) = image_complex(&f);
        assert_eq!(im.n_simplices(2), 0);
        assert_eq!(im.weight(&[0, 1]), Some(&ratio(2, 1)));
        assert_eq!(im.weight(&[1]), Some(&ratio(2, 1)));
        assert!(corestricted.is_surjective());
        assert!(!f.is_surjective());
        assert!(SimplicialMap::identity(k.clone()).is_inclusion());

        // Edge ab would land on pr, which the path does not contain.
        let path: Vec<(&[&str], Rational)> = vec![
            (&["p"], one()),
            (&["q"], one()),
            (&["r"], one()),
            (&["p", "q"], one()),
            (&["q", "r"], one()),
        ];
        let path = Arc::new(SimplicialComplex::from_labeled(&["p", "q", "r"], &path).unwrap());
        let bad =
            SimplicialMap::from_labels(k, path, &[("a", "p"), ("b", "r"), ("c", "q"), ("d", "q")]);
        assert!(matches!(bad, Err(Error::Map(_))));
    }

    #[test]
    fn constant_map_sums_vertex_weights() {
        let s: Vec<(&[&str], Rational)> = vec![
            (&["a"], ratio(1, 2)),
            (&["b"], ratio(1, 3)),
            (&["a", "b"], one()),
        ];
        let k = Arc::new(SimplicialComplex::from_labeled(&["a", "b"], &s).unwrap());
        let v: Vec<(&[&str], Rational)> = vec![(&["v"], one())];
        let target = Arc::new(SimplicialComplex::from_labeled(&["v"], &v).unwrap());
        let f = SimplicialMap::from_labels(k, target, &[("a", "v"), ("b", "v")]).unwrap();
        let (im, _) = image_complex(&f);
        assert_eq!(im.len(), 1);
        assert_eq!(im.weight(&[0]), Some(&ratio(5, 6)));
    }
}
