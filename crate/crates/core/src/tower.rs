//! Towers `K_0 -> K_1 -> ... -> K_m` of simplicial maps and eigenvalue
//! monotonicity along them.
//!
//! For every adjacent triple `K -> L -> M` (maps `f`, `g`, composite
//! `h = g ∘ f`) the report compares ascending eigenvalue lists:
//!
//! * down: `λ_k^{K,M} ≥ λ_k^{L,M}` and `λ_k^{K,M} ≥ λ_k^{K,L}` for
//!   `k ≤ dim Im(h_q)`, when `f`, `g` and `h` are weight preserving;
//! * essential up: `λ_k^{K,M,ess} ≥ λ_k^{L,M,ess}` for
//!   `k ≤ dim h_q(ker ∂_q^K)`, when `f` and `g` are weight preserving;
//! * up for inclusions: `λ_k^{K,M} ≥ λ_k^{L,M}` and `λ_k^{K,M} ≥ λ_k^{K,L}`
//!   for `k ≤ n_q^K`;
//! * surjective maps: `Δ_down^{K,M} - Δ_down^{L,M}` is positive semidefinite.
//!
//! Padded up eigenvalues are compared as well but never asserted, since they
//! are not monotone in general.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::chains::{check_weight_preserving_all, reciprocals};
use crate::complex::generate::{
    collapse_map, extend_codomain, inclusion, random_complex_with, random_extension,
    random_filtration, random_partition, rng_from_seed, WeightRange,
};
use crate::complex::{SimplicialComplex, SimplicialMap};
use crate::error::{Error, Result};
use crate::linalg::symmetric_spectrum;
use crate::linalg::{ratio, Spectrum};
use crate::oracle::image_of_cycles;
use crate::plap::{
    essential_up_on_subspace, gram_spectrum, laplacian_report, symmetrize, LaplacianReport,
};

/// Absolute tolerance of eigenvalue comparisons.
pub const MONOTONICITY_TOL: f64 = 1e-9;

/// `g ∘ f`. Weight preservation of the result is not assumed; see
/// [`crate::chains::check_weight_preserving_all`].
pub fn compose(f: &SimplicialMap, g: &SimplicialMap) -> Result<SimplicialMap> {
    if !Arc::ptr_eq(f.codomain(), g.domain()) && f.codomain() != g.domain() {
        return Err(Error::DomainMismatch(format!(
            "codomain of the first map ({} vertices) is not the domain of the second ({} vertices)",
            f.codomain().vertices().len(),
            g.domain().vertices().len()
        )));
    }
    let vertex_map = f.vertex_map().iter().map(|&v| g.vertex_map()[v]).collect();
    SimplicialMap::new(f.domain().clone(), g.codomain().clone(), vertex_map)
}

/// Weight preservation of the map `K_from -> K_to`.
#[derive(Clone, Debug, Serialize)]
pub struct WpStatus {
    pub from: usize,
    pub to: usize,
    pub weight_preserving: bool,
    /// Dimensions where some codomain weight differs from its preimage sum.
    pub failing_dims: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Tower {
    maps: Vec<SimplicialMap>,
}

impl Tower {
    /// Checks that consecutive maps compose.
    pub fn new(maps: Vec<SimplicialMap>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::Map("a tower needs at least one map".into()));
        }
        for (i, pair) in maps.windows(2).enumerate() {
            if pair[0].codomain() != pair[1].domain() {
                return Err(Error::DomainMismatch(format!(
                    "map {} ends in a complex that is not the domain of map {}",
                    i + 1,
                    i + 2
                )));
            }
        }
        Ok(Tower { maps })
    }

    pub fn maps(&self) -> &[SimplicialMap] {
        &self.maps
    }

    /// `K_0, ..., K_m`.
    pub fn complexes(&self) -> Vec<&Arc<SimplicialComplex>> {
        let mut out = vec![self.maps[0].domain()];
        out.extend(self.maps.iter().map(SimplicialMap::codomain));
        out
    }

    /// The composite `K_from -> K_to`, `from < to`.
    pub fn composite(&self, from: usize, to: usize) -> Result<SimplicialMap> {
        if from >= to || to > self.maps.len() {
            return Err(Error::Map(format!(
                "no composite from K{from} to K{to} in a tower of {} maps",
                self.maps.len()
            )));
        }
        let mut map = self.maps[from].clone();
        for g in &self.maps[from + 1..to] {
            map = compose(&map, g)?;
        }
        Ok(map)
    }

    /// Weight preservation of every map and every composite.
    pub fn wp_status(&self) -> Result<Vec<WpStatus>> {
        let mut out = Vec::new();
        for from in 0..self.maps.len() {
            for to in from + 1..=self.maps.len() {
                out.push(status(&self.composite(from, to)?, from, to));
            }
        }
        Ok(out)
    }
}

fn status(map: &SimplicialMap, from: usize, to: usize) -> WpStatus {
    let failing_dims: Vec<usize> = check_weight_preserving_all(map)
        .into_iter()
        .filter(|r| !r.is_ok())
        .map(|r| r.q)
        .collect();
    WpStatus {
        from,
        to,
        weight_preserving: failing_dims.is_empty(),
        failing_dims,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    DownMonotone,
    EssentialUpMonotone,
    InclusionUp,
    SurjectiveDownPsd,
    PaddedUp,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    Pass {
        compared: usize,
    },
    /// First index `k` (1-based) with `lhs < rhs - tol`.
    Fail {
        k: usize,
        lhs: f64,
        rhs: f64,
    },
    Skipped {
        reason: String,
    },
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub theorem: Theorem,
    /// The inequality, in terms of the spectra keys of the triple.
    pub statement: String,
    /// False for comparisons reported for information only.
    pub asserted: bool,
    pub verdict: Verdict,
}

/// Comparisons for `K_index -> K_{index+1} -> K_{index+2}`.
#[derive(Clone, Debug, Serialize)]
pub struct TripleReport {
    pub index: usize,
    /// Ascending eigenvalues keyed like `down:K0,K2` or `ess-up:K1,K2`.
    pub spectra: BTreeMap<String, Vec<f64>>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonotonicityReport {
    pub q: usize,
    pub tol: f64,
    pub wp: Vec<WpStatus>,
    pub triples: Vec<TripleReport>,
}

impl MonotonicityReport {
    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.triples.iter().flat_map(|t| t.checks.iter())
    }

    /// No asserted check failed.
    pub fn passed(&self) -> bool {
        self.checks().all(|c| !(c.asserted && c.verdict.is_fail()))
    }

    /// Verdicts of one theorem across all triples.
    pub fn verdicts(&self, theorem: Theorem) -> Vec<&Verdict> {
        self.checks()
            .filter(|c| c.theorem == theorem)
            .map(|c| &c.verdict)
            .collect()
    }
}

/// `lhs_k ≥ rhs_k - tol` for the first `count` indices.
pub fn compare_eigenvalues(lhs: &[f64], rhs: &[f64], count: usize, tol: f64) -> Verdict {
    let count = count.min(lhs.len()).min(rhs.len());
    for k in 0..count {
        if lhs[k] < rhs[k] - tol {
            return Verdict::Fail {
                k: k + 1,
                lhs: lhs[k],
                rhs: rhs[k],
            };
        }
    }
    Verdict::Pass { compared: count }
}

/// Spectrum of `Sch(Δ_{q,up}^M, h_q(ker ∂_q^K))`; `h` need not be weight
/// preserving.
pub fn essential_up_spectrum(h: &SimplicialMap, q: usize) -> Result<Spectrum> {
    let cycles = image_of_cycles(h, q);
    let basis = cycles.basis();
    let m = h.codomain();
    let ess = essential_up_on_subspace(m, q, basis)?;
    let gram = &basis.transpose() * &basis.scale_rows(&reciprocals(m.weights(q)));
    gram_spectrum(&ess, &gram)
}

/// Persistent Laplacians of the three maps of a triple, where computable.
struct TripleData {
    f: Option<LaplacianReport>,
    g: Option<LaplacianReport>,
    h: Option<LaplacianReport>,
}

fn eig(report: &LaplacianReport, kind: crate::plap::SpectrumKind) -> Result<Vec<f64>> {
    Ok(report.spectrum(kind)?.eigenvalues)
}

pub fn monotonicity_report(tower: &Tower, q: usize) -> Result<MonotonicityReport> {
    monotonicity_report_with(tower, q, MONOTONICITY_TOL)
}

pub fn monotonicity_report_with(tower: &Tower, q: usize, tol: f64) -> Result<MonotonicityReport> {
    let wp = tower.wp_status()?;
    let is_wp = |from: usize, to: usize| {
        wp.iter()
            .any(|s| s.from == from && s.to == to && s.weight_preserving)
    };
    let mut triples = Vec::new();
    for i in 0..tower.maps.len().saturating_sub(1) {
        let (f, g) = (&tower.maps[i], &tower.maps[i + 1]);
        let h = compose(f, g)?;
        let (f_wp, g_wp, h_wp) = (is_wp(i, i + 1), is_wp(i + 1, i + 2), is_wp(i, i + 2));
        let report = |map: &SimplicialMap, ok: bool| -> Result<Option<LaplacianReport>> {
            if ok {
                laplacian_report(map, q).map(Some)
            } else {
                Ok(None)
            }
        };
        let data = TripleData {
            f: report(f, f_wp)?,
            g: report(g, g_wp)?,
            h: report(&h, h_wp)?,
        };
        triples.push(triple_report(i, q, tol, f, g, &h, &data)?);
    }
    Ok(MonotonicityReport {
        q,
        tol,
        wp,
        triples,
    })
}

fn triple_report(
    i: usize,
    q: usize,
    tol: f64,
    f: &SimplicialMap,
    g: &SimplicialMap,
    h: &SimplicialMap,
    data: &TripleData,
) -> Result<TripleReport> {
    use crate::plap::SpectrumKind::{Down, Up};
    let (kl, lm, km) = (
        format!("K{},K{}", i, i + 1),
        format!("K{},K{}", i + 1, i + 2),
        format!("K{},K{}", i, i + 2),
    );
    let mut spectra = BTreeMap::new();
    let mut checks = Vec::new();
    let skip = |reason: &str| Verdict::Skipped {
        reason: reason.to_string(),
    };
    let mut push = |theorem, statement: String, asserted, verdict| {
        checks.push(Check {
            theorem,
            statement,
            asserted,
            verdict,
        })
    };

    for (key, r) in [(&kl, &data.f), (&lm, &data.g), (&km, &data.h)] {
        if let Some(r) = r {
            spectra.insert(format!("down:{key}"), eig(r, Down)?);
            spectra.insert(format!("up:{key}"), eig(r, Up)?);
        }
    }

    // Down persistent eigenvalues.
    let down_statements = [
        format!("down:{km} >= down:{lm}"),
        format!("down:{km} >= down:{kl}"),
    ];
    match (&data.f, &data.g, &data.h) {
        (Some(_), Some(_), Some(rh)) => {
            let lhs = &spectra[&format!("down:{km}")];
            for (statement, other) in down_statements.into_iter().zip([&lm, &kl]) {
                let verdict =
                    compare_eigenvalues(lhs, &spectra[&format!("down:{other}")], rh.n, tol);
                push(Theorem::DownMonotone, statement, true, verdict);
            }
        }
        _ => {
            for statement in down_statements {
                push(
                    Theorem::DownMonotone,
                    statement,
                    true,
                    skip("needs f, g and g∘f weight preserving"),
                );
            }
        }
    }

    // Essential up eigenvalues.
    let statement = format!("ess-up:{km} >= ess-up:{lm}");
    if data.f.is_some() && data.g.is_some() {
        let ess_km = essential_up_spectrum(h, q)?.eigenvalues;
        let ess_lm = essential_up_spectrum(g, q)?.eigenvalues;
        let verdict = compare_eigenvalues(&ess_km, &ess_lm, ess_km.len(), tol);
        spectra.insert(format!("ess-up:{km}"), ess_km);
        spectra.insert(format!("ess-up:{lm}"), ess_lm);
        push(Theorem::EssentialUpMonotone, statement, true, verdict);
    } else {
        push(
            Theorem::EssentialUpMonotone,
            statement,
            true,
            skip("needs f and g weight preserving"),
        );
    }

    // Up eigenvalues for inclusions.
    let up_statements = [format!("up:{km} >= up:{lm}"), format!("up:{km} >= up:{kl}")];
    if f.is_inclusion() && g.is_inclusion() {
        let n_k = f.domain().n_simplices(q);
        let lhs = &spectra[&format!("up:{km}")];
        for (statement, other) in up_statements.into_iter().zip([&lm, &kl]) {
            let verdict = compare_eigenvalues(lhs, &spectra[&format!("up:{other}")], n_k, tol);
            push(Theorem::InclusionUp, statement, true, verdict);
        }
    } else {
        for statement in up_statements {
            push(
                Theorem::InclusionUp,
                statement,
                true,
                skip("needs f and g to be inclusions"),
            );
        }
    }

    // Surjective maps: the down difference is positive semidefinite.
    let statement = format!("down:{km} - down:{lm} is PSD");
    match (&data.h, &data.g) {
        (Some(rh), Some(rg)) if f.is_surjective() && g.is_surjective() && data.f.is_some() => {
            let verdict = if rh.basis != rg.basis {
                Verdict::Fail {
                    k: 0,
                    lhs: f64::NAN,
                    rhs: f64::NAN,
                }
            } else {
                let diff = rh.down.matrix.sub(&rg.down.matrix);
                let s = symmetrize(&diff, &rh.weights);
                let spectrum =
                    symmetric_spectrum(&s, crate::plap::SYMMETRY_TOL * s.max_abs().max(1.0))?;
                let min = spectrum.min().unwrap_or(0.0);
                spectra.insert(format!("down-diff:{km}-{lm}"), spectrum.eigenvalues);
                if min < -tol {
                    Verdict::Fail {
                        k: 1,
                        lhs: min,
                        rhs: 0.0,
                    }
                } else {
                    Verdict::Pass { compared: rh.n }
                }
            };
            push(Theorem::SurjectiveDownPsd, statement, true, verdict);
        }
        _ => push(
            Theorem::SurjectiveDownPsd,
            statement,
            true,
            skip("needs f and g surjective and weight preserving"),
        ),
    }

    // Padded up eigenvalues, for information.
    let statement = format!("up:{km} >= up:{lm}");
    let verdict = match (&data.g, &data.h) {
        (Some(_), Some(rh)) => compare_eigenvalues(
            &spectra[&format!("up:{km}")],
            &spectra[&format!("up:{lm}")],
            rh.n,
            tol,
        ),
        _ => skip("needs g and g∘f weight preserving"),
    };
    push(Theorem::PaddedUp, statement, false, verdict);

    Ok(TripleReport {
        index: i,
        spectra,
        checks,
    })
}

/// Kinds of random towers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TowerKind {
    /// Successive quotients collapsing vertex blocks; surjective and weight
    /// preserving, with weight-preserving composites.
    Collapse,
    /// Nested subcomplexes with inherited weights.
    Filtration,
    /// Collapses followed by codomain enlargements; maps are weight
    /// preserving, composites usually are not.
    CollapseExtend,
    /// Collapses alternating with inclusions into random supercomplexes.
    /// Collapses create cycles that the inclusions may fill.
    CollapseInclude,
}

/// Collapse into between half and all of the current vertices.
fn gentle_collapse(complex: &Arc<SimplicialComplex>, rng: &mut impl Rng) -> SimplicialMap {
    let n = complex.vertices().len();
    let blocks = rng.gen_range(n.div_ceil(2).max(1)..=n.max(1));
    let partition = random_partition(n, blocks, rng);
    collapse_map(complex, &partition, Some(rng.gen())).expect("random partition is valid")
}

/// A random tower of `maps` maps (at least 2) on at most `max_vertices` vertices.
pub fn random_tower(
    kind: TowerKind,
    maps: usize,
    max_vertices: usize,
    max_dim: usize,
    seed: u64,
) -> Tower {
    let mut rng = rng_from_seed(seed);
    let maps = maps.max(1);
    let n = rng.gen_range(3.min(max_vertices)..=max_vertices.max(1));
    // Sparse complexes have long paths, whose collapses create new cycles.
    let density = if kind == TowerKind::CollapseInclude {
        0.35
    } else {
        0.6
    };
    let k = Arc::new(random_complex_with(
        n,
        max_dim,
        density,
        WeightRange::default(),
        &mut rng,
    ));
    let mut out: Vec<SimplicialMap> = Vec::with_capacity(maps);
    match kind {
        TowerKind::Collapse | TowerKind::CollapseExtend => {
            let mut current = k;
            for _ in 0..maps {
                let mut f = gentle_collapse(&current, &mut rng);
                if kind == TowerKind::CollapseExtend && rng.gen_bool(0.7) {
                    let extra = rng.gen_range(0..=2);
                    f = extend_codomain(&f, extra, max_dim, 0.5, &mut rng);
                }
                current = f.codomain().clone();
                out.push(f);
            }
        }
        TowerKind::CollapseInclude => {
            let mut current = k;
            for step in 0..maps {
                let f = if step % 2 == 0 {
                    gentle_collapse(&current, &mut rng)
                } else {
                    let extra = rng.gen_range(0..=1);
                    let bigger = random_extension(
                        &current,
                        extra,
                        max_dim,
                        0.3,
                        WeightRange::default(),
                        &mut rng,
                    );
                    inclusion(current.clone(), Arc::new(bigger))
                        .expect("extension contains the complex")
                };
                current = f.codomain().clone();
                out.push(f);
            }
        }
        TowerKind::Filtration => {
            let chain: Vec<Arc<SimplicialComplex>> = random_filtration(&k, maps + 1, &mut rng)
                .into_iter()
                .map(Arc::new)
                .collect();
            for pair in chain.windows(2) {
                out.push(
                    inclusion(pair[0].clone(), pair[1].clone())
                        .expect("filtration steps are subcomplexes"),
                );
            }
        }
    }
    Tower::new(out).expect("generated maps compose")
}

/// A path `h-a-b-c` with a hollow triangle `pqr`, mapped by collapsing `h`
/// and `c` to `z` (closing the path into a cycle), then included into the
/// complex where both cycles are filled. At `q = 1` the padded up spectra are
/// `{0,0,0,0,0,3}` for `K -> M` and `{0,0,0,0,3,3}` for `L -> M`, while the
/// essential spectra `{3}` and `{3,3}` are monotone.
pub fn padded_up_counterexample() -> Tower {
    let one = || ratio(1, 1);
    let k = SimplicialComplex::from_labeled(
        &["h", "a", "b", "c", "p", "q", "r"],
        &[
            (&["h"], one()),
            (&["a"], one()),
            (&["b"], one()),
            (&["c"], one()),
            (&["p"], one()),
            (&["q"], one()),
            (&["r"], one()),
            (&["h", "a"], one()),
            (&["a", "b"], one()),
            (&["b", "c"], one()),
            (&["p", "q"], one()),
            (&["p", "r"], one()),
            (&["q", "r"], one()),
        ],
    )
    .expect("valid complex");
    let l_simplices = |filled: bool| {
        let mut s: Vec<(&[&str], _)> = vec![
            (&["z"], ratio(2, 1)),
            (&["a"], one()),
            (&["b"], one()),
            (&["p"], one()),
            (&["q"], one()),
            (&["r"], one()),
            (&["z", "a"], one()),
            (&["a", "b"], one()),
            (&["b", "z"], one()),
            (&["p", "q"], one()),
            (&["p", "r"], one()),
            (&["q", "r"], one()),
        ];
        if filled {
            s.push((&["z", "a", "b"], one()));
            s.push((&["p", "q", "r"], one()));
        }
        SimplicialComplex::from_labeled(&["z", "a", "b", "p", "q", "r"], &s).expect("valid complex")
    };
    let (k, l, m) = (
        Arc::new(k),
        Arc::new(l_simplices(false)),
        Arc::new(l_simplices(true)),
    );
    let f = SimplicialMap::from_labels(
        k,
        l.clone(),
        &[
            ("h", "z"),
            ("a", "a"),
            ("b", "b"),
            ("c", "z"),
            ("p", "p"),
            ("q", "q"),
            ("r", "r"),
        ],
    )
    .expect("valid map");
    let g = inclusion(l, m).expect("valid inclusion");
    Tower::new(vec![f, g]).expect("maps compose")
}

/// Searches random collapse-then-include towers for one where the padded up
/// eigenvalues violate monotonicity in dimension `q` while every asserted
/// check passes. Returns the seed and its report.
pub fn find_padded_up_violation(
    q: usize,
    first_seed: u64,
    attempts: u64,
) -> Result<Option<(u64, Tower, MonotonicityReport)>> {
    for seed in first_seed..first_seed + attempts {
        let tower = random_tower(TowerKind::CollapseInclude, 2, 7, 2, seed);
        let report = monotonicity_report(&tower, q)?;
        let padded_fails = report
            .verdicts(Theorem::PaddedUp)
            .iter()
            .any(|v| v.is_fail());
        let ess_passes = report
            .verdicts(Theorem::EssentialUpMonotone)
            .iter()
            .all(|v| v.is_pass());
        if padded_fails && ess_passes && report.passed() {
            return Ok(Some((seed, tower, report)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::check_weight_preserving;
    use crate::fixtures;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
    }

    #[test]
    fn fig5_composite_not_wp() {
        let (f, g) = (fixtures::fig5_f(), fixtures::fig5_g());
        let h = compose(&f, &g).unwrap();
        assert!(check_weight_preserving(&f, 1).is_ok() && check_weight_preserving(&g, 1).is_ok());
        let report = check_weight_preserving(&h, 1);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].simplex, "xy");
        assert_eq!(h, fixtures::fig5_composition());
        let tower = Tower::new(vec![f, g]).unwrap();
        let status = tower.wp_status().unwrap();
        assert_eq!(
            status
                .iter()
                .map(|s| s.weight_preserving)
                .collect::<Vec<_>>(),
            [true, false, true]
        );
    }

    #[test]
    fn compose_with_identity_and_mismatch() {
        let f = fixtures::fig2();
        let id = SimplicialMap::identity(f.codomain().clone());
        assert_eq!(compose(&f, &id).unwrap(), f);
        assert!(matches!(compose(&f, &f), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn collapse_composites_stay_wp() {
        for seed in 0..10 {
            let tower = random_tower(TowerKind::Collapse, 3, 7, 2, seed);
            assert!(tower
                .wp_status()
                .unwrap()
                .iter()
                .all(|s| s.weight_preserving));
        }
    }

    #[test]
    fn single_map_has_no_triples() {
        let tower = Tower::new(vec![fixtures::fig2()]).unwrap();
        let report = monotonicity_report(&tower, 1).unwrap();
        assert!(report.triples.is_empty() && report.passed());
    }

    #[test]
    fn counterexample_spectra() {
        let report = monotonicity_report(&padded_up_counterexample(), 1).unwrap();
        let t = &report.triples[0];
        assert!(close(
            &t.spectra["up:K0,K2"],
            &[0.0, 0.0, 0.0, 0.0, 0.0, 3.0]
        ));
        assert!(close(
            &t.spectra["up:K1,K2"],
            &[0.0, 0.0, 0.0, 0.0, 3.0, 3.0]
        ));
        assert!(close(&t.spectra["ess-up:K0,K2"], &[3.0]));
        assert!(close(&t.spectra["ess-up:K1,K2"], &[3.0, 3.0]));
        assert!(report.verdicts(Theorem::PaddedUp)[0].is_fail());
        assert!(report.verdicts(Theorem::EssentialUpMonotone)[0].is_pass());
        assert!(report.passed());
    }

    #[test]
    fn search_finds_padded_violation() {
        let (_, _, report) = find_padded_up_violation(1, 0, 200)
            .unwrap()
            .expect("a violation within 200 seeds");
        assert!(report.passed());
    }

    #[test]
    fn random_towers_are_monotone() {
        for seed in 0..8 {
            for kind in [
                TowerKind::Collapse,
                TowerKind::Filtration,
                TowerKind::CollapseExtend,
                TowerKind::CollapseInclude,
            ] {
                let tower = random_tower(kind, 2, 6, 2, seed);
                for q in 0..2 {
                    let report = monotonicity_report(&tower, q).unwrap();
                    assert!(report.passed(), "{kind:?} seed {seed} q {q}: {report:#?}");
                }
            }
        }
    }
}
