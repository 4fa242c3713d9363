//! Built-in example maps.
//!
//! * `fig2-KL`: a four-vertex graph `K` (a, b, c, d; edges ab, ac, ad, bc, bd;
//!   unit weights) mapped onto a filled triangle `L` (x, y, z) by
//!   `a↦x, b↦y, c↦z, d↦y`, with `w(y) = w(xy) = 2`.
//! * `fig3-KpLp`: the same map into the hollow triangle.
//! * `fig5-composition`: two weight-preserving maps `K -> L -> M` whose
//!   composite is not weight preserving.

use std::path::Path;
use std::sync::Arc;

use crate::complex::io::{map_from_file, parse_complex, parse_map_file};
use crate::complex::SimplicialMap;
use crate::error::{Error, Result};

/// Every embedded file, by file name.
pub const FILES: &[(&str, &str)] = &[
    ("fig2-K.json", include_str!("../fixtures/fig2-K.json")),
    ("fig2-L.json", include_str!("../fixtures/fig2-L.json")),
    ("fig2-KL.json", include_str!("../fixtures/fig2-KL.json")),
    ("fig3-Lp.json", include_str!("../fixtures/fig3-Lp.json")),
    ("fig3-KpLp.json", include_str!("../fixtures/fig3-KpLp.json")),
    ("fig5-K.json", include_str!("../fixtures/fig5-K.json")),
    ("fig5-L.json", include_str!("../fixtures/fig5-L.json")),
    ("fig5-M.json", include_str!("../fixtures/fig5-M.json")),
    ("fig5-f.json", include_str!("../fixtures/fig5-f.json")),
    ("fig5-g.json", include_str!("../fixtures/fig5-g.json")),
    (
        "fig5-composition.json",
        include_str!("../fixtures/fig5-composition.json"),
    ),
];

/// Maps addressable as `fixture:<name>`; the first three are the listed fixtures.
const MAPS: &[&str] = &[
    "fig2-KL",
    "fig3-KpLp",
    "fig5-composition",
    "fig5-f",
    "fig5-g",
];

pub fn list_fixtures() -> Vec<&'static str> {
    MAPS[..3].to_vec()
}

/// Names accepted by [`fixture_map`].
pub fn map_names() -> &'static [&'static str] {
    MAPS
}

fn file(name: &str) -> Option<&'static str> {
    FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
}

pub fn fixture_map(name: &str) -> Result<SimplicialMap> {
    let text = MAPS
        .contains(&name)
        .then(|| file(&format!("{name}.json")))
        .flatten()
        .ok_or_else(|| {
            Error::Parse(format!(
                "unknown fixture {name:?}; available: {}",
                MAPS.join(", ")
            ))
        })?;
    let spec = parse_map_file(text)?;
    let load = |f: &str| -> Result<_> {
        let text = file(f).ok_or_else(|| Error::Parse(format!("fixture file {f} missing")))?;
        Ok(Arc::new(parse_complex(text)?))
    };
    map_from_file(&spec, load(&spec.domain)?, load(&spec.codomain)?)
}

/// Writes every fixture file into `dir`.
pub fn write_fixtures(dir: &Path) -> Result<Vec<String>> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let mut written = Vec::new();
    for (name, text) in FILES {
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        written.push(path.display().to_string());
    }
    Ok(written)
}

fn load(name: &str) -> SimplicialMap {
    fixture_map(name).expect("embedded fixtures are valid")
}

pub fn fig2() -> SimplicialMap {
    load("fig2-KL")
}

pub fn fig3() -> SimplicialMap {
    load("fig3-KpLp")
}

pub fn fig5_f() -> SimplicialMap {
    load("fig5-f")
}

pub fn fig5_g() -> SimplicialMap {
    load("fig5-g")
}

pub fn fig5_composition() -> SimplicialMap {
    load("fig5-composition")
}
