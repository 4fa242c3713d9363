//! JSON file formats for complexes and maps.
//!
//! Complex: `{"vertices":["a","b"],"simplices":[{"verts":["a"],"weight":"1"}, ...]}`
//! with weights given as JSON numbers or as `"p/q"` / decimal strings.
//! Map: `{"domain":"K.json","codomain":"L.json","vertex_map":{"a":"x"}}`,
//! with complex paths resolved relative to the map file.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use num_traits::FromPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{SimplicialComplex, SimplicialMap};
use crate::error::{Error, Result};
use crate::linalg::{parse_rational, Rational};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    vertices: Vec<String>,
    simplices: Vec<SimplexEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimplexEntry {
    verts: Vec<String>,
    weight: Value,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub domain: String,
    pub codomain: String,
    pub vertex_map: BTreeMap<String, String>,
}

fn parse_weight(value: &Value) -> Result<Rational> {
    match value {
        Value::String(s) => parse_rational(s)
            .ok_or_else(|| Error::Parse(format!("weight {s:?} is not a rational number"))),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i.into()))
            } else {
                // Floats are taken at their exact binary value.
                n.as_f64()
                    .and_then(Rational::from_f64)
                    .ok_or_else(|| Error::Parse(format!("weight {n} is not finite")))
            }
        }
        other => Err(Error::Parse(format!(
            "weight must be a number or string, got {other}"
        ))),
    }
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let file: ComplexFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let simplices = file
        .simplices
        .iter()
        .map(|entry| Ok((entry.verts.as_slice(), parse_weight(&entry.weight)?)))
        .collect::<Result<Vec<_>>>()?;
    SimplicialComplex::from_labeled(&file.vertices, &simplices)
}

/// Serializes with weights as exact `"p/q"` strings, in canonical order.
pub fn serialize_complex(complex: &SimplicialComplex) -> String {
    let file = ComplexFile {
        vertices: complex.vertices().to_vec(),
        simplices: complex
            .iter()
            .map(|(s, w)| SimplexEntry {
                verts: s.iter().map(|&v| complex.vertices()[v].clone()).collect(),
                weight: Value::String(w.to_string()),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("complex serializes")
}

pub fn read_complex(path: &Path) -> Result<SimplicialComplex> {
    parse_complex(&read_text(path)?)
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn parse_map_file(text: &str) -> Result<MapFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Builds a map from a parsed map file, given the two complexes it names.
pub fn map_from_file(
    file: &MapFile,
    domain: Arc<SimplicialComplex>,
    codomain: Arc<SimplicialComplex>,
) -> Result<SimplicialMap> {
    let pairs: Vec<(&str, &str)> = file
        .vertex_map
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    SimplicialMap::from_labels(domain, codomain, &pairs)
}

/// Reads a map file and the complex files it references.
pub fn read_map(path: &Path) -> Result<SimplicialMap> {
    let file = parse_map_file(&read_text(path)?)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let domain = Arc::new(read_complex(&base.join(&file.domain))?);
    let codomain = if file.codomain == file.domain {
        domain.clone()
    } else {
        Arc::new(read_complex(&base.join(&file.codomain))?)
    };
    map_from_file(&file, domain, codomain)
}

pub fn serialize_map(f: &SimplicialMap, domain_path: &str, codomain_path: &str) -> String {
    let vertex_map = f
        .vertex_map()
        .iter()
        .enumerate()
        .map(|(i, &j)| {
            (
                f.domain().vertices()[i].clone(),
                f.codomain().vertices()[j].clone(),
            )
        })
        .collect();
    let file = MapFile {
        domain: domain_path.into(),
        codomain: codomain_path.into(),
        vertex_map,
    };
    serde_json::to_string_pretty(&file).expect("map serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;

    #[test]
    fn parses_numbers_and_strings() {
        let text = r#"{"vertices":["a","b"],"simplices":[
            {"verts":["a"],"weight":1},
            {"verts":["b"],"weight":"0.25"},
            {"verts":["b","a"],"weight":"3/2"}]}"#;
        let k = parse_complex(text).unwrap();
        assert_eq!(k.weight(&[1]), Some(&ratio(1, 4)));
        assert_eq!(k.weight(&[0, 1]), Some(&ratio(3, 2)));
    }

    #[test]
    fn float_weights_are_exact_binary_values() {
        let k = parse_complex(r#"{"vertices":["a"],"simplices":[{"verts":["a"],"weight":0.1}]}"#)
            .unwrap();
        let w = k.weight(&[0]).unwrap();
        assert_ne!(w, &ratio(1, 10));
        assert_eq!(w, &Rational::from_f64(0.1).unwrap());
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(parse_complex("{"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_complex(r#"{"vertices":["a"],"simplices":[{"verts":["a"],"weight":"x"}]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_complex(
                r#"{"vertices":["a","b"],"simplices":[{"verts":["a"],"weight":1},{"verts":["a","b"],"weight":1}]}"#
            ),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn round_trip() {
        let text = r#"{"vertices":["u","v","w"],"simplices":[
            {"verts":["u"],"weight":"1/3"},{"verts":["v"],"weight":2},{"verts":["w"],"weight":"7"},
            {"verts":["u","v"],"weight":"5/4"},{"verts":["v","w"],"weight":1},{"verts":["u","w"],"weight":1},
            {"verts":["u","v","w"],"weight":"9/8"}]}"#;
        let k = parse_complex(text).unwrap();
        assert_eq!(parse_complex(&serialize_complex(&k)).unwrap(), k);
    }
}
