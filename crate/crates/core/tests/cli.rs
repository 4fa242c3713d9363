//! End-to-end runs of the `plap` binary on files written to a temporary directory.

use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn plap(args: &[&str]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_plap"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8(output.stdout).unwrap(),
        String::from_utf8(output.stderr).unwrap(),
    )
}

fn fixture_dir() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = plap(&["fixtures", "--write", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("fig2-KL.json"));
    dir
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).display().to_string()
}

#[test]
fn betti_on_written_fixture() {
    let dir = fixture_dir();
    let (code, out, _) = plap(&[
        "betti",
        "--map",
        &path(dir.path(), "fig2-KL.json"),
        "--q",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"q":1,"betti":0,"nullity":0}"#);
    let (code, out, _) = plap(&[
        "betti",
        "--map",
        &path(dir.path(), "fig3-KpLp.json"),
        "--q",
        "1",
        "--self-check",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"q":1,"betti":1,"nullity":1}"#);
}

#[test]
fn laplacian_matrix_as_rational_strings() {
    let (code, out, _) = plap(&[
        "laplacian",
        "--map",
        "fixture:fig2-KL",
        "--q",
        "1",
        "--which",
        "full",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["basis"], serde_json::json!(["xy", "xz", "yz"]));
    assert_eq!(
        v["matrix"],
        serde_json::json!([["7/2", "1", "0"], ["1/2", "3", "0"], ["0", "0", "5/2"]])
    );
    let (code, out, _) = plap(&[
        "laplacian",
        "--map",
        "fixture:fig2-KL",
        "--q",
        "1",
        "--which",
        "ess-up",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["matrix"], serde_json::json!([["5/2"]]));
}

#[test]
fn laplacian_range_and_formats() {
    let (code, out, _) = plap(&[
        "laplacian",
        "--map",
        "fixture:fig2-KL",
        "--q",
        "0-1",
        "--jobs",
        "2",
        "--self-check",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    let (code, out, _) = plap(&[
        "laplacian",
        "--map",
        "fixture:fig2-KL",
        "--q",
        "1",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("q,row,col,value\n1,0,0,7/2\n"));
    let (code, out, _) = plap(&[
        "laplacian",
        "--map",
        "fixture:fig2-KL",
        "--q",
        "1",
        "--details",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["up"]["SchQ"], serde_json::json!([["5/2"]]));
    let (code, out, _) = plap(&[
        "laplacian",
        "--map",
        "fixture:fig2-KL",
        "--q",
        "1",
        "--backend",
        "float",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["matrix"][0][0], serde_json::json!(3.5));
}

#[test]
fn check_wp_lists_violation() {
    let (code, out, _) = plap(&["check-wp", "--map", "fixture:fig5-composition"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["weight_preserving"], Value::Bool(false));
    let q1 = &v["dimensions"][1];
    assert_eq!(q1["violations"][0]["simplex"], "xy");
    assert_eq!(q1["violations"][0]["codomain_weight"], "2");
    assert_eq!(q1["violations"][0]["preimage_sum"], "1");
    let (code, out, _) = plap(&["check-wp", "--map", "fixture:fig5-f", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "q,simplex,codomain_weight,preimage_sum\n");
}

#[test]
fn non_weight_preserving_laplacian_is_an_input_error() {
    let (code, _, err) = plap(&["laplacian", "--map", "fixture:fig5-composition", "--q", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("not weight preserving"), "{err}");
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn spectrum_of_fixture() {
    let (code, out, _) = plap(&[
        "spectrum",
        "--map",
        "fixture:fig2-KL",
        "--q",
        "1",
        "--self-check",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let eig: Vec<f64> = v["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    for (a, b) in eig.iter().zip([2.5, 2.5, 4.0]) {
        assert!((a - b).abs() < 1e-9);
    }
    let (code, _, _) = plap(&["spectrum", "--map", "fixture:fig2-KL", "--backend", "exact"]);
    assert_eq!(code, 1);
}

#[test]
fn tower_reports() {
    let dir = fixture_dir();
    let (f, g) = (
        path(dir.path(), "fig5-f.json"),
        path(dir.path(), "fig5-g.json"),
    );
    let (code, out, _) = plap(&["tower", &f, &g, "--report", "wp"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[1]["from"], 0);
    assert_eq!(v[1]["to"], 2);
    assert_eq!(v[1]["weight_preserving"], Value::Bool(false));
    let (code, out, _) = plap(&["tower", &f, &g, "--q", "1", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.contains("down-monotone"));
    assert!(out.contains("skipped: needs f, g and g∘f weight preserving"));
    let (code, _, err) = plap(&["tower", &g, &f]);
    assert_eq!(code, 1);
    assert!(err.contains("not the domain"), "{err}");
}

#[test]
fn oracles() {
    let (code, out, _) = plap(&["oracle", "betti", "--map", "fixture:fig3-KpLp", "--q", "1"]);
    assert_eq!((code, out.trim()), (0, r#"{"q":1,"betti":1}"#));
    let (code, out, _) = plap(&["oracle", "cochain", "--map", "fixture:fig2-KL"]);
    assert_eq!(code, 0);
    assert!(!out.contains("false"));
    let (code, out, _) = plap(&["oracle", "schur", "--map", "fixture:fig2-KL", "--q", "1"]);
    assert_eq!(code, 0);
    assert_eq!(
        out.trim(),
        r#"{"q":1,"down":true,"up":true,"essential_dim":1}"#
    );
    let (code, _, _) = plap(&["oracle", "schur", "--seed", "3", "--trials", "10"]);
    assert_eq!(code, 0);
}

#[test]
fn validate_inputs() {
    let dir = fixture_dir();
    let (code, out, _) = plap(&["validate", "--complex", &path(dir.path(), "fig2-L.json")]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"vertices":3,"dim":2,"simplices":[3,3,1]}"#);
    let (code, out, _) = plap(&["validate", "--map", "fixture:fig2-KL"]);
    assert_eq!(code, 0);
    assert!(out.contains(r#""weight_preserving":true"#));

    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"vertices":["a","b"],"simplices":[{"verts":["a","b"],"weight":1}]}"#,
    )
    .unwrap();
    let (code, _, err) = plap(&["validate", "--complex", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"), "{err}");

    std::fs::write(&bad, "{not json").unwrap();
    let (code, _, _) = plap(&["validate", "--complex", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    let (code, _, err) = plap(&["validate", "--complex", &path(dir.path(), "missing.json")]);
    assert_eq!(code, 1);
    assert!(err.contains("missing.json"));
}

#[test]
fn usage_errors() {
    assert_eq!(plap(&["frobnicate"]).0, 1);
    assert_eq!(plap(&["betti"]).0, 1);
    assert_eq!(
        plap(&["betti", "--map", "fixture:fig2-KL", "--q", "x"]).0,
        1
    );
    assert_eq!(
        plap(&["betti", "--map", "fixture:fig2-KL", "--backend", "float"]).0,
        1
    );
    assert_eq!(plap(&["betti", "--map", "fixture:nope"]).0, 1);
    assert_eq!(
        plap(&["betti", "--map", "fixture:fig2-KL", "--tol", "0"]).0,
        1
    );
    assert_eq!(
        plap(&[
            "oracle",
            "betti",
            "--map",
            "fixture:fig2-KL",
            "--format",
            "pretty"
        ])
        .0,
        0
    );
    let (code, out, _) = plap(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("laplacian"));
}

#[test]
fn fixture_listing() {
    let (code, out, _) = plap(&["fixtures"]);
    assert_eq!(code, 0);
    let names: Vec<String> = serde_json::from_str(&out).unwrap();
    assert_eq!(&names[..3], ["fig2-KL", "fig3-KpLp", "fig5-composition"]);
}
