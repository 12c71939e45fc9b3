use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use proctensor::io::{write_choi, ProcessSpecFile};
use proctensor::linalg::{identity, ComplexVector, DensityMatrix, Shape, C64};
use proctensor::process::{cnot_swap_circuit, swap_chain_circuit, CircuitProcessSpec};

fn proctensor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_proctensor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn write_spec(dir: &Path, name: &str, spec: &CircuitProcessSpec) -> String {
    let path = dir.join(name);
    std::fs::write(&path, ProcessSpecFile::from_circuit(spec).to_json()).unwrap();
    path.to_string_lossy().into_owned()
}

fn write_choi_file(dir: &Path, name: &str, state: &DensityMatrix, n: usize, d: usize) -> String {
    let path = dir.join(name);
    std::fs::write(&path, write_choi(state, n, d).unwrap()).unwrap();
    path.to_string_lossy().into_owned()
}

fn close(v: &Value, expected: f64) -> bool {
    (v.as_f64().unwrap() - expected).abs() <= 1e-8
}

#[test]
fn analyze_cnot_swap_spec() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "cnot_swap.json", &cnot_swap_circuit().unwrap());
    let out = proctensor(&["analyze", "--in", &spec]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    let ln2 = 2f64.ln();
    assert!(close(&doc["correlations"]["N"], 2.0 * ln2));
    assert!(close(&doc["correlations"]["I"], 3.0 * ln2));
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["causality"]["pass"], true);
    assert_eq!(doc["bounds"]["pass"], true);
    assert_eq!(doc["crosscheck"]["pass"], true);
}

#[test]
fn analyze_identity_two_step_spec() {
    let dir = tempfile::tempdir().unwrap();
    let env = DensityMatrix::basis(2, 0).unwrap();
    let spec = CircuitProcessSpec::new(2, env, vec![identity(4), identity(4)]).unwrap();
    let path = write_spec(dir.path(), "identity.json", &spec);
    let out = proctensor(&["analyze", "--in", &path]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert!(close(&doc["correlations"]["N"], 0.0));
    assert!(close(&doc["correlations"]["I"], 4.0 * 2f64.ln()));
}

#[test]
fn non_unitary_spec_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"n": 1, "d": 2, "d_env": 1, "env_init": "pure-ground",
            "unitaries": [{"re": [[1, 0], [0, 2]], "im": [[0, 0], [0, 0]]}]}"#,
    )
    .unwrap();
    let out = proctensor(&["analyze", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("unitaries[0]"), "{stderr}");
}

#[test]
fn malformed_spec_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"n": 2, "d": "two", "d_env": 2, "seed": 1}"#).unwrap();
    let out = proctensor(&["verify", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("field `d`"));

    std::fs::write(&path, r#"{"n": 2, "d": 2, "d_env": 2}"#).unwrap();
    let out = proctensor(&["verify", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`seed`"));
}

#[test]
fn verify_swap_chain_spec_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_spec(dir.path(), "chain.json", &swap_chain_circuit(3, 2).unwrap());
    let out = proctensor(&["verify", "--in", &path]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["residuals"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_flags_maximally_entangled_four_party_state() {
    // Φ between (i0 o1) and (i1 o2): I(i0 o1 : i1 o2) = 4 ln 2
    let mut psi = ComplexVector::zeros(16);
    for k in 0..4 {
        psi[k * 4 + k] = C64::new(0.5, 0.0);
    }
    let state = DensityMatrix::pure(&psi, Shape::new(vec![2; 4]).unwrap()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = write_choi_file(dir.path(), "phi.choi", &state, 2, 2);
    let out = proctensor(&["verify", "--in", &path]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json_of(&out);
    assert_eq!(doc["pass"], false);
    // the outermost condition, tr_{o2} Υ = Υ_{1:1} ⊗ I/d, is the one that breaks
    assert_eq!(doc["failing_levels"], serde_json::json!([2]));
    assert!(doc["residuals"][1].as_f64().unwrap() > 0.1);

    let out = proctensor(&["analyze", "--in", &path]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json_of(&out);
    assert!(close(&doc["correlations"]["N"], 4.0 * 2f64.ln()));
    assert_eq!(doc["bounds"]["pass"], false);
}

#[test]
fn verify_maximally_mixed_choi_file_passes() {
    let dir = tempfile::tempdir().unwrap();
    let state = DensityMatrix::maximally_mixed(&[2; 6]).unwrap();
    let path = write_choi_file(dir.path(), "mixed.choi", &state, 3, 2);
    let out = proctensor(&["verify", "--in", &path]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["pass"], true);
}

#[test]
fn sweep_is_byte_stable_and_matches_endpoints() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = proctensor(&["sweep-depolarizing", "--d", "2", "--grid", "101", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(!text.contains('\r'));
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 101);
    assert_eq!(rows[0][0], 0.0);
    assert!((rows[0][1] - 2.0 * 2f64.ln()).abs() < 1e-12);
    assert_eq!(rows[100][0], 1.0);
    assert!(rows[100][1].abs() < 1e-12);
    assert_eq!(rows[50][0], 0.5);
    assert!((rows[50][1] - 0.31275).abs() < 1e-5);
    assert!(rows.windows(2).all(|w| w[1][1] <= w[0][1] + 1e-12));
}

#[test]
fn sweep_over_several_dimensions() {
    let out = proctensor(&["sweep-depolarizing", "--d", "2,3,4", "--grid", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 3 * 5);
    let fig2 = proctensor(&["emit-figure", "fig2", "--d", "2,3,4", "--grid", "5"]);
    assert_eq!(String::from_utf8(fig2.stdout).unwrap(), text);
}

#[test]
fn figure6_rows() {
    let out = proctensor(&["emit-figure", "fig6", "--grid", "21"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,M1,M2,N,I"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 21);
    let ln2 = 2f64.ln();
    let expect = |row: &[f64], want: [f64; 4]| {
        for (got, want) in row[1..].iter().zip(want) {
            assert!((got - want).abs() < 1e-8, "{row:?}");
        }
    };
    expect(&rows[0], [2.0 * ln2, 2.0 * ln2, 0.0, 4.0 * ln2]);
    expect(&rows[20], [0.0, 0.0, 2.0 * ln2, 2.0 * ln2]);
    assert!(rows.iter().all(|r| (r[1] - r[2]).abs() < 1e-8));
}

#[test]
fn audit_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = proctensor(&["audit-random", "--samples", "40", "--n", "2", "--seed", "7", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(String::from_utf8_lossy(&out.stderr).contains("40 samples"));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let doc: Value = serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    assert_eq!(doc["violations"], 0);
    assert!(doc["bounds"]["two_step_1"]["min_slack"].as_f64().unwrap() >= -1e-8);
}

#[test]
fn audit_at_one_step() {
    let out = proctensor(&["audit-random", "--samples", "25", "--n", "1", "--denv", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json_of(&out)["max_N"].as_f64().unwrap().abs() < 1e-10);
}

#[test]
fn unwritable_output_reports_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let out = proctensor(&["sweep-depolarizing", "--grid", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing"));
}

#[test]
fn dimension_limit_is_configurable() {
    let out = Command::new(env!("CARGO_BIN_EXE_proctensor"))
        .args(["audit-random", "--samples", "1", "--n", "2", "--denv", "2"])
        .env("PROCTENSOR_MAX_DIM", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dense limit"));
}

#[test]
fn unknown_command_is_a_usage_error() {
    assert_eq!(proctensor(&["plot"]).status.code(), Some(2));
    assert_eq!(proctensor(&["verify"]).status.code(), Some(2));
    assert_eq!(proctensor(&["--help"]).status.code(), Some(0));
}
