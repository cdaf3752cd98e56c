use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chp-pack"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn error_kind(o: &Output) -> String {
    let v: Value = serde_json::from_slice(&o.stderr).expect("stderr is JSON");
    assert!(v["message"].is_string());
    v["error"].as_str().unwrap().to_string()
}

/// Same structure, floats within `tol`.
fn json_close(a: &Value, b: &Value, tol: f64) -> bool {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => (x.as_f64().unwrap() - y.as_f64().unwrap()).abs() <= tol,
        (Value::Array(x), Value::Array(y)) => x.len() == y.len() && x.iter().zip(y).all(|(p, q)| json_close(p, q, tol)),
        (Value::Object(x), Value::Object(y)) => {
            x.len() == y.len() && x.iter().all(|(k, v)| y.get(k).is_some_and(|w| json_close(v, w, tol)))
        }
        _ => a == b,
    }
}

#[test]
fn count_matches_table() {
    let o = run(&["count", "--sigma", "12", "--k", "6"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "10");
}

#[test]
fn density_prints_twelve_digits() {
    let o = run(&["density", "--sigma", "12", "--k", "23"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("0.836837494"), "{text}");
    assert_eq!(text.trim().len(), "0.".len() + 12);
}

#[test]
fn enumerate_lists_canonical_dnas() {
    let o = run(&["enumerate", "--sigma", "12", "--k", "4"]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines, ["aabb", "abab", "abba"]);

    let capped = run(&["enumerate", "--sigma", "12", "--k", "8", "--limit", "3"]);
    assert_eq!(capped.status.code(), Some(3));
    assert_eq!(error_kind(&capped), "CapExceeded");
}

#[test]
fn solve_reports_border() {
    let o = run(&["solve", "--sigma", "18", "--k", "3"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sigma"], 18);
    assert_eq!(v["phi"].as_array().unwrap().len(), 3);
    assert_eq!(v["points"].as_array().unwrap().len(), 4);
}

#[test]
fn build_matches_golden_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let o = run(&["build", "--sigma", "12", "--k", "2", "--dna", "ab", "-o", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let got: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let want: Value = serde_json::from_str(&std::fs::read_to_string(data("build_s12_k2.json")).unwrap()).unwrap();
    // last-bit differences between libm implementations are tolerated
    assert!(json_close(&got, &want, 1e-14));

    let default = run(&["build", "--sigma", "12", "--k", "2"]);
    let v: Value = serde_json::from_slice(&default.stdout).unwrap();
    assert_eq!(v["dna"], "ab");
}

#[test]
fn render_matches_golden_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.svg");
    let input = data("build_s12_k2.json");
    let o = run(&[
        "render",
        "-i",
        input.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
        "--contacts",
        "--fundamental",
    ]);
    assert!(o.status.success());
    let got = std::fs::read_to_string(&out).unwrap();
    assert_eq!(got, std::fs::read_to_string(data("build_s12_k2.svg")).unwrap());
    assert_eq!(got.matches("<circle ").count(), 19);
}

#[test]
fn validate_exit_codes() {
    let input = data("build_s12_k2.json");
    let o = run(&["validate", "-i", input.to_str().unwrap()]);
    assert!(o.status.success());
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["is_valid"], true);

    // push one disk onto its neighbor
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&input).unwrap()).unwrap();
    v["centers"][1] = serde_json::json!([0.0, -0.3]);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let o = run(&["validate", "-i", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["is_valid"], false);
}

#[test]
fn bad_files_report_kind() {
    let dir = tempfile::tempdir().unwrap();
    let wrong = dir.path().join("wrong.json");
    let text = std::fs::read_to_string(data("build_s12_k2.json")).unwrap().replace("chp-pack/1", "chp-pack/9");
    std::fs::write(&wrong, text).unwrap();
    let o = run(&["validate", "-i", wrong.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_kind(&o), "SchemaMismatch");

    let missing = run(&["render", "-i", dir.path().join("none.json").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(3));
    assert_eq!(error_kind(&missing), "Io");
}

#[test]
fn bad_arguments_exit_two() {
    for args in [
        &["count", "--sigma", "12"][..],
        &["frobnicate"],
        &["density", "--sigma", "twelve", "--k", "2"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert_eq!(error_kind(&o), "BadArguments");
    }
    let o = run(&["count", "--sigma", "14", "--k", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_kind(&o), "NotMultipleOfSix");
    assert!(run(&["--help"]).status.success());
}

#[test]
fn tables_subset_matches_counts() {
    let o = run(&["tables", "--sigma-list", "12,18", "--k-max", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 6);
    assert!(lines[0].starts_with("sigma,k,"));
    for row in &lines[1..] {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells[cells.len() - 1], cells[cells.len() - 2], "{row}");
    }
}

#[test]
fn pack_is_deterministic_given_seed() {
    let args = [
        "pack", "--sigma", "6", "--n", "7", "--seed", "5", "--trials", "3", "--s-final", "1e5",
    ];
    let a = run(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let b = bin().args(args).env("CHP_PACK_THREADS", "1").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["n_disks"], 7);
    assert_eq!(v["provenance"]["mode"], "algorithm1");
}

#[test]
fn shake_streams_monotone_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("shaken.json");
    let input = data("build_s12_k2.json");
    let o = run(&[
        "shake",
        "-i",
        input.to_str().unwrap(),
        "--trials",
        "2",
        "--pin",
        "border",
        "--seed",
        "3",
        "--s-final",
        "1e5",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("trial,rung,s,min_distance,density"));
    let rows: Vec<Vec<f64>> =
        lines.map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.len() == 5 && r[4] > 0.0 && r[4] < 1.0));

    let before: Value = serde_json::from_str(&std::fs::read_to_string(&input).unwrap()).unwrap();
    let after: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(after["diameter"].as_f64().unwrap() >= before["diameter"].as_f64().unwrap() * (1.0 - 1e-12));
}
