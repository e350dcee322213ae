//! End-to-end tests of the `bzeta` binary: exit codes, report contents,
//! round-tripping and determinism.

use std::path::Path;
use std::process::{Command, Output};

use building_zeta_cli::report::Report;
use serde_json::Value;
use tempfile::TempDir;

fn bzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bzeta"))
        .args(args)
        .output()
        .expect("bzeta runs")
}

fn write_config(dir: &TempDir, name: &str, json: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

fn run_json(config: &str) -> (i32, String, String) {
    let out = bzeta(&["run", "--config", config]);
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn poly(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|c| c.as_str().unwrap().to_string()).collect()
}

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

#[test]
fn all_checks_on_the_two_cycle() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "c.json",
        r#"{"n": 2, "gamma": {"kind": "translation", "basis": [[2]]}, "maxDegree": 12}"#,
    );
    let (code, stdout, stderr) = run_json(&cfg);
    // the two-cycle has a double edge, so the defaulted cycle oracle is skipped
    assert_eq!(code, 0, "{stderr}");
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert!(v["checks"].get("ihara").is_none());
    assert!(v["skipped"]["ihara"].as_str().unwrap().contains("multiple edges"));
    assert_eq!(v["checks"].as_object().unwrap().len(), 7);

    // requested explicitly, it is a configuration error
    let cfg = write_config(
        &dir,
        "e.json",
        r#"{"n": 2, "gamma": {"kind": "translation", "basis": [[2]]}, "maxDegree": 12, "checks": ["ihara"]}"#,
    );
    let (code, _, stderr) = run_json(&cfg);
    assert_eq!(code, 2);
    assert!(stderr.contains("ihara"), "{stderr}");

    let cfg = write_config(
        &dir,
        "d.json",
        r#"{"n": 2, "gamma": {"kind": "translation", "basis": [[2]]}, "maxDegree": 12,
            "checks": ["positive_zeta", "lfunction", "geodesic_oracle", "invariants",
                       "selberg_series", "selberg_rational", "comparison"]}"#,
    );
    let (code, stdout, stderr) = run_json(&cfg);
    assert_eq!(code, 0, "{stderr}");
    let v: Value = serde_json::from_str(&stdout).unwrap();
    let want = strings(&["1", "0", "-2", "0", "1"]);
    assert_eq!(poly(&v["checks"]["positive_zeta"]["determinant"]), want);
    assert_eq!(poly(&v["checks"]["positive_zeta"]["orders_product"]), want);
    assert_eq!(poly(&v["checks"]["lfunction"]["polynomial"]), want);
    assert_eq!(poly(&v["checks"]["geodesic_oracle"]["euler_product"]), want);
    assert_eq!(v["passed"], Value::Bool(true));
    let rational = &v["checks"]["selberg_rational"]["rational"];
    assert_eq!(rational["denominator_factors"], serde_json::json!([[2]]));
}

#[test]
fn type_violation_exits_2_and_names_the_generator() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "bad.json",
        r#"{"n": 3, "gamma": {"kind": "translation", "basis": [[1, 0], [0, 3]]}, "maxDegree": 4}"#,
    );
    let (code, _, stderr) = run_json(&cfg);
    assert_eq!(code, 2);
    assert!(stderr.contains("gamma.basis") && stderr.contains("(1,0,0)"), "{stderr}");
}

#[test]
fn malformed_config_exits_2() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "bad.json", r#"{"n": 1, "gamma": {"kind": "translation", "basis": []}, "maxDegree": 4}"#);
    let (code, _, stderr) = run_json(&cfg);
    assert_eq!(code, 2);
    assert!(stderr.contains("n:"), "{stderr}");
    let cfg = write_config(&dir, "typo.json", r#"{"n": 2, "gamma": {"kind": "translation", "basis": [[2]]}, "maxDegre": 4}"#);
    assert_eq!(run_json(&cfg).0, 2);
    assert_eq!(run_json("/nonexistent/config.json").0, 2);
}

#[test]
fn positive_zeta_for_diag_three_three() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "c.json",
        r#"{"n": 3, "gamma": {"kind": "translation", "basis": [[3, 0], [0, 3]]}, "maxDegree": 12,
            "checks": ["positive_zeta"]}"#,
    );
    let (code, stdout, _) = run_json(&cfg);
    assert_eq!(code, 0);
    let report = Report::from_json(&stdout).unwrap();
    let expected = building_zeta::IntPolynomial::one_minus_power(3).pow(9);
    assert_eq!(report.checks.positive_zeta.unwrap().determinant, expected);
}

#[test]
fn empty_checks_give_an_empty_body() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "c.json",
        r#"{"n": 2, "gamma": {"kind": "translation", "basis": [[2]]}, "maxDegree": 4, "checks": []}"#,
    );
    let (code, stdout, _) = run_json(&cfg);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["checks"], serde_json::json!({}));
    assert_eq!(v["verdicts"], serde_json::json!({}));
}

#[test]
fn resource_caps_exit_3() {
    let dir = TempDir::new().unwrap();
    let big = write_config(
        &dir,
        "big.json",
        r#"{"n": 2, "gamma": {"kind": "translation", "basis": [[5000]]}, "maxDegree": 4, "checks": ["positive_zeta"]}"#,
    );
    let (code, _, stderr) = run_json(&big);
    assert_eq!(code, 3, "{stderr}");
    let tight = write_config(
        &dir,
        "tight.json",
        r#"{"n": 3, "gamma": {"kind": "translation", "basis": [[3, 0], [0, 3]]}, "maxDegree": 30,
            "checks": ["selberg_series"], "caps": {"maxBoxPoints": 100}}"#,
    );
    assert_eq!(run_json(&tight).0, 3);
    let cycles = r#"{"n": 3, "gamma": {"kind": "translation", "basis": [[3, 0], [0, 3]]}, "maxDegree": 14"#;
    let explicit = write_config(&dir, "cycles.json", &format!(r#"{cycles}, "checks": ["ihara"]}}"#));
    assert_eq!(run_json(&explicit).0, 3);
    let defaulted = write_config(&dir, "default.json", &format!("{cycles}}}"));
    let (code, stdout, stderr) = run_json(&defaulted);
    assert_eq!(code, 0, "{stderr}");
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert!(v["skipped"]["ihara"].as_str().unwrap().contains("cap"));
    let unacknowledged = write_config(
        &dir,
        "raise.json",
        r#"{"n": 2, "gamma": {"kind": "translation", "basis": [[2]]}, "maxDegree": 4, "caps": {"maxVertices": 100000}}"#,
    );
    assert_eq!(run_json(&unacknowledged).0, 2);
}

#[test]
fn affine_configs() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "a.json",
        r#"{"n": 3, "gamma": {"kind": "affine", "lattice": [[3, 0], [0, 3]], "perms": [[2, 3, 1]]},
            "maxDegree": 12, "scale": "factorial"}"#,
    );
    let (code, stdout, stderr) = run_json(&cfg);
    assert_eq!(code, 0, "{stderr}");
    let report = Report::from_json(&stdout).unwrap();
    let series = report.checks.selberg_series.unwrap();
    assert_eq!(series.identity_weight, 18);
    assert!(report.checks.invariants.is_some());
    // geodesic scale gives fractional lengths for this group
    let geo = write_config(
        &dir,
        "g.json",
        r#"{"n": 3, "gamma": {"kind": "affine", "lattice": [[3, 0], [0, 3]], "perms": [[2, 1, 3]]}, "maxDegree": 6}"#,
    );
    let (code, _, stderr) = run_json(&geo);
    assert_eq!(code, 2);
    assert!(stderr.contains("factorial"), "{stderr}");
    // P must preserve M
    let unstable = write_config(
        &dir,
        "u.json",
        r#"{"n": 3, "gamma": {"kind": "affine", "lattice": [[3, 1], [0, 2]], "perms": [[2, 1, 3]]}, "maxDegree": 6}"#,
    );
    assert_eq!(run_json(&unstable).0, 2);
}

fn zero_timings(v: &mut Value) {
    if let Some(t) = v.get_mut("timings_ms").and_then(Value::as_object_mut) {
        for x in t.values_mut() {
            *x = Value::from(0.0);
        }
    }
}

#[test]
fn reports_round_trip_and_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "c.json",
        r#"{"n": 3, "gamma": {"kind": "translation", "basis": [[1, 0], [-1, 3]]}, "maxDegree": 9,
            "checks": ["comparison", "positive_zeta", "lfunction", "selberg_series", "selberg_rational", "invariants"]}"#,
    );
    let out_path = dir.path().join("report.json");
    let out = out_path.to_str().unwrap();
    let first = bzeta(&["run", "--config", &cfg, "--out", out]);
    assert_eq!(first.status.code(), Some(0));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let report = Report::from_json(&text).unwrap();
    assert_eq!(report.to_json() + "\n", text, "re-serialization is byte-identical");

    let (_, second, _) = run_json(&cfg);
    let mut a: Value = serde_json::from_str(&text).unwrap();
    let mut b: Value = serde_json::from_str(&second).unwrap();
    zero_timings(&mut a);
    zero_timings(&mut b);
    assert_eq!(a, b);
    assert_eq!(Report::from_json(&second).unwrap().without_timings(), report.without_timings());
}

#[test]
fn text_format() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "c.json",
        r#"{"n": 2, "gamma": {"kind": "translation", "basis": [[4]]}, "maxDegree": 8}"#,
    );
    let out = bzeta(&["run", "--config", &cfg, "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[PASS] positive_zeta.determinant_equals_orders"), "{text}");
    assert!(text.contains("[PASS] ihara.bass_formula"), "{text}");
    assert!(text.trim_end().ends_with("overall: PASS"));
}

#[test]
fn export_graph_edge_list() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "c.json",
        r#"{"n": 3, "gamma": {"kind": "translation", "basis": [[1, 0], [-1, 3]]}, "maxDegree": 4}"#,
    );
    let out = bzeta(&["export-graph", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    // three vertices, one type-1 and one type-2 neighbour each, multiplicity 3
    assert_eq!(lines.len(), 6, "{text}");
    for line in lines {
        let fields: Vec<&str> = line.split(' ').collect();
        assert_eq!(fields.len(), 4);
        assert_eq!(fields[3], "3");
    }
    let file = dir.path().join("edges.txt");
    let out = bzeta(&["export-graph", "--config", &cfg, "--out", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&file).unwrap(), text);
}

#[test]
fn demo_passes_and_negative_control_fails() {
    let out = bzeta(&["demo"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let perturbed = bzeta(&["demo", "--perturb", "1:0:1"]);
    assert_eq!(perturbed.status.code(), Some(1));
    let text = String::from_utf8(perturbed.stdout).unwrap();
    assert!(text.contains("FAIL zeta/"));
    let json = bzeta(&["demo", "--format", "json"]);
    let v: Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["passed"], Value::Bool(true));
}

#[test]
fn example_configs_run() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut count = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "json") {
            let (code, _, stderr) = run_json(path.to_str().unwrap());
            assert_eq!(code, 0, "{}: {stderr}", path.display());
            count += 1;
        }
    }
    assert!(count > 0);
}
