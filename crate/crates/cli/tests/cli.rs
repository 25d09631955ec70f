//! End-to-end tests of the `minext` binary: subcommands, exit codes, JSON
//! shapes, determinism, and the CSV exporter.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_minext"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.json"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn solve_reports_epsilon_two_for_the_signed_pair() {
    let out = run(&["solve", "-i", fixture("e2").to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    assert!((json["epsilon"].as_f64().unwrap() - 2.0).abs() < 1e-6);
    assert_eq!(json["converged"], serde_json::Value::Bool(true));
    assert!(json["primal"].as_array().unwrap().len() == 64);
    assert!(json["dual"].as_array().unwrap().len() == 3);
}

#[test]
fn analyze_verdicts_match_the_reference_examples() {
    let out = run(&["analyze", "-i", fixture("e2").to_str().unwrap()]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    assert_eq!(json["uniqueness"]["verdict"], "UNIQUE");
    assert_eq!(json["structure"]["type"], "points");

    let out = run(&["analyze", "-i", fixture("e3").to_str().unwrap()]);
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    assert_eq!(json["uniqueness"]["verdict"], "UNIQUE");
    assert!((json["epsilon"].as_f64().unwrap() - std::f64::consts::SQRT_2).abs() < 1e-6);

    let out = run(&["analyze", "-i", fixture("e5").to_str().unwrap()]);
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    assert_eq!(json["uniqueness"]["verdict"], "NOT_APPLICABLE");
    assert_eq!(json["structure"]["type"], "hyperplanes");
    // positivity is skipped with a reason in two dimensions
    assert!(json["positivity"]["skipped"].is_string());
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let input = fixture("e4");
    let args = [
        "analyze",
        "-i",
        input.to_str().unwrap(),
        "--grid",
        "48",
        "--mu-norm",
        "2.0",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout, "identical input and flags must reproduce bytes");
}

#[test]
fn bad_input_exits_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = run(&["solve", "-i", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");

    let missing = dir.path().join("missing.json");
    let out = run(&["analyze", "-i", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // duplicate frequencies are structurally invalid
    let dup = dir.path().join("dup.json");
    std::fs::write(
        &dup,
        r#"{"d":1,"data":[{"m":[1],"re":1.0,"im":0.0},{"m":[1],"re":1.0,"im":0.0}]}"#,
    )
    .unwrap();
    let out = run(&["solve", "-i", dup.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_convergence_exits_with_code_three() {
    let out = run(&[
        "solve",
        "-i",
        fixture("e3").to_str().unwrap(),
        "--max-iter",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(3), "{out:?}");
}

#[test]
fn reproduce_passes_and_rejects_unknown_ids() {
    let out = run(&["reproduce", "figure1"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("[PASS]"));

    let out = run(&["reproduce", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gamma_structure_unique_positivity_subcommands() {
    let e2 = fixture("e2");
    let out = run(&["gamma", "-i", e2.to_str().unwrap()]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    let members = json["members"].as_array().unwrap();
    assert_eq!(members.len(), 2);

    let out = run(&["structure", "-i", e2.to_str().unwrap()]);
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    assert_eq!(json["type"], "points");
    assert_eq!(json["points"].as_array().unwrap().len(), 2);

    let out = run(&["unique", "-i", e2.to_str().unwrap()]);
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    assert_eq!(json["verdict"], "UNIQUE");

    let out = run(&["positivity", "-i", fixture("e1").to_str().unwrap()]);
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    assert_eq!(json["extendable"], serde_json::Value::Bool(true));
    assert_eq!(json["center"], 0);

    // explicit window on the signed pair: center 1 extends, center 0 does not
    let out = run(&[
        "positivity",
        "-i",
        e2.to_str().unwrap(),
        "--center",
        "1",
        "--halfwidth",
        "1",
    ]);
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    assert_eq!(json["extendable"], serde_json::Value::Bool(true));
    let out = run(&[
        "positivity",
        "-i",
        e2.to_str().unwrap(),
        "--center",
        "0",
        "--halfwidth",
        "1",
    ]);
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    assert_eq!(json["extendable"], serde_json::Value::Bool(false));
}

#[test]
fn export_plot_writes_the_three_csv_files() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("e4-report.json");
    let out = run(&[
        "analyze",
        "-i",
        fixture("e4").to_str().unwrap(),
        "--grid",
        "48",
        "-o",
        report_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let plots = dir.path().join("plots");
    let out = run(&[
        "export-plot",
        "--report",
        report_path.to_str().unwrap(),
        "--out",
        plots.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");

    let curve = std::fs::read_to_string(plots.join("curve.csv")).unwrap();
    assert!(curve.starts_with("x,phi_re,phi_im,abs_phi,deficit"));
    // |φ| reaches 1 near 0 and 1/3 and stays visibly below elsewhere
    let mut near_zero: f64 = 0.0;
    let mut near_third: f64 = 0.0;
    let mut elsewhere: f64 = 0.0;
    for line in curve.lines().skip(1) {
        let cols: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        let (x, abs_phi) = (cols[0], cols[3]);
        if (x - 0.0).abs() < 2e-3 || (1.0 - x) < 2e-3 {
            near_zero = near_zero.max(abs_phi);
        } else if (x - 1.0 / 3.0).abs() < 2e-3 {
            near_third = near_third.max(abs_phi);
        } else {
            elsewhere = elsewhere.max(abs_phi);
        }
    }
    assert!(near_zero > 1.0 - 1e-4, "peak at 0 missing ({near_zero})");
    assert!(near_third > 1.0 - 1e-4, "peak at 1/3 missing ({near_third})");
    assert!(elsewhere < near_zero && elsewhere < 1.0);

    let atoms = std::fs::read_to_string(plots.join("atoms.csv")).unwrap();
    assert!(atoms.starts_with("x1,weight_re,weight_im,weight_abs"));
    assert_eq!(atoms.lines().count(), 3, "two atoms plus the header");

    assert!(plots.join("support.csv").exists());
}

#[test]
fn export_plot_of_zero_data_writes_header_only_atoms() {
    let dir = tempfile::tempdir().unwrap();
    let zero = dir.path().join("zero.json");
    std::fs::write(
        &zero,
        r#"{"d":1,"data":[{"m":[-1],"re":0.0,"im":0.0},{"m":[0],"re":0.0,"im":0.0},{"m":[1],"re":0.0,"im":0.0}]}"#,
    )
    .unwrap();
    let report_path = dir.path().join("zero-report.json");
    let out = run(&[
        "analyze",
        "-i",
        zero.to_str().unwrap(),
        "-o",
        report_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");

    let plots = dir.path().join("plots");
    let out = run(&[
        "export-plot",
        "--report",
        report_path.to_str().unwrap(),
        "--out",
        plots.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let atoms = std::fs::read_to_string(plots.join("atoms.csv")).unwrap();
    assert_eq!(atoms.lines().count(), 1, "header only for the zero measure");
}

#[test]
fn analyze_accepts_verified_extrapolations() {
    // supplying the known minimal extrapolation of the quarter pair
    // collapses the admissibility interval onto √2
    let dir = tempfile::tempdir().unwrap();
    let nu = dir.path().join("nu.json");
    let s = std::f64::consts::SQRT_2;
    std::fs::write(
        &nu,
        format!(
            r#"{{"d":1,"atoms":[{{"x":[0.375],"re":{},"im":0.0}},{{"x":[0.875],"re":{},"im":0.0}}]}}"#,
            -s / 2.0,
            s / 2.0
        ),
    )
    .unwrap();
    let out = run(&[
        "analyze",
        "-i",
        fixture("e3").to_str().unwrap(),
        "--mu-norm",
        "2.0",
        "--nu",
        nu.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    let lower = json["admissibility"]["lower"].as_f64().unwrap();
    let upper = json["admissibility"]["upper"].as_f64().unwrap();
    assert!((lower - s).abs() < 1e-9 && (upper - s).abs() < 1e-9);

    // an inconsistent "extrapolation" is rejected as bad input
    let wrong = dir.path().join("wrong.json");
    std::fs::write(
        &wrong,
        r#"{"d":1,"atoms":[{"x":[0.1],"re":1.0,"im":0.0}]}"#,
    )
    .unwrap();
    let out = run(&[
        "analyze",
        "-i",
        fixture("e3").to_str().unwrap(),
        "--nu",
        wrong.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}
