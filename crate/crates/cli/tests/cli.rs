//! Binary-level behaviour: flag handling, exit codes, report schema, and
//! output determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn socc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_socc"))
}

fn iris_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/iris7.csv")
}

fn run(args: &[&str]) -> Output {
    socc().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn select_writes_frozen_json_schema() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = run(&[
        "select",
        "--input",
        iris_path().to_str().unwrap(),
        "--label",
        "species",
        "--num-features",
        "3",
        "--output",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    for key in ["manifest", "method", "steps", "dropped", "elapsed_ms"] {
        assert!(parsed.get(key).is_some(), "missing top-level key {key}");
    }
    let manifest = &parsed["manifest"];
    for key in ["command", "input_fingerprint", "config", "version", "timings_ms"] {
        assert!(manifest.get(key).is_some(), "missing manifest key {key}");
    }
    assert_eq!(manifest["command"], "select");
    assert_eq!(
        manifest["input_fingerprint"].as_str().unwrap().len(),
        64,
        "sha-256 hex fingerprint"
    );
    let steps = parsed["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 3);
    // JSON indices are 0-based; petal length is the third CSV column.
    assert_eq!(steps[0]["index"], 2);
    assert_eq!(steps[0]["name"], "petal_length");
    for step in steps {
        for key in ["index", "name", "gain", "cumulative"] {
            assert!(step.get(key).is_some(), "missing step key {key}");
        }
    }
    assert_eq!(parsed["method"], "ols");

    // Human output shows 1-based feature positions.
    let text = stdout(&out);
    assert!(text.contains("petal_length (#3)"), "{text}");
}

#[test]
fn select_zero_features_is_usage_error() {
    let out = run(&[
        "select",
        "--input",
        iris_path().to_str().unwrap(),
        "--label",
        "species",
        "--num-features",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn select_unknown_method_is_usage_error() {
    let out = run(&[
        "select",
        "--input",
        iris_path().to_str().unwrap(),
        "--label",
        "species",
        "--num-features",
        "2",
        "--method",
        "mrmr",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn select_missing_file_is_data_error() {
    let out = run(&[
        "select",
        "--input",
        "/nonexistent/never.csv",
        "--label",
        "species",
        "--num-features",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn select_missing_label_column_is_data_error() {
    let out = run(&[
        "select",
        "--input",
        iris_path().to_str().unwrap(),
        "--label",
        "not_a_column",
        "--num-features",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = run(&["select", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn select_supports_custom_delimiter_and_categorical_columns() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("mixed.csv");
    std::fs::write(
        &csv,
        "colour;size;label\nred;1.0;yes\nblue;2.5;no\nred;1.5;yes\nblue;3.0;no\ngreen;2.0;yes\nred;2.2;no\n",
    )
    .unwrap();
    let out = run(&[
        "select",
        "--input",
        csv.to_str().unwrap(),
        "--label",
        "label",
        "--num-features",
        "2",
        "--delimiter",
        ";",
        "--categorical",
        "colour",
        "--method",
        "olsd",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("colour") || stdout(&out).contains("size"));
}

#[test]
fn definition_method_matches_fast_path_on_iris() {
    let fast = run(&[
        "select",
        "--input",
        iris_path().to_str().unwrap(),
        "--label",
        "species",
        "--num-features",
        "3",
    ]);
    let reference = run(&[
        "select",
        "--input",
        iris_path().to_str().unwrap(),
        "--label",
        "species",
        "--num-features",
        "3",
        "--method",
        "definition",
    ]);
    assert!(fast.status.success() && reference.status.success());
    let pick = |text: &str| -> Vec<String> {
        text.lines()
            .filter(|l| l.contains("(#"))
            .map(|l| l.split_whitespace().nth(1).unwrap().to_string())
            .collect()
    };
    assert_eq!(pick(&stdout(&fast)), pick(&stdout(&reference)));
}

#[test]
fn verify_small_run_passes() {
    let out = run(&["verify", "--trials", "25", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.matches("PASS").count(), 4, "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_zero_trials_is_usage_error() {
    let out = run(&["verify", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_with_unit_response_width_still_passes() {
    let out = run(&["verify", "--trials", "20", "--seed", "3", "--max-m", "1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn synth_single_trial_is_deterministic() {
    let args = ["synth", "--trials", "2", "--seed", "7"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(stdout(&first), stdout(&second));
    assert!(stdout(&first).contains("successes: "));
}

#[test]
fn bench_reports_csv_rows() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("timings.csv");
    let out = run(&[
        "bench",
        "--N",
        "60",
        "--n",
        "30",
        "--t-list",
        "2,3",
        "--method-list",
        "ols,definition",
        "--reps",
        "3",
        "--output",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let body = std::fs::read_to_string(&csv).unwrap();
    let mut lines = body.lines();
    assert_eq!(lines.next(), Some("method,N,n,t,median_ms,min_ms"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    for row in rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 6);
        assert_eq!(fields[1], "60");
        assert_eq!(fields[2], "30");
        let median: f64 = fields[4].parse().unwrap();
        let min: f64 = fields[5].parse().unwrap();
        assert!(median >= min && min >= 0.0);
    }
}

#[test]
fn bench_rejects_low_reps() {
    let out = run(&["bench", "--N", "20", "--n", "10", "--reps", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bench_single_step_methods_stay_within_a_constant_factor() {
    // At t = 1 both methods score every candidate once, so their times
    // differ only by a per-evaluation constant (measured around 3-4x),
    // unlike the polynomially growing gap at larger t.
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("t1.csv");
    let out = run(&[
        "bench",
        "--N",
        "300",
        "--n",
        "2000",
        "--t-list",
        "1",
        "--method-list",
        "ols,definition",
        "--reps",
        "3",
        "--output",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&csv).unwrap();
    let mut median = std::collections::HashMap::new();
    for line in body.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        median.insert(f[0].to_string(), f[4].parse::<f64>().unwrap());
    }
    let ratio = median["definition"] / median["ols"];
    assert!(
        ratio < 8.0,
        "single-step ratio {ratio} should be a small constant"
    );
}
