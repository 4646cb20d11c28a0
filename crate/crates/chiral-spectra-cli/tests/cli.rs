//! End-to-end tests of the binary: exit codes, output formats, and
//! byte-stability of repeated runs.

use serde_json::Value;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chiral-spectra"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn stdout_json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn k4_grover_report_is_clean_and_byte_stable() {
    let first = run(&["spectrum", "--builtin", "k4", "--model", "grover"]);
    assert_eq!(code(&first), 0, "stderr: {}", String::from_utf8_lossy(&first.stderr));
    let report = stdout_json(&first);
    assert_eq!(report["verdict"], "match");
    let total: u64 = report["atoms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|atom| atom["mult"].as_u64().unwrap())
        .sum();
    assert_eq!(total, 12);
    assert_eq!(report["bounds"]["annulus"], true);
    assert_eq!(report["bounds"]["locus"], true);
    assert_eq!(report["bounds"]["resolvent"], true);

    let second = run(&["spectrum", "--builtin", "k4", "--model", "grover"]);
    assert_eq!(first.stdout, second.stdout, "repeated runs must be byte-identical");
}

#[test]
fn wrong_degree_graph_is_an_input_error() {
    let output = run(&["spectrum", "--builtin", "c4", "--model", "grover"]);
    assert_eq!(code(&output), 2);
}

#[test]
fn unknown_model_is_an_input_error() {
    let output = run(&["spectrum", "--builtin", "k4", "--model", "hadamard"]);
    assert_eq!(code(&output), 2);
}

#[test]
fn spectrum_csv_has_the_documented_header() {
    let output = run(&["spectrum", "--builtin", "k4", "--model", "grover", "--format", "csv"]);
    assert_eq!(code(&output), 0);
    let text = String::from_utf8(output.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "re,im,mult_geometric,origin,t_source");
    // K4 carries five distinct atoms.
    assert_eq!(lines.len(), 6);
}

#[test]
fn correlated_spectrum_requires_p() {
    let output = run(&["spectrum", "--builtin", "c4", "--model", "correlated"]);
    assert_eq!(code(&output), 2);
    let with_p = run(&["spectrum", "--builtin", "c4", "--model", "correlated", "--p", "0.75"]);
    assert_eq!(code(&with_p), 0, "stderr: {}", String::from_utf8_lossy(&with_p.stderr));
}

#[test]
fn ring_examples_verify_from_the_command_line() {
    let hom = run(&["spectrum", "--model", "hom-example", "--grid", "6", "--p", "0.6"]);
    assert_eq!(code(&hom), 0, "stderr: {}", String::from_utf8_lossy(&hom.stderr));
    let inhom = run(&[
        "spectrum", "--model", "inhom-example", "--a", "0.6", "--b", "0.8", "--grid", "6",
    ]);
    assert_eq!(code(&inhom), 0, "stderr: {}", String::from_utf8_lossy(&inhom.stderr));
    let report = stdout_json(&inhom);
    assert_eq!(report["a"].as_f64().unwrap(), 1.0);
    assert_eq!(report["b"].as_f64().unwrap(), -1.0);
}

#[test]
fn zeta_c3_matches_the_frozen_polynomial() {
    let output = run(&["zeta", "--builtin", "c3", "--L", "6"]);
    assert_eq!(code(&output), 0, "stderr: {}", String::from_utf8_lossy(&output.stderr));
    let report = stdout_json(&output);
    let coeffs: Vec<i64> = report["reciprocal"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_i64().unwrap())
        .collect();
    assert_eq!(coeffs, vec![1, 0, 0, -2, 0, 0, 1]);
    assert_eq!(report["reciprocal_display"], "1 - 2u^3 + u^6");
    assert_eq!(report["identity_match"], true);
    let counts: Vec<u64> = report["walk_counts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_u64().unwrap())
        .collect();
    assert_eq!(counts, vec![0, 0, 6, 0, 0, 6]);
}

#[test]
fn zeta_skips_the_euler_product_above_the_arc_cap() {
    let output = run(&["zeta", "--builtin", "petersen", "--L", "3"]);
    assert_eq!(code(&output), 0, "stderr: {}", String::from_utf8_lossy(&output.stderr));
    let report = stdout_json(&output);
    assert_eq!(report["identity_match"], true);
    assert!(report["prime_classes"].is_null());
    let notes = report["notes"].as_array().unwrap();
    assert!(notes.iter().any(|n| n.as_str().unwrap().contains("Euler product skipped")));
}

#[test]
fn mko_reference_run_is_contained() {
    let output = run(&[
        "mko", "--gamma", "1.2", "--theta1", "0.785398", "--theta2", "0.785398", "--grid", "128",
    ]);
    assert_eq!(code(&output), 0, "stderr: {}", String::from_utf8_lossy(&output.stderr));
    let report = stdout_json(&output);
    assert_eq!(report["regime"], "real_only");
    assert_eq!(report["contained"], true);
    assert!(report["gamma1"].as_f64().unwrap() < 1.2);
}

#[test]
fn mko_rejects_degenerate_sector_and_tiny_grids() {
    let sector = run(&["mko", "--theta1", "0", "--theta2", "0.7854"]);
    assert_eq!(code(&sector), 2);
    let grid = run(&["mko", "--theta1", "0.7854", "--theta2", "0.7854", "--grid", "32"]);
    assert_eq!(code(&grid), 2);
}

#[test]
fn mko_csv_emits_one_row_per_momentum_sample() {
    let output = run(&[
        "mko", "--gamma", "0", "--theta1", "0.785398", "--theta2", "0.785398", "--grid", "64",
        "--format", "csv",
    ]);
    assert_eq!(code(&output), 0);
    let text = String::from_utf8(output.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "xi,re1,im1,re2,im2");
    assert_eq!(lines.len(), 65);
    assert_eq!(lines[1].split(',').count(), 5);
}

#[test]
fn sweep_marks_degenerate_points_without_failing() {
    let output = run(&[
        "sweep", "--model", "correlated", "--builtin", "k4", "--range", "0:1:4",
        "--format", "csv",
    ]);
    assert_eq!(code(&output), 0, "stderr: {}", String::from_utf8_lossy(&output.stderr));
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("skipped:ab_nonzero"), "p = 1/3 row must be skipped:\n{text}");
    assert!(text.contains("skipped:a_neq_pm_b"), "p = 1 row must be skipped:\n{text}");
    assert!(text.contains("match"));
}

#[test]
fn sweep_rejects_malformed_ranges() {
    for range in ["1:0:5", "0:1:abc", "0:1", "0:1:0"] {
        let output = run(&[
            "sweep", "--model", "correlated", "--builtin", "k4", "--range", range,
        ]);
        assert_eq!(code(&output), 2, "range {range:?} must be rejected");
    }
}

#[test]
fn mko_sweep_walks_the_regimes() {
    let output = run(&[
        "sweep", "--model", "mko", "--theta1", "0.785398", "--theta2", "0.785398",
        "--range", "0:1.6:5", "--grid", "64",
    ]);
    assert_eq!(code(&output), 0, "stderr: {}", String::from_utf8_lossy(&output.stderr));
    let report = stdout_json(&output);
    let regimes: Vec<String> = report["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["regime"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(regimes.first().unwrap(), "circle_only");
    assert_eq!(regimes.last().unwrap(), "real_only");
    assert!(regimes.contains(&"mixed".to_string()));
}

#[test]
fn verify_passes_then_fails_under_absurd_tolerance() {
    let ok = run(&["verify", "--seed", "42", "--random-pairs", "2"]);
    assert_eq!(code(&ok), 0, "stderr: {}", String::from_utf8_lossy(&ok.stderr));
    let report = stdout_json(&ok);
    assert_eq!(report["passed"], report["total"]);
    assert!(report["first_failure"].is_null());

    let strict = run(&["verify", "--seed", "42", "--random-pairs", "2", "--tol", "1e-20"]);
    assert_eq!(code(&strict), 1);
    let stderr = String::from_utf8_lossy(&strict.stderr);
    assert!(stderr.contains("first failing invariant"), "stderr: {stderr}");
}

#[test]
fn env_var_sets_the_default_tolerance() {
    // At 1e-20 the eigenvalue clusters split apart and the multiplicity
    // comparison must report a mismatch.
    let output = bin()
        .args(["spectrum", "--builtin", "k4", "--model", "grover"])
        .env("CHIRAL_SPECTRA_TOL", "1e-20")
        .output()
        .expect("binary runs");
    assert_eq!(code(&output), 1);

    // An explicit flag still wins over the environment.
    let flag_wins = bin()
        .args(["spectrum", "--builtin", "k4", "--model", "grover", "--tol", "1e-8"])
        .env("CHIRAL_SPECTRA_TOL", "1e-20")
        .output()
        .expect("binary runs");
    assert_eq!(code(&flag_wins), 0);

    let garbage = bin()
        .args(["spectrum", "--builtin", "k4", "--model", "grover"])
        .env("CHIRAL_SPECTRA_TOL", "not-a-number")
        .output()
        .expect("binary runs");
    assert_eq!(code(&garbage), 2);
}

#[test]
fn reports_can_be_written_to_a_file() {
    let path = std::env::temp_dir().join("chiral-spectra-cli-test-report.json");
    let _ = std::fs::remove_file(&path);
    let output = run(&[
        "spectrum", "--builtin", "k33", "--model", "grover", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 0);
    assert!(output.stdout.is_empty(), "report goes to the file, not stdout");
    let written = std::fs::read_to_string(&path).unwrap();
    let report: Value = serde_json::from_str(&written).unwrap();
    assert_eq!(report["verdict"], "match");
    let _ = std::fs::remove_file(&path);
}

#[test]
fn graph_files_load_from_disk() {
    let path = std::env::temp_dir().join("chiral-spectra-cli-test-k4.edges");
    std::fs::write(&path, "# complete graph on four vertices\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
        .unwrap();
    let output = run(&["zeta", "--graph", path.to_str().unwrap(), "--L", "4"]);
    assert_eq!(code(&output), 0, "stderr: {}", String::from_utf8_lossy(&output.stderr));
    let report = stdout_json(&output);
    assert_eq!(report["identity_match"], true);
    let _ = std::fs::remove_file(&path);

    let missing = run(&["zeta", "--graph", "/nonexistent/file.edges"]);
    assert_eq!(code(&missing), 2);
}
