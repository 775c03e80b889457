//! End-to-end tests of the `coarse-metrology` binary: exit codes, output
//! formats, determinism, and the documented example rows.

use std::io::Write;
use std::process::{Command, Output};

const SEED_ENV: &str = "COARSE_METROLOGY_SEED";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coarse-metrology"))
        .args(args)
        .env_remove(SEED_ENV)
        .output()
        .expect("binary runs")
}

fn run_with_env(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_coarse-metrology"));
    cmd.args(args).env_remove(SEED_ENV);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

/// Parses a CSV body (header + rows) into (columns, rows-of-strings).
fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines
        .next()
        .expect("header line")
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    (header, rows)
}

fn cell(rows: &[Vec<String>], row: usize, col: usize) -> f64 {
    rows[row][col].parse().expect("numeric cell")
}

#[test]
fn phase_fisher_documented_row() {
    let out = run(&[
        "phase-fisher",
        "--state",
        "ghz",
        "--reference",
        "common",
        "--n",
        "1",
        "--delta",
        "0.3",
        "--phi",
        "1.5707963",
    ]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(header, vec!["n", "delta", "phi", "fisher", "dphi"]);
    let fisher = cell(&rows, 0, 3);
    assert!((fisher - 0.83527).abs() < 1e-5, "{fisher}");
}

#[test]
fn phase_fisher_defaults_reach_the_heisenberg_limit() {
    let out = run(&["phase-fisher", "--delta", "0", "--phi", "pi/2", "--n", "5"]);
    assert!(out.status.success());
    let (_, rows) = parse_csv(&stdout(&out));
    assert!((cell(&rows, 0, 3) - 25.0).abs() < 1e-9);
}

#[test]
fn missing_required_flag_is_a_usage_error() {
    let out = run(&["phase-fisher", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("delta") || stderr(&out).contains("usage"));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = run(&["phase-fisher", "--bogus", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_angle_is_a_usage_error() {
    let out = run(&["phase-fisher", "--n", "1", "--delta", "0", "--phi", "2x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn alternating_with_independent_reference_fails_cleanly() {
    let out = run(&[
        "phase-fisher",
        "--state",
        "alternating",
        "--reference",
        "independent",
        "--n",
        "2",
        "--delta",
        "0.1",
        "--phi",
        "pi/4",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unsupported"));
}

#[test]
fn optimal_n_documented_rows() {
    let out = run(&["optimal-n", "--reference", "common", "--delta", "0.1"]);
    assert!(out.status.success());
    let (_, rows) = parse_csv(&stdout(&out));
    assert_eq!(rows[0][2], "7");

    let out = run(&["optimal-n", "--reference", "independent", "--delta", "0.1"]);
    let (_, rows) = parse_csv(&stdout(&out));
    assert_eq!(rows[0][2], "100");

    let out = run(&["optimal-n", "--reference", "common", "--delta", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("diverge"));
}

#[test]
fn freq_curve_header_and_zero_row() {
    let out = run(&["freq-curve", "--grid-points", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with(
        "delta,dw2_product_markov,dw2_ghz_markov,dw2_product_nonmarkov,dw2_ghz_nonmarkov\n"
    ));
    let (_, rows) = parse_csv(&text);
    assert_eq!(rows.len(), 5);
    let e = std::f64::consts::E;
    let checks = [
        (1, 2.0 * e / 1e4),
        (2, 2.0 * e / 1e4),
        (3, 2.0 * e.sqrt() / 1e4),
        (4, 2.0 * e.sqrt() / 1e6),
    ];
    for (col, expected) in checks {
        let got = cell(&rows, 0, col);
        assert!(
            ((got - expected) / expected).abs() < 1e-9,
            "column {col}: {got} vs {expected}"
        );
    }
}

#[test]
fn freq_curve_floats_round_trip_at_emitted_precision() {
    let out = run(&["freq-curve", "--grid-points", "3"]);
    let (_, rows) = parse_csv(&stdout(&out));
    for row in &rows {
        for cell_text in row {
            let value: f64 = cell_text.parse().expect("parses back");
            assert_eq!(&format!("{value:.16e}"), cell_text);
        }
    }
}

#[test]
fn freq_curve_output_files_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.csv");
    let second = dir.path().join("b.csv");
    for path in [&first, &second] {
        let out = run(&[
            "freq-curve",
            "--grid-points",
            "4",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&first).unwrap(), std::fs::read(&second).unwrap());
}

#[test]
fn freq_curve_display_scaling_is_a_separate_column() {
    let out = run(&[
        "freq-curve",
        "--grid-points",
        "3",
        "--scale-ghz-markov",
        "1e-8",
    ]);
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(header.last().unwrap(), "dw2_ghz_markov_scaled");
    for row in 0..rows.len() {
        let raw = cell(&rows, row, 2);
        let scaled = cell(&rows, row, 5);
        assert!((scaled - raw * 1e-8).abs() <= 1e-12 * raw.max(1.0));
    }
}

#[test]
fn freq_curve_json_mirrors_the_csv_columns() {
    let out = run(&["freq-curve", "--grid-points", "3", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    let rows = value.as_array().expect("array of rows");
    assert_eq!(rows.len(), 4);
    let first = rows[0].as_object().expect("row object");
    let keys: Vec<&String> = first.keys().collect();
    assert_eq!(
        keys,
        vec![
            "delta",
            "dw2_product_markov",
            "dw2_ghz_markov",
            "dw2_product_nonmarkov",
            "dw2_ghz_nonmarkov"
        ]
    );
    let dw2 = first["dw2_product_markov"].as_f64().unwrap();
    assert!(((dw2 - 2.0 * std::f64::consts::E / 1e4) / dw2).abs() < 1e-9);
}

#[test]
fn crossover_values() {
    let out = run(&["crossover", "--model", "nonmarkov"]);
    assert!(out.status.success());
    let (_, rows) = parse_csv(&stdout(&out));
    let star = cell(&rows, 0, 3);
    assert!(
        ((star - 1.3440485502569105e-2) / 1.3440485502569105e-2).abs() < 1e-6,
        "{star}"
    );

    let out = run(&["crossover", "--model", "markov"]);
    let (_, rows) = parse_csv(&stdout(&out));
    assert_eq!(cell(&rows, 0, 3), 0.0);
}

#[test]
fn crossover_without_sign_change_reports_none() {
    // The non-Markovian curves only cross near 1.3e-2; far above it the
    // difference keeps one sign.
    let out = run(&[
        "crossover",
        "--model",
        "nonmarkov",
        "--bracket-lo",
        "0.1",
        "--bracket-hi",
        "0.5",
    ]);
    assert!(out.status.success());
    let (_, rows) = parse_csv(&stdout(&out));
    assert_eq!(rows[0][3], "none");
    assert!(stderr(&out).contains("no crossover"));
}

#[test]
fn oracle_verify_small_grid_passes() {
    let out = run(&["oracle-verify", "--n", "3"]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(header[2], "max_deviation");
    assert_eq!(rows.len(), 8);
    for row in 0..rows.len() {
        assert!(cell(&rows, row, 2) <= 1e-8);
    }
}

#[test]
fn oracle_verify_rejects_oversized_probes() {
    let out = run(&["oracle-verify", "--n", "13"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("cap"));
}

#[test]
fn mc_verify_is_deterministic_and_seed_sensitive() {
    let first = run(&["mc-verify"]);
    assert!(first.status.success());
    let second = run(&["mc-verify"]);
    assert_eq!(first.stdout, second.stdout, "same seed, same bytes");

    let reseeded = run_with_env(&["mc-verify"], &[(SEED_ENV, "7")]);
    assert!(reseeded.status.success());
    assert_ne!(first.stdout, reseeded.stdout, "env seed must change the draw");

    // The flag wins over the environment (12624478 == 0xC0A25E, the default).
    let flagged = run_with_env(&["mc-verify", "--seed", "12624478"], &[(SEED_ENV, "7")]);
    assert_eq!(first.stdout, flagged.stdout, "0xC0A25E is the default seed");
}

#[test]
fn mc_verify_preconditions_are_usage_errors() {
    let out = run(&["mc-verify", "--shots", "100"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["mc-verify", "--reps", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_supplies_values_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    let mut file = std::fs::File::create(&path).unwrap();
    writeln!(file, "# phase scan configuration").unwrap();
    writeln!(file, "n = 1").unwrap();
    writeln!(file, "delta = 0.3").unwrap();
    writeln!(file, "phi = pi/2").unwrap();
    drop(file);

    let out = run(&["phase-fisher", "--config", path.to_str().unwrap()]);
    assert!(out.status.success());
    let (_, rows) = parse_csv(&stdout(&out));
    let fisher = cell(&rows, 0, 3);
    assert!((fisher - (-0.18f64).exp()).abs() < 1e-9, "{fisher}");

    // The flag overrides the config's delta: at delta = 0 the single-qubit
    // information at pi/2 is exactly 1.
    let out = run(&[
        "phase-fisher",
        "--config",
        path.to_str().unwrap(),
        "--delta",
        "0",
    ]);
    let (_, rows) = parse_csv(&stdout(&out));
    assert!((cell(&rows, 0, 3) - 1.0).abs() < 1e-12);
}
