//! End-to-end checks of the binary: output schema, byte-level determinism,
//! and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_partition-force"))
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().expect("binary runs")
}

fn tmp_path(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!(
        "partition-force-test-{}-{name}",
        std::process::id()
    ));
    path
}

#[test]
fn sweep_matches_golden_file() {
    let out = tmp_path("golden.csv");
    let status = run(&[
        "sweep",
        "--stats",
        "fermi",
        "--particles",
        "10",
        "--grid",
        "1:100:5:log",
        "--methods",
        "exact,highT-2,medT",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(status.status.success());
    let produced = std::fs::read_to_string(&out).unwrap();
    let golden = include_str!("golden/sweep_fermi_n10.csv");
    assert_eq!(produced, golden);
    std::fs::remove_file(&out).ok();
}

#[test]
fn sweep_is_byte_deterministic_across_thread_counts() {
    let args = [
        "sweep",
        "--stats",
        "bose",
        "--particles",
        "20",
        "--grid",
        "0.5:500:7:log",
        "--methods",
        "exact,lowT-3,highT-3",
        "--format",
        "json",
    ];
    let single = binary()
        .args(args)
        .env("PARTITION_FORCE_THREADS", "1")
        .output()
        .unwrap();
    let many = binary()
        .args(args)
        .env("PARTITION_FORCE_THREADS", "8")
        .output()
        .unwrap();
    assert!(single.status.success() && many.status.success());
    assert!(!single.stdout.is_empty());
    assert_eq!(single.stdout, many.stdout);
}

#[test]
fn csv_schema_headers_are_sorted_and_unit_tagged() {
    let out = run(&[
        "sweep",
        "--stats",
        "fermi",
        "--particles",
        "10",
        "--grid",
        "10:100:2:log",
        "--methods",
        "pade,exact,highT-1",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let header = text.lines().next().unwrap();
    assert_eq!(
        header,
        "t[dimensionless],delta_f[exact][dimensionless],\
         delta_f[highT-1][dimensionless],delta_f[pade][dimensionless]"
            .replace("\\\n         ", "")
    );
}

#[test]
fn solve_succeeds_with_exit_zero() {
    let out = run(&[
        "solve",
        "--stats",
        "bose",
        "--particles",
        "100",
        "--temp",
        "0.02",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("delta_f (direct)"));
    assert!(text.contains("[dimensionless]"));
}

#[test]
fn configuration_errors_exit_two() {
    // clap-level parse failure
    let out = run(&[
        "solve",
        "--stats",
        "maxwell",
        "--particles",
        "10",
        "--temp",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // domain-level config failure (bad grid)
    let out = run(&[
        "sweep",
        "--stats",
        "fermi",
        "--particles",
        "10",
        "--grid",
        "10:1:5:log",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // bad method tag
    let out = run(&[
        "sweep",
        "--stats",
        "fermi",
        "--particles",
        "10",
        "--grid",
        "1:10:3:log",
        "--methods",
        "bogus",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verification_failure_exits_one_and_explains_floor() {
    let out = run(&["verify", "--k-max", "0", "--tol", "1e-12"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("floor"), "stderr: {err}");
}

#[test]
fn verify_defaults_pass_with_exit_zero() {
    let out = run(&["verify", "--k-max", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("k,measured"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn fit_interp_prints_fit_record() {
    let out = run(&["fit-interp", "--stats", "fermi", "--particles", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("x_star     : 0.237845"), "got: {text}");
    assert!(text.contains("p          : 5"));
}

#[test]
fn compare_emits_error_columns_and_summary() {
    let out = run(&[
        "compare",
        "--stats",
        "fermi",
        "--particles",
        "100",
        "--grid",
        "1:1000:4:log",
        "--methods",
        "medT,pade",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let header = text.lines().next().unwrap();
    assert!(header.contains("delta_f[exact]"));
    assert!(header.contains("rel_err[medT]"));
    assert!(header.contains("rel_err[alpha-medT]"));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("max rel. error"));
}

#[test]
fn sweep_across_pade_pole_leaves_cells_empty_but_succeeds() {
    let out = run(&[
        "sweep",
        "--stats",
        "bose",
        "--particles",
        "100",
        "--grid",
        "10:40:4:lin",
        "--methods",
        "exact,pade",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    // t = 10 and t = 20 lie at or below the pole (t/N <= (sqrt(2)-1)/2).
    let empty_rows: Vec<&str> = text.lines().filter(|l| l.ends_with(',')).collect();
    assert!(!empty_rows.is_empty(), "expected empty pade cells: {text}");
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("left empty"));
}

#[test]
fn json_mirror_carries_the_same_numbers() {
    let csv = run(&[
        "sweep",
        "--stats",
        "fermi",
        "--particles",
        "10",
        "--grid",
        "5:50:3:log",
        "--methods",
        "exact",
    ]);
    let json = run(&[
        "sweep",
        "--stats",
        "fermi",
        "--particles",
        "10",
        "--grid",
        "5:50:3:log",
        "--methods",
        "exact",
        "--format",
        "json",
    ]);
    assert!(csv.status.success() && json.status.success());
    let csv_text = String::from_utf8(csv.stdout).unwrap();
    let parsed: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(parsed["kind"], "sweep");
    assert_eq!(parsed["columns"], serde_json::json!(["exact"]));
    let rows = parsed["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    // Spot-check the first value against the CSV cell.
    let first_csv_value: f64 = csv_text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    let first_json_value = rows[0]["values"]["exact"].as_f64().unwrap();
    assert_eq!(first_csv_value, first_json_value);
}
