//! The `vertco` binary: exit codes and which stream carries what.

use std::io::Write;
use std::process::{Command, Output};

fn vertco(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vertco"))
        .args(args)
        .output()
        .expect("spawn vertco")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn tco_csv_goes_to_stdout_only() {
    let o = vertco(&["tco", "--scenario", "uc9_emergency"]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.starts_with("item,category,amount,horizon_value\n"), "{out}");
    assert!(out.lines().any(|l| l.starts_with("tco_total,")));
    assert!(o.stderr.is_empty());
}

#[test]
fn json_output_parses() {
    let o = vertco(&["coverage", "--scenario", "uc4_rural", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let report = vertco_core::Report::parse_json(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert_eq!(report.rows().len(), 1);
}

#[test]
fn validate_writes_nothing_to_stdout() {
    let o = vertco(&["validate", "--scenario", "uc3_paris"]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8(o.stderr).unwrap().contains("uc3"));
}

#[test]
fn schema_violation_exits_2() {
    let mut doc = vertco_core::golden::text("uc9_emergency").unwrap();
    doc = doc.replace("drones_per_link = 6", "drones_per_link = -1");
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(doc.as_bytes()).unwrap();
    let o = vertco(&["validate", "--scenario", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["tco"][..],
        &["frobnicate"],
        &["tco", "--scenario", "no_such_scenario"],
        &["tco", "--scenario", "uc9_emergency", "--format", "xml"],
        &["mmtc", "--scenario", "uc9_emergency"],
        &["sweep", "--scenario", "uc9_emergency", "--param", "nope", "--values", "1", "--metric", "tco_total"],
        &["sweep", "--scenario", "uc9_emergency", "--param", "drones_per_link", "--values", "1", "--metric", "coverage_km"],
        &["best", "--scenario", "uc9_emergency", "--grid", "drones_per_link=1,2", "--objective", "tco_total", "--direction", "sideways"],
    ] {
        let o = vertco(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn infeasible_search_exits_1() {
    let o = vertco(&[
        "best", "--scenario", "uc9_emergency", "--grid", "drones_per_link=1,2,3",
        "--objective", "tco_total", "--direction", "min", "--constraint", "tco_total<=0",
    ]);
    assert_eq!(code(&o), 1);
    assert!(o.stdout.is_empty());
}

#[test]
fn help_exits_0() {
    let o = vertco(&["--help"]);
    assert_eq!(code(&o), 0);
    assert!(!o.stdout.is_empty());
}
