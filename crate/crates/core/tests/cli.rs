//! Binary-level checks: exit codes, determinism, and report contents.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sumprod")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn construct_reports_sizes() {
    let out = run(&["construct", "--field", "sqrt2", "--X", "10", "--r", "3", "--Y", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["sizes"]["G"], 6);
    assert_eq!(v["sizes"]["P"], 15);
    assert_eq!(v["sizes"]["A"], 90);
    assert_eq!(v["directProduct"], true);
    assert_eq!(v["envelopes"]["sumInBox"], true);
}

#[test]
fn output_is_deterministic_across_job_counts() {
    let args = ["construct", "--field", "golden", "--X", "6", "--r", "1", "--Y", "1/2"];
    let a = run(&args);
    let b = run(&[&args[..], &["--jobs", "1"]].concat());
    let c = run(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn bounds_optimize_reports_c_star() {
    let out = run(&["bounds", "optimize"]);
    assert_eq!(out.status.code(), Some(0));
    let c = json(&out)["cStar"].as_f64().unwrap();
    assert!((8.3e-7..=9.1e-7).contains(&c), "cStar {c}");
}

#[test]
fn bounds_table_is_csv() {
    let out = run(&["bounds", "ff", "--table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].starts_with("q,alpha,beta"));
}

#[test]
fn ff_small_example() {
    let out = run(&["ff", "--q", "2", "--dP", "2", "--dG", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["sizes"]["P"], 1);
    assert_eq!(v["sizes"]["G"], 3);
    assert_eq!(v["sizes"]["A"], 3);
    assert_eq!(v["identities"]["pgProduct"], true);
}

#[test]
fn ff_dump_writes_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.csv");
    let out = run(&["ff", "--q", "3", "--dP", "3", "--dG", "1", "--dump", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let rows = std::fs::read_to_string(&path).unwrap();
    assert_eq!(rows.lines().count(), 64);
    assert!(rows.lines().all(|l| l.split(',').count() == 5));
}

#[test]
fn set_file_round_trip_and_plot_data() {
    let dir = tempfile::tempdir().unwrap();
    let set = dir.path().join("gp.json");
    let plot = dir.path().join("plot.csv");
    let out = run(&["construct", "--field", "sqrt2", "--X", "10", "--r", "3", "--Y", "1", "--dump", set.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = run(&["report", "--input", set.to_str().unwrap(), "--emit-plot-data", "--plot-file", plot.to_str().unwrap()]);
    assert_eq!(report.status.code(), Some(0));
    let v = json(&report);
    assert_eq!(v["n"], 90);
    assert_eq!(v["sumSize"], json(&out)["envelopes"]["sumSize"]);
    let csv = std::fs::read_to_string(&plot).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("setId,n,sumSize,prodSize,deltaPlus,deltaTimes,solymosi"));
    assert!(lines.next().unwrap().starts_with("gp,90,"));
}

#[test]
fn residue_defaults_to_stability_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let set = dir.path().join("gp.json");
    run(&["construct", "--field", "sqrt2", "--X", "10", "--r", "3", "--Y", "1", "--dump", set.to_str().unwrap()]);
    let out = run(&["residue", "--field", "sqrt2", "--set", set.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let r = &v["results"][0];
    assert!(r["p"].as_u64().unwrap() > 34_942_817);
    assert_eq!(r["injective"], true);
    assert_eq!(r["fpReport"], r["ringReport"]);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = run(&["--out", path.to_str().unwrap(), "field", "--field", "golden"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["disc"], 5);
}

#[test]
fn module_error_exits_one_with_error_object() {
    let out = run(&["field", "--field", r#"{"coeffs":[1,0,1]}"#]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "NotTotallyReal");
}

#[test]
fn radius_too_large_is_module_error() {
    let out = run(&["construct", "--field", "sqrt2", "--X", "10", "--r", "10", "--Y", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "RadiusTooLarge");
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(run(&["field", "--field", "no-such-field"]).status.code(), Some(2));
    assert_eq!(run(&["box", "--field", "sqrt2", "--kind", "unit", "--radius", "x/y"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn linrel_golden_counts() {
    let v = json(&run(&["linrel", "--field", "golden", "--Y", "1", "--k", "2"]));
    assert_eq!(v["count"], "6");
    let v = json(&run(&["linrel", "--field", "golden", "--Y", "1", "--k", "2", "--positive"]));
    assert_eq!(v["count"], "2");
    let v = json(&run(&["linrel", "--field", "sqrt2", "--Y", "1", "--k", "2"]));
    assert_eq!(v["count"], "0");
}

#[test]
fn box_reports_bounds() {
    let v = json(&run(&["box", "--field", "sqrt2", "--kind", "additive", "--radius", "2", "--elements"]));
    assert_eq!(v["count"], 7);
    assert_eq!(v["elements"].as_array().unwrap().len(), 7);
    let v = json(&run(&["box", "--field", "golden", "--kind", "unit", "--radius", "1"]));
    assert_eq!(v["count"], 10);
    assert_eq!(v["lowerOk"], true);
}
