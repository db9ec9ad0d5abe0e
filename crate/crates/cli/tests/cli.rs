use std::path::Path;
use std::process::{Command, Output};

use multimodal_cli::report::ReportFile;
use multimodal_cli::trace::TraceFile;
use multimodal_core::analysis::{empirical_cr, grid_targets, worst_case_targets};
use multimodal_core::strategies::{build, StrategyParams};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multimodal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn simulate(dir: &Path, name: &str, args: &[&str]) -> std::path::PathBuf {
    let path = dir.join(name);
    let mut full = vec!["simulate"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let out = run(&full);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    path
}

#[test]
fn table_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = run(&["table", "--p-max", "16", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 17);
    assert_eq!(lines[0], "p,parity,cr");
    assert_eq!(lines[1], "1,odd,9.00000");
    assert_eq!(lines[8], "8,even,26.55911");
    assert_eq!(lines[15], "15,odd,44.31371");
}

#[test]
fn table_rejects_zero() {
    assert_eq!(run(&["table", "--p-max", "0"]).status.code(), Some(1));
}

#[test]
fn params_json() {
    let v: Value = serde_json::from_str(&stdout(&run(&["params", "--p", "1"]))).unwrap();
    assert_eq!(v["cr"], 9.0);
    assert_eq!(v["a"], 2.0);
    assert!(v.get("r").is_none());
    let v: Value = serde_json::from_str(&stdout(&run(&["params", "--p", "2"]))).unwrap();
    assert!((v["cr"].as_f64().unwrap() - 10.27303).abs() < 5e-6);
    assert!((v["a"].as_f64().unwrap() - 1.90696495).abs() < 1e-8);
    assert!((v["r"].as_f64().unwrap() - 0.2156792184).abs() < 1e-9);
    assert_eq!(v["bracket"].as_array().unwrap().len(), 2);
    let v: Value = serde_json::from_str(&stdout(&run(&["params", "--p", "5"]))).unwrap();
    assert!((v["cr"].as_f64().unwrap() - 19.92820).abs() < 5e-6);
    let v: Value =
        serde_json::from_str(&stdout(&run(&["params", "--p", "3", "--eps", "0.1"]))).unwrap();
    assert_eq!(v["cell_ceiling"], 10);
}

#[test]
fn simulate_structure() {
    let out = run(&["simulate", "--p", "1", "--rounds", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 1 + 12);

    let out = run(&[
        "simulate",
        "--p",
        "2",
        "--variant",
        "EvenOptimal",
        "--rounds",
        "2",
    ]);
    let kinds: Vec<String> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| serde_json::from_str::<Value>(l).unwrap()["search"].to_string())
        .collect();
    let round = ["\"none\"", "\"all\"", "0", "1", "\"none\""];
    assert_eq!(kinds, [round, round].concat());
}

#[test]
fn simulate_rejects_bad_parameters() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(
        code(&[
            "simulate",
            "--p",
            "2",
            "--variant",
            "OddOptimal",
            "--rounds",
            "3"
        ]),
        Some(1)
    );
    assert_eq!(
        code(&["simulate", "--p", "3", "--a", "0.5", "--rounds", "3"]),
        Some(1)
    );
    assert_eq!(
        code(&["simulate", "--p", "3", "--eps", "0.1", "--a", "2", "--rounds", "3"]),
        Some(1)
    );
    assert_eq!(
        code(&[
            "simulate",
            "--p",
            "3",
            "--variant",
            "spiral",
            "--rounds",
            "3"
        ]),
        Some(1)
    );
    assert_eq!(code(&["simulate", "--p", "3"]), Some(1));
}

#[test]
fn trace_round_trip_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    for (name, args, params) in [
        (
            "odd.jsonl",
            vec!["--p", "3", "--rounds", "10"],
            StrategyParams::optimal(3).unwrap(),
        ),
        (
            "even.jsonl",
            vec!["--p", "6", "--rounds", "10"],
            StrategyParams::optimal(6).unwrap(),
        ),
        (
            "prac.jsonl",
            vec!["--p", "4", "--eps", "0.01", "--rounds", "10"],
            StrategyParams::practical(4, 0.01).unwrap(),
        ),
        (
            "a3.jsonl",
            vec!["--p", "1", "--a", "3", "--rounds", "10"],
            StrategyParams::odd(1, 3.0).unwrap(),
        ),
    ] {
        let path = simulate(dir.path(), name, &args);
        let loaded = TraceFile::load(&path).unwrap();
        let direct = build(&params, 10).unwrap();
        assert_eq!(loaded.params, direct.params);
        assert_eq!(loaded.header.rounds, 10);
        assert_eq!(loaded.trajectory, direct.trajectory, "{name}");
        // Writing the loaded trace again gives the same bytes.
        let mut buf = Vec::new();
        loaded.write_to(&mut buf).unwrap();
        assert_eq!(buf, std::fs::read(&path).unwrap());
    }
}

#[test]
fn evaluate_matches_library_report() {
    let dir = tempfile::tempdir().unwrap();
    let trace = simulate(dir.path(), "t.jsonl", &["--p", "2", "--rounds", "12"]);
    let report_path = dir.path().join("report.json");
    let out = run(&[
        "evaluate",
        "--trace",
        trace.to_str().unwrap(),
        "--grid",
        "50",
        "--out",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let file: ReportFile =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();

    let params = StrategyParams::optimal(2).unwrap();
    let s = build(&params, 12).unwrap();
    let mut targets = worst_case_targets(&params, 12, 1e-9).unwrap();
    targets.extend(grid_targets(&params, 12, 50).unwrap());
    let rep = empirical_cr(&params, &s.trajectory, 12, &targets).unwrap();
    assert_eq!(file, ReportFile::from(&rep));
    assert!(file.cr_empirical <= file.cr_analytic);
    assert_eq!(file.variant, "EvenOptimal");

    let out = run(&[
        "evaluate",
        "--trace",
        trace.to_str().unwrap(),
        "--rounds",
        "13",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn audit_passes_on_simulated_traces() {
    let dir = tempfile::tempdir().unwrap();
    for (i, args) in [
        vec!["--p", "1", "--rounds", "12"],
        vec!["--p", "3", "--a", "1.5", "--rounds", "12"],
        vec!["--p", "2", "--rounds", "12"],
        vec!["--p", "4", "--a", "2.5", "--rounds", "12"],
        vec!["--p", "5", "--eps", "0.1", "--rounds", "12"],
        vec!["--p", "2", "--eps", "0.5", "--rounds", "12"],
    ]
    .iter()
    .enumerate()
    {
        let trace = simulate(dir.path(), &format!("{i}.jsonl"), args);
        let out = run(&["audit", "--trace", trace.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
        let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert!(v["audits"]
            .as_array()
            .unwrap()
            .iter()
            .all(|a| a["passed"] == true));
    }
}

#[test]
fn audit_reports_violations() {
    let dir = tempfile::tempdir().unwrap();
    let trace = simulate(dir.path(), "t.jsonl", &["--p", "1", "--rounds", "12"]);
    let out = run(&[
        "audit",
        "--trace",
        trace.to_str().unwrap(),
        "--claimed-cr",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("min-growth violated at index 3"),
        "{}",
        stderr(&out)
    );
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["audits"][1]["first_violation"], 3);
}

#[test]
fn io_and_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.jsonl");
    let out = run(&["evaluate", "--trace", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("missing.jsonl"));

    let trace = simulate(dir.path(), "t.jsonl", &["--p", "1", "--rounds", "3"]);
    let text = std::fs::read_to_string(&trace).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    lines[4] = "{\"seq\":3,\"t0\":".into();
    std::fs::write(&trace, lines.join("\n")).unwrap();
    let out = run(&["audit", "--trace", trace.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("record 4"), "{}", stderr(&out));
}

#[test]
fn cells_example() {
    let out = run(&[
        "cells", "--p", "3", "--eps", "0.1", "--x", "2", "--delta", "8",
    ]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 4);
    assert_eq!(v["widths"].as_array().unwrap().len(), 4);
    let total: f64 = v["widths"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w.as_f64().unwrap())
        .sum();
    assert!((total - 8.0).abs() < 1e-12);
    let out = run(&[
        "cells", "--p", "3", "--eps", "0.1", "--x", "-2", "--delta", "8",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&[
        "cells", "--p", "3", "--eps", "-1", "--x", "2", "--delta", "8",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["table", "--p-max", "x"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
