use std::process::Command;

use serde_json::Value;
use sidelnikov::cli::{self, sweep};

fn run(args: &[&str]) -> cli::Outcome {
    cli::run(std::iter::once("sidelnikov").chain(args.iter().copied()))
}

fn json(out: &cli::Outcome) -> Value {
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("stdout is JSON")
}

#[test]
fn gen_writes_the_sequence_file() {
    let out = run(&["gen", "--q", "7", "--d", "3", "--l", "6"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "3 6\n2 1 1 0 2 0\n");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.txt");
    let v = json(&run(&["gen", "--q", "7", "--d", "3", "--l", "6", "-o", path.to_str().unwrap()]));
    assert_eq!(v["gamma"], 3);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "3 6\n2 1 1 0 2 0\n");
}

#[test]
fn lc_and_klc_read_files() {
    let dir = tempfile::tempdir().unwrap();
    let zero = dir.path().join("zero.txt");
    std::fs::write(&zero, "3 4\n0 0 0 0\n").unwrap();
    assert_eq!(json(&run(&["lc", zero.to_str().unwrap()]))["lc"], 0);

    let seq = dir.path().join("s.txt");
    std::fs::write(&seq, "3 6\n2 1 1 0 2 0\n").unwrap();
    let v = json(&run(&["klc", "--k", "2", seq.to_str().unwrap()]));
    assert_eq!(v["entries"].as_array().unwrap().len(), 3);
    assert_eq!(v["methods"]["bm"], true);

    let out = run(&["klc", "--k", "1", "--budget", "5", seq.to_str().unwrap()]);
    assert_eq!(out.code, cli::EXIT_BUDGET);
    assert!(out.stderr.contains("budget"));

    std::fs::write(&seq, "3 6\n2 1 1 0 2\n").unwrap();
    let out = run(&["lc", seq.to_str().unwrap()]);
    assert_eq!(out.code, cli::EXIT_INVALID);
    assert!(out.stderr.contains("found 5"), "{}", out.stderr);
}

#[test]
fn invalid_input_exits_with_two() {
    assert_eq!(run(&["gen", "--q", "7", "--d", "4", "--l", "6"]).code, cli::EXIT_INVALID);
    assert_eq!(run(&["gen", "--q", "7", "--d", "3", "--l", "4"]).code, cli::EXIT_INVALID);
    assert_eq!(run(&["field-info", "--q", "12"]).code, cli::EXIT_INVALID);
    assert_eq!(run(&["field-info", "--q", "7", "--bogus"]).code, cli::EXIT_INVALID);
    assert_eq!(run(&["verify-thm2", "--q", "13"]).code, cli::EXIT_INVALID);
    assert_eq!(run(&["cyclo", "--q", "13", "--v", "6", "--closed-form"]).code, cli::EXIT_INVALID);
}

#[test]
fn field_info_and_bounds_echo_gamma() {
    let v = json(&run(&["field-info", "--q", "9"]));
    assert_eq!(v["gamma"], 4);
    assert_eq!(v["modulus"], serde_json::json!([1, 0, 1]));

    let v = json(&run(&["bounds", "--q", "1423", "--d", "3", "--l", "711", "--k", "1"]));
    assert_eq!(v["gamma"], 3);
    assert_eq!(v["corollary1_bound"], 702);
    assert_eq!(v["factorization"]["r"], 79);
    assert_eq!(v["theorem2"]["relation"], "LC1=LC");
}

#[test]
fn cyclo_formats() {
    let v = json(&run(&["cyclo", "--q", "7", "--v", "2"]));
    assert_eq!(v["rows"], serde_json::json!([[1, 2], [1, 1]]));
    let v = json(&run(&["cyclo", "--q", "31", "--v", "6", "--closed-form"]));
    assert_eq!(v["formula_mismatches"], serde_json::json!([]));
    let out = run(&["cyclo", "--q", "7", "--v", "3", "--format", "csv"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("i,j,count,source\n"));
    assert_eq!(out.stdout.lines().count(), 10);
}

#[test]
fn verify_thm2_on_the_worked_example() {
    let v = json(&run(&["verify-thm2", "--q", "1423", "--full-klc"]));
    assert_eq!(v["S1"], 0);
    assert_eq!(v["prediction"], "LC1=LC");
    assert_eq!(v["lc"], v["lc1"]);
    assert_eq!(v["match"], true);
    assert_eq!(v["gamma"], 3);

    let v = json(&run(&["verify-thm2", "--q", "7"]));
    assert_eq!(v["s_values_match"], true);
    assert_eq!(v["prediction"], "none");
    assert_eq!(v["lc1"], Value::Null);
}

#[test]
fn weil_reports_equality_and_non_applicability() {
    let v = json(&run(&["weil", "--q", "7", "--d", "3", "--poly", "0,1,1"]));
    assert_eq!(v["weil"], "holds");
    assert_eq!(v["report"]["norm_squared"], 7);
    let v = json(&run(&["weil", "--q", "7", "--d", "3", "--poly", "1,3,3,1"]));
    assert_eq!(v["weil"], "not_applicable");
}

#[test]
fn repeated_commands_are_byte_identical() {
    let args = ["bounds", "--q", "103", "--d", "3", "--l", "51", "--k", "1"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn sweep_writes_sorted_round_trippable_records() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.toml");
    let out = dir.path().join("out.jsonl");
    std::fs::write(
        &config,
        "q = { from = 3, to = 50, filter = \"prime\" }\nd = 3\nl = \"all\"\nk = { min = 0, max = 1 }\n\n[toggles]\nthm2 = true\n",
    )
    .unwrap();
    let res = run(&["sweep", "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    let summary: sweep::SweepSummary = serde_json::from_str(&res.stdout).unwrap();
    assert_eq!(summary.violations, 0);
    assert!(summary.ok > 0 && summary.skipped > 0);

    let records = sweep::read_records(&out).unwrap();
    assert_eq!(records.len(), summary.records);
    for r in records.iter().filter(|r| r.status == sweep::Status::Ok) {
        let b = r.bounds.as_ref().unwrap();
        assert!(r.lc_k.unwrap() as f64 > b.theorem1_bound);
    }
    let text = std::fs::read_to_string(&out).unwrap();
    for (line, r) in text.lines().zip(&records) {
        assert_eq!(serde_json::to_string(r).unwrap(), line);
    }

    let again = dir.path().join("again.jsonl");
    run(&["sweep", "--config", config.to_str().unwrap(), "--out", again.to_str().unwrap()]);
    let strip = |rs: Vec<sweep::ResultRecord>| rs.iter().map(|r| r.without_timing()).collect::<Vec<_>>();
    assert_eq!(strip(records), strip(sweep::read_records(&again).unwrap()));
}

#[test]
fn sweep_edge_cases() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("empty.toml");
    let out = dir.path().join("empty.jsonl");
    std::fs::write(&config, "q = []\nd = 3\n").unwrap();
    let res = run(&["sweep", "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(res.code, 0);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "");

    std::fs::write(&config, "q = [1423]\nd = 3\nl = \"half\"\nk = { min = 0, max = 1 }\nbudget = 1\n").unwrap();
    run(&["sweep", "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    let records = sweep::read_records(&out).unwrap();
    assert_eq!(records[0].status, sweep::Status::Ok);
    assert_eq!(records[1].status, sweep::Status::BudgetExceeded);

    std::fs::write(&config, "q = [7]\nd = 3\nbudget = 0\n").unwrap();
    let res = run(&["sweep", "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(res.code, cli::EXIT_INVALID);
}

#[test]
fn binary_honours_budget_env() {
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("s.txt");
    std::fs::write(&seq, "3 6\n2 1 1 0 2 0\n").unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_sidelnikov"))
        .args(["klc", "--k", "1", seq.to_str().unwrap()])
        .env(cli::BUDGET_ENV, "4")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(cli::EXIT_BUDGET));
    let ok = Command::new(env!("CARGO_BIN_EXE_sidelnikov"))
        .args(["klc", "--k", "1", seq.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
}
