use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use stackprod_core::{validate_instance, Ratio, RawInstance};

fn worked() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/worked.json")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stackprod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON report")
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn solve_worked_instance() {
    let path = worked();
    let r = json(&["solve", path.to_str().unwrap()]);
    let res = &r["result"];
    assert_eq!(res["value"], "28/3");
    assert_eq!(res["support"], serde_json::json!([1, 2, 3, 4]));
    assert_eq!(strs(&res["strategy"]), ["1/2", "5/6", "1/3", "10/3", "0"]);
    let rates: Vec<&str> = res["trace"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["rate"].as_str().unwrap())
        .collect();
    assert_eq!(rates, ["0", "3/4", "8/5", "28/15"]);
    assert_eq!(res["stopped_at"], 5);
    assert_eq!(r["instance"]["R_f"], "7/4");
    assert!(r["timing_ms"].is_number());
}

#[test]
fn human_output_shows_decimals() {
    let out = run(&["solve", worked().to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("value: 28/3 (≈9.3333)"), "{text}");
    assert!(text.contains("support: [1, 2, 3, 4]"), "{text}");
}

#[test]
fn json_output_has_no_decimals() {
    let out = run(&["--format", "json", "solve", worked().to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains('≈'));
    assert!(!text.contains("9.333"));
}

#[test]
fn single_facility_gets_the_whole_budget() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        &dir,
        "one.json",
        r#"{"facilities":[{"p":"3","a":"2"}],"R_l":"4","R_f":"1/2"}"#,
    );
    let r = json(&["solve", path.to_str().unwrap()]);
    assert_eq!(strs(&r["result"]["strategy"]), ["4"]);
    // (2 - 1/2) / (2/3) * 4 = 9
    assert_eq!(r["result"]["value"], "9");
}

#[test]
fn trivial_follower_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        &dir,
        "trivial.json",
        r#"{"facilities":[{"p":"3","a":"1"},{"p":"2","a":"1"}],"R_l":"1","R_f":"2"}"#,
    );
    let out = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("every facility would be destroyed"), "{err}");
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        &dir,
        "bad.json",
        "{\n  \"facilities\": [\n    {\"p\": \"1/0\", \"a\": \"1\"}\n  ],\n  \"R_l\": \"1\",\n  \"R_f\": \"1/2\"\n}\n",
    );
    let out = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.json:3:"), "{err}");
}

#[test]
fn follower_best_response() {
    let path = worked();
    let r = json(&["follower", path.to_str().unwrap(), "--x", "0,7/10,3/10,0,4"]);
    let res = &r["result"];
    assert_eq!(strs(&res["y"]), ["0", "1", "1/4", "0", "1/2"]);
    assert_eq!(res["value"], "4/3");
    assert_eq!(res["threshold"], 5);
    assert_eq!(res["destroyed"], serde_json::json!([2, 3, 5]));
    assert_eq!(strs(&res["destruction_ratios"]), ["0", "28/5", "6", "0", "16/3"]);
}

#[test]
fn follower_against_zero_strategy() {
    let path = worked();
    let r = json(&["follower", path.to_str().unwrap(), "--x", "0,0,0,0,0"]);
    assert_eq!(r["result"]["value"], "0");
}

#[test]
fn follower_reads_strategy_files() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(&dir, "x.json", r#"["0", "0.7", "3/10", "0", "4"]"#);
    let path = worked();
    let r = json(&["follower", path.to_str().unwrap(), "--x", x.to_str().unwrap()]);
    assert_eq!(r["result"]["value"], "4/3");
}

#[test]
fn over_budget_strategy_is_infeasible() {
    let out = run(&["follower", worked().to_str().unwrap(), "--x", "1,7/10,3/10,0,4"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("exceeds budget"), "{err}");
}

#[test]
fn evaluate_rows() {
    let path = worked();
    let r = json(&[
        "evaluate",
        path.to_str().unwrap(),
        "--x",
        "0,7/10,3/10,0,4",
        "--y",
        "0,7/8,1/8,0,3/4",
    ]);
    let rows = r["result"]["rows"].as_array().unwrap();
    let col = |key: &str| -> Vec<&str> { rows.iter().map(|row| row[key].as_str().unwrap()).collect() };
    assert_eq!(col("production"), ["0", "28/5", "3/2", "0", "4"]);
    assert_eq!(col("reduction"), ["0", "49/10", "3/4", "0", "4"]);
    assert_eq!(r["result"]["value"], "29/20");

    let r = json(&[
        "evaluate",
        path.to_str().unwrap(),
        "--x",
        "0,7/10,3/10,0,4",
        "--y",
        "0,0,0,0,0",
    ]);
    assert_eq!(r["result"]["value"], "111/10");

    let r = json(&[
        "evaluate",
        path.to_str().unwrap(),
        "--x",
        "0,7/10,3/10,0,4",
        "--y",
        "0,1,1/4,0,1/2",
    ]);
    assert_eq!(r["result"]["value"], "4/3");
}

#[test]
fn subset_check_on_worked_instance() {
    let path = worked();
    let r = json(&["check", path.to_str().unwrap(), "--oracle", "subset"]);
    let trial = &r["result"]["trials"][0];
    assert_eq!(trial["agree"], true);
    assert_eq!(trial["gap"], "0");
}

#[test]
fn grid_check_single_facility_resolution_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        &dir,
        "one.json",
        r#"{"facilities":[{"p":"2","a":"1"}],"R_l":"3","R_f":"1/4"}"#,
    );
    let r = json(&["check", path.to_str().unwrap(), "--oracle", "grid", "--resolution", "1"]);
    assert_eq!(r["result"]["agreed"], 1);
    assert_eq!(r["result"]["trials"][0]["gap"], "0");
}

#[test]
fn seeded_subset_trials_agree() {
    let r = json(&["check", "--oracle", "subset", "--trials", "100", "--seed", "11"]);
    assert_eq!(r["result"]["agreed"], 100);
    assert_eq!(r["result"]["total"], 100);
}

#[test]
fn seeded_follower_and_grid_trials_agree() {
    let r = json(&["check", "--oracle", "follower", "--trials", "30", "--seed", "3"]);
    assert_eq!(r["result"]["agreed"], 30);
    let r = json(&[
        "check",
        "--oracle",
        "grid",
        "--trials",
        "5",
        "--resolution",
        "8",
        "--max-n",
        "2",
    ]);
    assert_eq!(r["result"]["agreed"], 5);
}

#[test]
fn oversized_checks_are_refused() {
    let out = run(&["check", "--oracle", "follower", "--max-n", "12"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = run(&["generate", "--n", "5", "--seed", "42", "-o", path.to_str().unwrap()]);
        assert!(out.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let out = run(&["generate", "--n", "5", "--seed", "42"]);
    assert_eq!(out.stdout, fs::read(&a).unwrap());
}

#[test]
fn generated_instances_validate_and_pass_subset_check() {
    let dir = tempfile::tempdir().unwrap();
    for (n, seed) in [(1, 0), (4, 9), (8, 77)] {
        let path = dir.path().join(format!("g{n}.json"));
        assert!(run(&[
            "generate",
            "--n",
            &n.to_string(),
            "--seed",
            &seed.to_string(),
            "-o",
            path.to_str().unwrap()
        ])
        .status
        .success());
        let raw = RawInstance::from_json(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(validate_instance(&raw).unwrap().len(), n);
        let r = json(&["check", path.to_str().unwrap(), "--oracle", "subset"]);
        assert_eq!(r["result"]["agreed"], 1);
    }
}

#[test]
fn generate_solve_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    assert!(
        run(&["generate", "--n", "12", "--seed", "5", "-o", path.to_str().unwrap()])
            .status
            .success()
    );
    let r = json(&["solve", path.to_str().unwrap()]);

    let inst = validate_instance(&RawInstance::from_json(&fs::read_to_string(&path).unwrap()).unwrap()).unwrap();
    let expected = stackprod_core::solve(&inst);
    let parse = |v: &Value| v.as_str().unwrap().parse::<Ratio>().unwrap();
    assert_eq!(parse(&r["result"]["value"]), expected.value);
    assert_eq!(parse(&r["result"]["rate"]), expected.rate);
    let x: Vec<Ratio> = r["result"]["strategy"].as_array().unwrap().iter().map(parse).collect();
    assert_eq!(x, expected.strategy.to_original(&inst));
    // Emitted fractions print back to the same strings.
    for v in r["result"]["strategy"].as_array().unwrap() {
        assert_eq!(parse(v).to_string(), v.as_str().unwrap());
    }
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["solve"]).status.code(), Some(1));
    assert_eq!(run(&["check", "--oracle", "nope"]).status.code(), Some(1));
    assert_eq!(run(&["generate", "--n", "0"]).status.code(), Some(1));
}
