use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_theta-jordan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["verify", "--format", "json", "--no-timestamps"];
    all.extend_from_slice(args);
    let out = bin(&all);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn column(report: &Value, key: &str) -> Vec<u64> {
    report["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e[key].as_u64().unwrap())
        .collect()
}

#[test]
fn default_run_has_six_entries() {
    let v = json(&[]);
    assert_eq!(v["schema"], "theta-jordan/1");
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(column(&reports[0], "n"), vec![2, 4, 6]);
    assert_eq!(column(&reports[1], "n"), vec![1, 3, 5]);
    assert_eq!(column(&reports[0], "min_abelian_index"), vec![2, 4, 6]);
    assert_eq!(column(&reports[1], "min_abelian_index"), vec![1, 3, 5]);
    assert!(reports
        .iter()
        .flat_map(|r| r["entries"].as_array().unwrap())
        .all(|e| e["method"] == "both"));
}

#[test]
fn class_zero_oracle() {
    let v = json(&["--class", "0", "--max-n", "4", "--mode", "oracle"]);
    let r = &v["reports"][0];
    assert_eq!(column(r, "n"), vec![2, 4]);
    assert_eq!(column(r, "min_abelian_index"), vec![2, 4]);
    assert_eq!(r["entries"][0]["method"], "oracle");
}

#[test]
fn class_one_up_to_three() {
    let v = json(&["--class", "1", "--max-n", "3"]);
    let r = &v["reports"][0];
    assert_eq!(column(r, "n"), vec![1, 3]);
    assert_eq!(column(r, "min_abelian_index"), vec![1, 3]);
    assert_eq!(r["manifold_class"]["parity"], 1);
}

#[test]
fn structural_run_is_uncapped() {
    let out = bin(&[
        "verify",
        "--class",
        "1",
        "--mode",
        "structural",
        "--max-n",
        "1000000",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 500_000);
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("1,999999,999997000002999999,"), "{last}");
}

#[test]
fn oracle_mode_falls_back_above_cap() {
    let v = json(&[
        "--class",
        "1",
        "--max-n",
        "9",
        "--mode",
        "oracle",
        "--oracle-cap",
        "200",
    ]);
    let methods: Vec<&str> = v["reports"][0]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["method"].as_str().unwrap())
        .collect();
    assert_eq!(
        methods,
        ["oracle", "oracle", "oracle", "structural", "structural"]
    );
}

#[test]
fn base_group_override() {
    let v = json(&["--base-group", "Z2xZ2"]);
    let e = &v["reports"][0]["entries"][0];
    assert_eq!(e["n"], 4);
    assert_eq!(e["group_order"], 64);
    assert_eq!(e["max_abelian_order"], 16);
    assert_eq!(v["config"]["base_group"], "Z2xZ2");
}

#[test]
fn deterministic_json() {
    let a = bin(&["verify", "--format", "json", "--no-timestamps"]);
    let b = bin(&["verify", "--format", "json", "--no-timestamps"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let with_time = json_with_timestamps();
    assert!(with_time["timestamps"]["total_elapsed_ms"].is_number());
}

fn json_with_timestamps() -> Value {
    let out = bin(&["verify", "--format", "json", "--max-n", "2"]);
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "--mode", "orakle"][..],
        &["verify", "--max-n", "0"],
        &["verify", "--class", "3"],
        &["verify", "--base-group", "Z4 xZ2"],
        &["verify", "--frobnicate"],
        &[],
    ] {
        assert_eq!(bin(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn injected_fault_exits_1() {
    let out = bin(&["verify", "--inject-fault", "--max-n", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("violation"));
    let structural = bin(&["verify", "--inject-fault", "--mode", "structural"]);
    assert_eq!(structural.status.code(), Some(0));
}

#[test]
fn io_failure_exits_3() {
    let out = bin(&["verify", "--out", "/nonexistent-dir/x/report.json"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn writes_output_file() {
    let dir = std::env::temp_dir().join(format!("theta-jordan-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.csv");
    let out = bin(&[
        "verify",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
        "--max-n",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("manifold_class,n,group_order"));
    assert_eq!(text.lines().count(), 4);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn table_format_mentions_certificates() {
    let out = bin(&["verify"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("class 0 (T2 x S2)"));
    assert!(text.contains("c = 5: refuted by n = 6"));
}
