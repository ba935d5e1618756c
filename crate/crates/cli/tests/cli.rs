//! CLI behavior: exit statuses (0 pass, 1 mathematical failure, 2 input
//! error), report shape, and `--out` file writing.

use std::process::Output;

fn nilfract(args: &[&str]) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_nilfract"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{}", env!("CARGO_MANIFEST_DIR"), name)
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn localize_passes_with_certificate() {
    let out = nilfract(&["localize", "--group", "cyclic:6", "--away", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["pass"], serde_json::json!(true));
    assert_eq!(report["result"]["localized"]["order"], serde_json::json!(3));
    assert_eq!(report["result"]["is_local"], serde_json::json!(true));
}

#[test]
fn localize_refuses_non_nilpotent_with_exit_1() {
    let out = nilfract(&["localize", "--group", "symmetric:3", "--away", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert_eq!(report["pass"], serde_json::json!(false));
    assert!(report["result"]["error"]
        .as_str()
        .unwrap()
        .contains("not nilpotent"));
}

#[test]
fn parse_errors_exit_2() {
    for args in [
        vec!["localize", "--group", "frobnicate:7", "--away", "2"],
        vec!["localize", "--group", "cyclic:6", "--away", "0"],
        vec!["fracture", "--group", "ab:[6]", "--r", "2", "--s", "2"],
        vec!["snf", "--matrix", "not json"],
    ] {
        let out = nilfract(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn fracture_group_report() {
    let out = nilfract(&["fracture", "--group", "ab:[6]", "--r", "2", "--s", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["pass"], serde_json::json!(true));
    assert_eq!(
        report["result"]["certificate"]["torsion_pairs"],
        serde_json::json!(6)
    );
}

#[test]
fn fracture_finite_group_report() {
    let out = nilfract(&["fracture", "--group", "cyclic:12", "--r", "2", "--s", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["result"]["pi1"]["order_r"], serde_json::json!(3));
    assert_eq!(report["result"]["pi1"]["order_s"], serde_json::json!(4));
}

#[test]
fn nilpotency_answers_without_failing() {
    let out = nilfract(&["nilpotency", "--group", "symmetric:3"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["result"]["nilpotent"], serde_json::json!(false));
    assert_eq!(report["result"]["sylow"], serde_json::Value::Null);

    let out = nilfract(&["nilpotency", "--group", "cyclic:12"]);
    let report = stdout_json(&out);
    assert_eq!(report["result"]["nilpotent"], serde_json::json!(true));
    assert_eq!(
        report["result"]["sylow"][0]["prime"],
        serde_json::json!(2)
    );
}

#[test]
fn series_convert_round_trips() {
    let out = nilfract(&["series-convert", "--group", "quaternion:8"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["result"]["round_trip_identity"], serde_json::json!(true));
    assert_eq!(
        report["result"]["stage_orders"],
        serde_json::json!(["8", "4", "1"])
    );
}

#[test]
fn tower_validate_distinguishes_failure_kinds() {
    let good = fixture("tower_q8.json");
    let out = nilfract(&["tower-validate", "--tower", &good]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["result"]["nilpotency_degree"], serde_json::json!(3));

    // semantically invalid tower: exit 1 with a failure list
    let bad = fixture("tower_bad.json");
    let out = nilfract(&["tower-validate", "--tower", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert_eq!(report["pass"], serde_json::json!(false));

    // unreadable / non-JSON input: exit 2
    let out = nilfract(&["tower-validate", "--tower", "/nonexistent.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tower_localize_and_factorize() {
    let tower = fixture("tower_q8.json");
    let out = nilfract(&["tower-localize", "--tower", &tower, "--away", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["result"]["degree_before"], serde_json::json!(3));
    assert_eq!(report["result"]["degree_after"], serde_json::json!(1));
    assert_eq!(
        report["result"]["localized"]["pi1"]["order"],
        serde_json::json!(1)
    );

    let out = nilfract(&["factorize", "--tower", &tower]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["result"]["total_length"], serde_json::json!(3));
    assert_eq!(
        report["result"]["matches_nilpotency_degree"],
        serde_json::json!(true)
    );
}

#[test]
fn out_flag_writes_the_report() {
    let dir = std::env::temp_dir().join("nilfract-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = nilfract(&[
        "localize",
        "--group",
        "ab:[30]",
        "--away",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let report: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(report["result"]["localized"]["torsion"], serde_json::json!([10]));
    std::fs::remove_file(&path).ok();
}
