use std::process::{Command, Output};

fn qkernel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkernel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn dims_reports_equal_counts() {
    let out = qkernel(&["dims", "--g", "3", "--p", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["command"], "dims");
    assert_eq!(v["passed"], true);
    let w = &v["records"][0]["witness"];
    assert_eq!(w["lollipop_tree"], w["other_graph"]);
}

#[test]
fn same_seed_gives_identical_bytes() {
    for args in [
        ["sp-irred", "--g", "3", "--p", "7", "--trials", "12", "--seed", "9"],
        ["filtration", "--g", "3", "--p", "7", "--trials", "12", "--seed", "9"],
        ["d-prime", "--g", "3", "--p", "7", "--trials", "12", "--seed", "9"],
    ] {
        let a = qkernel(&args);
        let b = qkernel(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(qkernel(&["nonsense"]).status.code(), Some(2));
    assert_eq!(qkernel(&["dims", "--p", "9"]).status.code(), Some(2));
    assert_eq!(qkernel(&["independence", "--g", "2"]).status.code(), Some(2));
    assert_eq!(qkernel(&["sp-irred", "--g", "9"]).status.code(), Some(2));
    assert_eq!(qkernel(&["dims", "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn failing_suite_exits_with_one_and_still_reports() {
    let dir = std::env::temp_dir().join(format!("qkernel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fixtures.json");
    let out = qkernel(&["twist-fixtures", "--p", "5", "--out", path.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    let records = v["records"].as_array().unwrap();
    let gates_ok = records
        .iter()
        .filter(|r| r["test"].as_str().unwrap().starts_with("twist_fixtures.gates"))
        .all(|r| r["verdict"] == "pass");
    assert!(gates_ok);
    let expected = if v["passed"] == true { 0 } else { 1 };
    assert_eq!(out.status.code(), Some(expected));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn csv_has_one_row_per_record() {
    let out = qkernel(&["d-prime", "--p", "5", "--trials", "10", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("test,p,g,verdict,witness"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn defaults_are_genus_three_prime_five() {
    let v = json(&qkernel(&["faithful"]));
    assert_eq!(v["params"]["g"], 3);
    assert_eq!(v["params"]["p"], 5);
    assert_eq!(v["params"]["trials"], 100);
}
