use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tilecohom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn generic_report() {
    let o = run(&["report", "--gamma", "1/7+sqrt3/11,1/13+sqrt3/17", "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1056 | 516 | 24 | 540 | 564 | 25 | 1");
}

#[test]
fn origin_json() {
    let o = run(&["report", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["l1"], 6);
    assert_eq!(v["l0"], 14);
    assert_eq!(v["ranks"]["h2"], 28);
    assert_eq!(v["gamma"][0], "0");
    assert!(v.get("elapsed").is_none());
}

#[test]
fn json_is_deterministic() {
    let a = stdout(&run(&["report", "--gamma", "1/5,1/7", "--json"]));
    let b = stdout(&run(&["report", "--gamma", "1/5,1/7", "--json"]));
    assert_eq!(a, b);
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(run(&["report", "--gamma", "1/2"]).status.code(), Some(2));
    assert_eq!(run(&["report", "--gamma", "1/0,0"]).status.code(), Some(2));
    assert_eq!(run(&["report", "--lines", "other"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn representative_dependence_exits_3() {
    let o = run(&["report", "--gamma", "0,1/2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("representatives: DEPENDENT"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("consistency failure"));
}

#[test]
fn l1_counts() {
    for (gamma, want) in [("0,0", "6"), ("1/2,1/7", "21"), ("sqrt3/6,sqrt3/6", "24")] {
        let o = run(&["l1", "--gamma", gamma, "--quiet"]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), format!("L1 = {want}"));
    }
}

#[test]
fn negative_shift_accepted() {
    let a = stdout(&run(&["l1", "--gamma", "-4/5,1/7", "--json"]));
    let b = stdout(&run(&["l1", "--gamma", "1/5,1/7", "--json"]));
    assert_eq!(a, b);
}

#[test]
fn tables_json() {
    let o = run(&["tables", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sum_l0_alpha"], 36);
    assert_eq!(v["lines"].as_array().unwrap().len(), 6);
}

#[test]
fn smith_factors() {
    let o = run(&["smith", "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "invariant factors 1,1,1,0,0,0; rank 3");
}

#[test]
fn window_dump() {
    let o = run(&["verify-window", "--json", "--dump"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vertices"], 52);
    assert_eq!(v["window"]["vertices"].as_array().unwrap().len(), 52);
    assert_eq!(v["cube_list"].as_array().unwrap().len(), 40);
}

#[test]
fn sliced_source_at_origin() {
    let o = run(&["report", "--lines", "sliced", "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "36 | 14 | 6 | 22 | 28 | 7 | 1");
}

#[test]
fn selftest_lists_every_criterion() {
    let o = run(&["--selftest"]);
    let out = stdout(&o);
    for id in 1..=12 {
        assert!(out.contains(&format!("criterion {id:>2} ")), "criterion {id} missing");
    }
    let failed = out.matches(" FAIL: ").count();
    assert_eq!(o.status.code(), Some(if failed == 0 { 0 } else { 3 }));
}
