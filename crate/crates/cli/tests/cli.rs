use std::process::{Command, Output};

use tn_cli::PolyRecord;

fn tnpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tnpoly"))
        .args(args)
        .env_remove("TN_PREC")
        .output()
        .unwrap()
}

fn out(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn err(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn pn_text() {
    let o = tnpoly(&["pn", "--n", "107"]);
    assert!(o.status.success());
    assert_eq!(out(&o), "x^3 - 2x^2 + 4x - 1\n");
}

#[test]
fn bad_n_exits_with_one_line_reason() {
    let o = tnpoly(&["pn", "--n", "12"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(out(&o).is_empty());
    let stderr = err(&o);
    let reasons: Vec<&str> = stderr.lines().filter(|l| l.starts_with("error:")).collect();
    assert_eq!(reasons, vec!["error: n must be ≡ 11 mod 24 (got 12)"]);
}

#[test]
fn unparsable_arguments_exit_1() {
    let o = tnpoly(&["pn", "--n", "eleven"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(err(&o).lines().count(), 1);
    assert_eq!(tnpoly(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn json_round_trips_byte_for_byte() {
    for args in [
        &["--format", "json", "pn", "--n", "611"][..],
        &["--format", "json", "hilbert", "--disc", "-107"][..],
    ] {
        let o = tnpoly(args);
        assert!(o.status.success());
        let text = out(&o);
        let rec: PolyRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&rec).unwrap() + "\n", text);
        // and the same bytes on a second run
        assert_eq!(out(&tnpoly(args)), text);
    }
}

#[test]
fn json_fields() {
    let o = tnpoly(&["pn", "--n", "35", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out(&o)).unwrap();
    assert_eq!(v["n"], 35);
    assert_eq!(v["discriminant"], -35);
    assert_eq!(v["class_number"], 2);
    assert_eq!(v["coefficients"], serde_json::json!(["-1", "1", "1"]));
    assert_eq!(v["precision_digits"], 120);
    assert!(v["max_residual"].as_f64().unwrap() < 1e-10);

    let h = tnpoly(&["hilbert", "--disc", "-107", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out(&h)).unwrap();
    assert!(v["n"].is_null());
    assert_eq!(v["coefficients"][0], "337618789203968000000000");
}

#[test]
fn range_is_ordered_and_tab_separated() {
    let o = tnpoly(&["pn-range", "--from", "1", "--to", "110"]);
    assert!(o.status.success());
    let ns: Vec<i64> = out(&o)
        .lines()
        .map(|l| l.split('\t').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(ns, vec![11, 35, 59, 83, 107]);

    let j = tnpoly(&["pn-range", "--from", "100", "--to", "110", "--format", "json"]);
    let recs: Vec<PolyRecord> = serde_json::from_str(&out(&j)).unwrap();
    assert_eq!(recs.len(), 1);

    let bad = tnpoly(&["pn-range", "--from", "200", "--to", "100"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn precision_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_tnpoly"))
        .args(["pn", "--n", "59", "--format", "json"])
        .env("TN_PREC", "60")
        .output()
        .unwrap();
    let rec: PolyRecord = serde_json::from_str(&out(&o)).unwrap();
    assert_eq!(rec.precision_digits, 60);
    // the flag wins over the variable
    let o = Command::new(env!("CARGO_BIN_EXE_tnpoly"))
        .args(["pn", "--n", "59", "--format", "json", "--prec", "80"])
        .env("TN_PREC", "60")
        .output()
        .unwrap();
    let rec: PolyRecord = serde_json::from_str(&out(&o)).unwrap();
    assert_eq!(rec.precision_digits, 80);
}

#[test]
fn timing_stays_off_stdout() {
    let o = tnpoly(&["pn", "--n", "11"]);
    assert_eq!(out(&o), "x - 1\n");
    assert!(err(&o).contains("elapsed"));
}

#[test]
fn non_squarefree_n_warns_but_succeeds() {
    let o = tnpoly(&["pn", "--n", "275"]);
    assert!(o.status.success());
    assert_eq!(out(&o), "x^4 - x^3 + 6x^2 - 11x + 1\n");
    assert!(err(&o).contains("warning: 275 is not squarefree"));
    assert!(!err(&tnpoly(&["pn", "--n", "107"])).contains("warning"));
}

#[test]
fn check_invariance_and_selftest() {
    let o = tnpoly(&["check-invariance"]);
    assert!(o.status.success());
    let lines: Vec<String> = out(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 3);
    assert!(lines.iter().all(|l| l.starts_with("PASS")));

    let s = tnpoly(&["selftest", "--prec", "60"]);
    assert!(s.status.success(), "{}", out(&s));
    assert!(out(&s).lines().all(|l| l.starts_with("PASS")));
}
