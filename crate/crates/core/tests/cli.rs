use std::process::Command;

use qiso2::cli::{format_rep, parse_rep, parse_scalar, run_from};
use qiso2::repmod::Params;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = run_from(std::iter::once("qiso2").chain(args.iter().copied()));
    (out.code, out.stdout)
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out) = run(&full);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")))
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["confluence"]).0, 0);
    assert_eq!(run(&["confluence", "--broken"]).0, 1);
    assert_eq!(run(&["nf", "T1^2 +"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["--window", "3:-3", "rep", "spectrum"]).0, 2);
    assert_eq!(run(&["equiv", "classical:r=1,s=s", "pi:r=1,s=s"]).0, 2);
}

#[test]
fn parse_errors_carry_a_position() {
    let (code, msg) = run(&["nf", "T1^2 +"]);
    assert_eq!(code, 2);
    assert!(msg.contains("line 1, column 7"), "{msg}");
}

#[test]
fn normal_form_as_json() {
    let (code, v) = json(&["nf", "T2*T1"]);
    assert_eq!(code, 0);
    assert_eq!(v["algebra"], "iso2");
    assert_eq!(v["nf"], "q^-1 T1 T2");
}

#[test]
fn verify_reports_have_check_status_witness() {
    let (code, v) = json(&["verify", "casimir"]);
    assert_eq!(code, 0);
    let reports = match &v {
        Value::Array(a) => a.clone(),
        other => vec![other.clone()],
    };
    for r in reports {
        assert!(r["check"].is_string());
        assert_eq!(r["status"], "pass");
        assert!(r.get("witness").is_some());
    }
    assert_eq!(v["witness"]["value_on_R_rs"], "r^2");
}

#[test]
fn failing_confluence_names_the_overlap() {
    let (code, v) = json(&["confluence", "--broken"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "fail");
    assert!(!v["witness"]["failing_overlaps"].as_array().unwrap().is_empty());
}

#[test]
fn matrix_csv_lists_nonzero_entries() {
    let (code, out) = run(&["--mode", "numeric", "--format", "csv", "--window", "-1:1", "rep", "matrix", "T1"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("row,col,value"));
    let rows: Vec<(i64, i64)> = lines
        .map(|l| {
            let mut f = l.splitn(3, ',');
            (f.next().unwrap().parse().unwrap(), f.next().unwrap().parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|(i, j)| (i - j).abs() == 1));
}

#[test]
fn matrix_json_is_parseable() {
    let (code, v) = json(&["--window", "-2:2", "rep", "matrix", "I"]);
    assert_eq!(code, 0);
    assert!(v.is_object() || v.is_array(), "{v}");
}

#[test]
fn classify_and_canon() {
    assert!(run(&["classify", "--s", "i*q^(5/2)"]).1.contains("m=2, eps=1"));
    let (code, v) = json(&["classify", "--s", "-i*q^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["label"]["NotExtendable"]["n"], 2);
    let (code, out) = run(&["equiv", "classical:r=r,s=s", "classical:r=-r,s=q^3*s"]);
    assert_eq!((code, out.trim()), (0, "equivalent"));
    assert_eq!(run(&["canon", "nc:r=-r,eps=1,eps2=1"]).1.trim(), "nonclassical:r=r,eps=1,eps2=-1");
}

#[test]
fn intertwine_exit_code_follows_result() {
    let base = ["--mode", "numeric", "--window", "-10:10", "intertwine"];
    let yes = [&base[..], &["classical:r=2.1,s=0.8+0.3i", "classical:r=-2.1,s=2.312+0.867i"]].concat();
    let no = [&base[..], &["classical:r=2.1,s=0.8+0.3i", "classical:r=2.1,s=1+0.3i"]].concat();
    assert_eq!(run(&no).0, 1);
    let (code, out) = run(&yes);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn rep_specs_round_trip() {
    let base = Params::symbolic();
    for spec in ["classical:r=r,s=s", "nonclassical:r=2,eps=-1,eps2=1", "pi:r=r,s=q*s"] {
        let p = parse_rep(spec, &base, parse_scalar).unwrap();
        assert_eq!(parse_rep(&format_rep(&p), &base, parse_scalar).unwrap(), p);
    }
}

#[test]
fn binary_splits_stdout_and_stderr() {
    let bin = env!("CARGO_BIN_EXE_qiso2");
    let ok = Command::new(bin).args(["nf", "T2*T1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("T1 T2"));
    let bad = Command::new(bin).args(["nf", "T1^2 +"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(ok.stderr.is_empty() && !bad.stderr.is_empty());
}
