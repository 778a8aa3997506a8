use std::process::{Command, Output};

use serde_json::Value;

fn recip(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_recip")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn member_in_with_replay() {
    let o = recip(&["--ring", "QQ[x,y]", "--replay", "member", "x", "x^3+y^2+x^4*y"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "in");
    assert_eq!(v["replayed"], true);
}

#[test]
fn member_out_by_degree() {
    let o = recip(&["--ring", "QQ[x]", "member", "x^3", "x^2+1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdict"], "out");
}

#[test]
fn invert_two_terms() {
    let o = recip(&["--ring", "QQ[x]", "invert", "1+1/x"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["denominators"], serde_json::json!(["1", "-x - 1"]));
}

#[test]
fn output_is_deterministic() {
    let args = ["--ring", "GF(5)[x,y]", "distinctify", "1/x + 1/x + 1/y + 1/y"];
    let (a, b) = (recip(&args), recip(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn greedy_four_seventeenths() {
    let o = recip(&["greedy", "4/17"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["denominators"], serde_json::json!(["5", "29", "1233", "3039345"]));
}

#[test]
fn small_budget_gives_unknown_exit() {
    let o = recip(&["--ring", "QQ[x,y]", "--budget", "5", "member", "x*y", "x^3+y^3+x*y+1"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["verdict"], "unknown");
    assert_eq!(v["caps"]["budget"], 5);
}

#[test]
fn exhausted_decomposition_exits_2() {
    let o = recip(&["--ring", "QQ[x,y]", "--budget", "5", "decompose", "x", "x^3+y^2+x^4*y"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(json(&o)["error"].as_str().unwrap().contains("no decomposition"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(recip(&["--ring", "QQ[x", "member", "x", "y"]).status.code(), Some(64));
    assert_eq!(recip(&["member", "x"]).status.code(), Some(64));
    assert_eq!(recip(&["--caps", "bogus=1", "member", "x", "y"]).status.code(), Some(64));
    assert_eq!(recip(&["greedy", "x"]).status.code(), Some(64));
    assert_eq!(recip(&["--help"]).status.code(), Some(0));
}

#[test]
fn lattice_dot_and_text() {
    let o = recip(&["--ring", "GF(3)[x,y]", "lattice", "2", "--dot"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("digraph"));
    let t = recip(&["--ring", "GF(3)[x,y]", "--format", "text", "lattice", "2"]);
    assert_eq!(t.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&t.stdout).contains("edges:"));
}

#[test]
fn oracle_finds_multiplier() {
    let o = recip(&["--ring", "GF(2)[x]", "--replay", "oracle", "x", "x^2+x+1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "in");
    assert_eq!(v["replayed"], true);
}

#[test]
fn irred_report_finds_reducible_shift() {
    let o = recip(&["--ring", "GF(2)[x,y]", "irred-report", "x*y+x+y"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["4"]["verdict"], "fails");
    assert_eq!(v["chain_consistent"], true);
}

#[test]
fn pseudoradical_two_factors() {
    let o = recip(&["--ring", "QQ[x,y]", "pseudoradical", "x*y"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdict"], "yes");
}

#[test]
fn reproduction_suite_passes() {
    let o = recip(&["verify-paper"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let out = String::from_utf8_lossy(&o.stdout);
    assert_eq!(out.lines().filter(|l| l.contains(" PASS ")).count(), 10);
}
