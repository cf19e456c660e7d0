use std::process::{Command, Output};

use svt::cli::json::parse_series;
use svt::liealg::Generator;
use svt::tseries::SeriesValue;
use svt::twist::{delta_closed, TwistContext};

fn svt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_svt")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn expand_text() {
    let o = svt(&["expand", "delta-L", "0", "--m", "1", "--order", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "L_0⊗1 + 1⊗L_0");
    let o = svt(&["expand", "twist", "Fcal", "0", "--m", "1", "--order", "1"]);
    assert_eq!(stdout(&o).trim(), "1⊗1 − (X⊗Y)t");
    let o = svt(&["expand", "delta-G", "-1", "--order", "0"]);
    assert_eq!(stdout(&o).trim(), "G_{-1/2}⊗1 + 1⊗G_{-1/2}");
}

#[test]
fn expand_latex() {
    let o = svt(&["expand", "delta-L", "0", "--m", "1", "--order", "0", "--format", "latex"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "L_{0} \\otimes 1 + 1 \\otimes L_{0}");
}

#[test]
fn expand_json_round_trips() {
    let o = svt(&["expand", "delta-G", "3", "--m", "2", "--order", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let parsed = parse_series(stdout(&o).trim()).unwrap();
    let ctx = TwistContext::new(2, 2).unwrap();
    assert_eq!(parsed, SeriesValue::Tensor(delta_closed(Generator::g2(3), &ctx)));
}

#[test]
fn check_exit_codes() {
    assert_eq!(svt(&["check", "combinatorial", "--order", "0"]).status.code(), Some(0));
    let o = svt(&["check", "xy"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().last().unwrap().starts_with("PASS"));
    assert_eq!(svt(&["check", "nosuch"]).status.code(), Some(2));
    assert_eq!(svt(&["check", "xy", "--m", "0"]).status.code(), Some(2));
    assert_eq!(svt(&["check", "relations", "--i-min", "3", "--i-max", "1"]).status.code(), Some(2));
}

#[test]
fn check_json_report() {
    let o = svt(&["check", "jacobi", "--m", "1", "--i-min", "-1", "--i-max", "1", "--k2-min", "-1", "--k2-max", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite_id"], "jacobi");
    assert_eq!(v["passed"], true);
    assert!(v["cases_run"].as_u64().unwrap() > 0);
}

#[test]
fn list_suites() {
    let o = svt(&["list-suites"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for id in ["relations", "lemma35", "hopf-axioms", "all"] {
        assert!(text.lines().any(|l| l.starts_with(id)), "{id} missing");
    }
}
