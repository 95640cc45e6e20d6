//! End-to-end tests of the command-line interface.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn relloc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relloc"))
        .args(args)
        .output()
        .expect("failed to launch binary")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let out = relloc(args);
    assert!(
        out.status.success(),
        "expected success for {args:?}, got {:?}\nstderr: {}",
        out.status.code(),
        stderr(&out)
    );
    stdout(&out)
}

fn exit_code(args: &[&str]) -> i32 {
    relloc(args).status.code().expect("no exit code")
}

#[test]
fn eval_builtin_alias_at_rest() {
    let path = fixture("rest.json");
    let out = run_ok(&["eval", path.to_str().unwrap(), "P0"]);
    assert_eq!(out.trim(), "-2");
}

#[test]
fn eval_with_light_speed_override() {
    let path = fixture("rest.json");
    let out = run_ok(&["eval", path.to_str().unwrap(), "P0", "--c", "3"]);
    assert_eq!(out.trim(), "-6");
}

#[test]
fn eval_angular_momentum_expression() {
    let path = fixture("spin2.json");
    let out = run_ok(&["eval", path.to_str().unwrap(), "x1*p2 - x2*p1 + s3"]);
    assert_eq!(out.trim(), "3"); // 1*1 - 0 + 2
}

#[test]
fn eval_json_format_carries_schema() {
    let path = fixture("rest.json");
    let out = run_ok(&["eval", path.to_str().unwrap(), "P0", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["schema"], "relloc/1");
    assert_eq!(doc["value"], -2.0);
}

#[test]
fn eval_syntax_error_exits_2() {
    let path = fixture("rest.json");
    let out = relloc(&["eval", path.to_str().unwrap(), "x1 +"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("parse error"));
}

#[test]
fn eval_invalid_state_exits_2() {
    let path = fixture("missing-spin-direction.json");
    let out = relloc(&["eval", path.to_str().unwrap(), "P0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("spin direction"));
}

#[test]
fn bracket_canonical_pair() {
    let path = fixture("rest.json");
    let out = run_ok(&["bracket", path.to_str().unwrap(), "x1", "p1"]);
    assert_eq!(out.trim(), "1");
}

#[test]
fn bracket_spin_components() {
    // {s1, s2} = s3 = S = 2 for the unit spin direction e3
    let path = fixture("spin2.json");
    let out = run_ok(&["bracket", path.to_str().unwrap(), "s1", "s2"]);
    assert_eq!(out.trim(), "2");
}

#[test]
fn bracket_generators_match_algebra() {
    // {J12, P1} = P2 at any state
    let path = fixture("moving.json");
    let lhs = run_ok(&["bracket", path.to_str().unwrap(), "J12", "P1"]);
    let rhs = run_ok(&["eval", path.to_str().unwrap(), "p2"]);
    let lhs: f64 = lhs.trim().parse().unwrap();
    let rhs: f64 = rhs.trim().parse().unwrap();
    assert!((lhs - rhs).abs() < 1e-12);
}

#[test]
fn bracket_symbolic_output() {
    let path = fixture("rest.json");
    let out = run_ok(&["bracket", path.to_str().unwrap(), "x1", "p1", "--symbolic"]);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap().trim(), "1");
    assert_eq!(lines.next().unwrap().trim(), "1");
}

#[test]
fn worldline_rest_state_advances_along_time() {
    let path = fixture("rest.json");
    let out = run_ok(&[
        "worldline",
        path.to_str().unwrap(),
        "--choice",
        "nw",
        "--tau",
        "0:1:2",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "tau,x0,x1,x2,x3");
    assert_eq!(lines[1], "0,0,0,0,0");
    assert_eq!(lines[2], "1,1,0,0,0");
}

#[test]
fn worldline_rows_follow_the_momentum_slope() {
    let path = fixture("moving.json");
    let out = run_ok(&[
        "worldline",
        path.to_str().unwrap(),
        "--choice",
        "ci",
        "--tau",
        "-1:1:5",
    ]);
    let rows: Vec<Vec<f64>> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 5);
    // consecutive differences are all equal (the observable is affine in tau)
    for k in 0..4 {
        for c in 0..5 {
            let d1 = rows[k + 1][c] - rows[k][c];
            let d0 = rows[1][c] - rows[0][c];
            assert!((d1 - d0).abs() < 1e-10, "column {c} not affine");
        }
    }
    // the time column advances: direction is future-directed
    assert!(rows[1][1] > rows[0][1]);
}

#[test]
fn worldline_choices_differ_but_share_slope() {
    let path = fixture("moving.json");
    let grab = |choice: &str| -> Vec<Vec<f64>> {
        run_ok(&[
            "worldline",
            path.to_str().unwrap(),
            "--choice",
            choice,
            "--tau",
            "0:1:2",
        ])
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
    };
    let nw = grab("nw");
    let ce = grab("ce");
    let ci = grab("ci");
    // spinning state: the three observables sit at different points
    assert!((1..5).any(|c| (nw[0][c] - ce[0][c]).abs() > 1e-6));
    assert!((1..5).any(|c| (nw[0][c] - ci[0][c]).abs() > 1e-6));
    // but all advance with the same slope
    for c in 0..5 {
        let d_nw = nw[1][c] - nw[0][c];
        let d_ce = ce[1][c] - ce[0][c];
        let d_ci = ci[1][c] - ci[0][c];
        assert!((d_nw - d_ce).abs() < 1e-10);
        assert!((d_nw - d_ci).abs() < 1e-10);
    }
}

#[test]
fn worldline_rejects_bad_tau_range() {
    let path = fixture("rest.json");
    assert_eq!(
        exit_code(&["worldline", path.to_str().unwrap(), "--tau", "0:1:0"]),
        2
    );
    assert_eq!(
        exit_code(&["worldline", path.to_str().unwrap(), "--tau", "nonsense"]),
        2
    );
}

#[test]
fn moller_reports_radius_and_schema() {
    let path = fixture("rest.json");
    let out = run_ok(&["moller", path.to_str().unwrap()]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["schema"], "relloc/1");
    assert_eq!(doc["radius"], 0.5);
    assert!(doc["diagnostics"]["eta_normal_p"].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn verify_passes_and_is_deterministic() {
    let args = ["verify", "algebra", "--samples", "10"];
    let first = relloc(&args);
    let second = relloc(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "report must be byte-identical");
    assert!(stdout(&first).contains("algebra,generator-brackets-spinning"));
}

#[test]
fn verify_unknown_suite_exits_2() {
    let out = relloc(&["verify", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("available"));
}

#[test]
fn verify_unattainable_tolerance_exits_1() {
    let code = exit_code(&[
        "verify",
        "algebra",
        "--samples",
        "5",
        "--tol",
        "algebra=1e-30",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn verify_json_report() {
    let out = run_ok(&[
        "verify",
        "hodge",
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["schema"], "relloc/1");
    assert_eq!(doc["reports"][0]["suite"], "hodge");
    assert_eq!(doc["reports"][0]["passed"], true);
}

#[test]
fn missing_state_file_exits_2() {
    assert_eq!(exit_code(&["eval", "/nonexistent/state.json", "P0"]), 2);
}
