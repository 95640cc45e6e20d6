//! The acceptance gate: every release-blocking property, one test per
//! criterion, each printing a single summary line.
//!
//! All criteria run the verification suites at their reference configuration
//! (seed 42, 100 samples) and fail if any check inside the suite fails.

use relloc::verify::{run_suite, RunConfig, SuiteId, SuiteReport};

fn reference_config() -> RunConfig {
    RunConfig::default()
}

fn summarise(report: &SuiteReport) -> String {
    report
        .checks
        .iter()
        .map(|c| format!("{}={:.2e}", c.name, c.observed))
        .collect::<Vec<_>>()
        .join(", ")
}

fn gate(number: usize, name: &str, suites: &[SuiteId]) {
    let config = reference_config();
    let reports: Vec<SuiteReport> = suites.iter().map(|&s| run_suite(s, &config)).collect();
    let passed = reports.iter().all(|r| r.passed);
    let details = reports
        .iter()
        .map(summarise)
        .collect::<Vec<_>>()
        .join("; ");
    println!(
        "ACCEPTANCE {number} {name}: {} ({details})",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "criterion {number} ({name}) failed: {reports:#?}");
}

#[test]
fn criterion_1_algebra() {
    gate(1, "algebra", &[SuiteId::Algebra]);
}

#[test]
fn criterion_2_equivariance() {
    gate(2, "equivariance", &[SuiteId::Equivariance]);
}

#[test]
fn criterion_3_nw_theorem() {
    gate(3, "nw-theorem", &[SuiteId::NwTheorem]);
}

#[test]
fn criterion_4_centre_of_spin() {
    gate(4, "centre-of-spin", &[SuiteId::CentreOfSpin]);
}

#[test]
fn criterion_5_moller() {
    gate(5, "moller", &[SuiteId::Moller]);
}

#[test]
fn criterion_6_covariance() {
    gate(6, "covariance", &[SuiteId::Covariance]);
}

#[test]
fn criterion_7_hodge_exp() {
    gate(7, "hodge-exp", &[SuiteId::Hodge, SuiteId::Exponentials]);
}

#[test]
fn criterion_8_bracket_engine() {
    gate(8, "bracket-engine", &[SuiteId::BracketEngine]);
}
