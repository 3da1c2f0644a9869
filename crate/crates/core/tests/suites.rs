use graded_zeta::analytic::EvalConfig;
use graded_zeta::verify::{run_suite, Suite};

fn passes(suite: Suite) {
    let report = run_suite(suite, &EvalConfig::default()).unwrap();
    assert!(report.passed(), "{report}");
}

#[test]
fn example23() {
    passes(Suite::Example23);
}

#[test]
fn example24() {
    let report = run_suite(Suite::Example24, &EvalConfig::default()).unwrap();
    assert!(report.passed(), "{report}");
    assert!(report.max_deviation() <= 1e-9);
    assert!(report.notes.iter().any(|n| n.contains("alpha = 2")));
}

#[test]
fn shift() {
    passes(Suite::Shift);
}

#[test]
fn additivity() {
    passes(Suite::Additivity);
}

#[test]
fn ci() {
    passes(Suite::Ci);
}

#[test]
fn report_lists_failures_and_notes() {
    let report = run_suite(Suite::Example24, &EvalConfig::default()).unwrap();
    let text = report.to_string();
    assert!(text.starts_with("PASS example24"));
    assert!(text.contains("note:"));
}
