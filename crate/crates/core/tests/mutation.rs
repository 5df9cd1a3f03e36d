//! Runs with the measure perturbed; kept in its own binary because the
//! perturbation switch is process-wide.

use arboreal::checks::{run_check, select};
use arboreal::measure::set_perturbation;

#[test]
fn perturbed_measure_is_caught() {
    set_perturbation(true);
    let report = run_check(select("c02").unwrap()[0]);
    let example = run_check(select("c06").unwrap()[0]);
    set_perturbation(false);
    assert!(!report.pass(), "{}", report.summary_line());
    assert!(!example.pass(), "{}", example.summary_line());
    assert!(run_check(select("c02").unwrap()[0]).pass());
}
