//! Runs every acceptance check and prints one line per check. Exits nonzero
//! when any check fails.

use arboreal::checks::{run_check, CHECKS};

fn main() {
    let mut failed = Vec::new();
    for c in CHECKS {
        let start = std::time::Instant::now();
        let report = run_check(c);
        println!("{}  [{:.1}s]", report.summary_line(), start.elapsed().as_secs_f64());
        if !report.pass() {
            for item in report.items.iter().filter(|i| !i.pass) {
                println!("    {}: expected {} computed {}", item.name, item.expected, item.computed);
            }
            failed.push(c.id);
        }
    }
    println!("acceptance: {} of {} checks pass", CHECKS.len() - failed.len(), CHECKS.len());
    if !failed.is_empty() {
        eprintln!("failing checks: {failed:?}");
        std::process::exit(1);
    }
}
