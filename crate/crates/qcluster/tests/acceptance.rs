//! One line per acceptance criterion: status, elapsed time, time limit.
//! Runs without the libtest harness so the lines are never captured.

use qcluster::relations_suite::{CheckContext, CheckRegistry, Status};

fn main() {
    let registry = CheckRegistry::default();
    let ctx = CheckContext::default();
    let report = registry.run_suite("acceptance", &ctx, 1).expect("acceptance suite is registered");
    assert_eq!(report.checks.len(), 8);
    for rec in &report.checks {
        let verdict = match rec.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        let limit = rec.limit.map(|l| format!("{:.0}s", l.as_secs_f64())).unwrap_or_else(|| "none".into());
        println!(
            "criterion {} {verdict} [{:.3}s, limit {limit}] {}: {}",
            rec.criterion.unwrap_or(0),
            rec.elapsed.as_secs_f64(),
            rec.name,
            rec.detail
        );
        if let Some(r) = &rec.residual {
            println!("    residual: {r}");
        }
    }
    let failed: Vec<&str> = report.failures().iter().map(|r| r.name.as_str()).collect();
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("acceptance: 8/8 criteria passed");
}
