use std::time::Duration;

use qcluster::relations_suite::golden::GOLDEN_ENV;
use qcluster::relations_suite::{
    CheckContext, CheckRegistry, Example, FnCheck, Outcome, ReportFormat, Status,
};

fn run(suite: &str) -> qcluster::relations_suite::VerificationReport {
    CheckRegistry::default().run_suite(suite, &CheckContext::default(), 4).expect("suite exists")
}

fn assert_green(suite: &str, expected_checks: usize) {
    let report = run(suite);
    assert_eq!(report.checks.len(), expected_checks, "{suite}");
    let text = report.render(ReportFormat::Text, false);
    assert!(report.passed(), "{text}");
}

#[test]
fn golden_a1() {
    assert_green("golden-A1", 6);
}

#[test]
fn golden_a3() {
    assert_green("golden-A3", 11);
}

#[test]
fn golden_b3() {
    assert_green("golden-B3", 10);
}

#[test]
fn relation_battery_per_mode() {
    assert_green("relations", 12);
}

#[test]
fn oracle_suite() {
    assert_green("oracle", 5);
}

#[test]
fn unknown_suite_is_an_error() {
    assert!(CheckRegistry::default().run_suite("golden-G2", &CheckContext::default(), 1).is_err());
}

#[test]
fn reports_are_deterministic_across_job_counts() {
    let reg = CheckRegistry::default();
    let ctx = CheckContext::default();
    let one = reg.run_suite("golden-A3", &ctx, 1).unwrap();
    let many = reg.run_suite("golden-A3", &ctx, 8).unwrap();
    for format in [ReportFormat::Json, ReportFormat::Junit, ReportFormat::Text] {
        assert_eq!(one.render(format, false), many.render(format, false));
    }
}

#[test]
fn json_report_shape() {
    let report = run("golden-A1");
    let v: serde_json::Value = serde_json::from_str(&report.render(ReportFormat::Json, false)).unwrap();
    assert_eq!(v["suite"], "golden-A1");
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 6);
    assert!(v["checks"][0].get("seconds").is_none());
    let timed: serde_json::Value = serde_json::from_str(&report.render(ReportFormat::Json, true)).unwrap();
    assert!(timed["checks"][0]["seconds"].is_number());
}

fn failing(_: &CheckContext) -> qcluster::Result<Outcome> {
    Ok(Outcome::fail("deliberate").with_residual("X_1 - X_2"))
}

fn erroring(_: &CheckContext) -> qcluster::Result<Outcome> {
    Err(qcluster::Error::Golden("missing".into()))
}

fn slow(_: &CheckContext) -> qcluster::Result<Outcome> {
    std::thread::sleep(Duration::from_millis(20));
    Ok(Outcome::pass("done"))
}

#[test]
fn registered_checks_report_failures_errors_and_overruns() {
    let mut reg = CheckRegistry::default();
    for (name, body, limit) in [
        ("custom/fail", failing as fn(&CheckContext) -> qcluster::Result<Outcome>, None),
        ("custom/error", erroring, None),
        ("custom/slow", slow, Some(Duration::from_millis(1))),
    ] {
        reg.register(Box::new(FnCheck { name: name.into(), suite: "custom".into(), criterion: None, limit, body }));
    }
    assert!(reg.suites().contains(&"custom".to_string()));
    assert_eq!(reg.get("custom/fail").map(|c| c.suite().to_string()), Some("custom".into()));
    let report = reg.run_suite("custom", &CheckContext::default(), 2).unwrap();
    let status: Vec<Status> = report.checks.iter().map(|c| c.status).collect();
    assert_eq!(status, vec![Status::Fail, Status::Error, Status::Fail]);
    assert_eq!(report.checks[0].residual.as_deref(), Some("X_1 - X_2"));
    let junit = report.render(ReportFormat::Junit, false);
    assert!(junit.contains("failures=\"2\" errors=\"1\""), "{junit}");
    assert!(junit.contains("residual X_1 - X_2"));
}

#[test]
fn golden_directory_override() {
    let dir = std::env::temp_dir().join(format!("qcluster-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bundled = include_str!("../golden/a1.json");
    // a damaged copy: the printed sequence no longer matches
    std::fs::write(dir.join("a1.json"), bundled.replace("\"sequence\": \"1b\"", "\"sequence\": \"2b\"")).unwrap();
    let ctx = CheckContext { golden_dir: Some(dir.clone()), ..CheckContext::default() };
    let report = CheckRegistry::default().run_golden(Example::A1, &ctx).unwrap();
    let phi1 = report.get("A1/phi1").unwrap();
    assert_eq!(phi1.status, Status::Fail, "{}", phi1.detail);
    assert!(report.get("A1/quivers").unwrap().passed());
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(GOLDEN_ENV, "QCLUSTER_GOLDEN_DIR");
}
