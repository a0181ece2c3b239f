//! Verification battery: quantum-group relations on assembled generators,
//! golden comparisons for the worked examples, and the acceptance criteria,
//! all behind one check registry.

mod battery;
pub mod checks;
pub mod golden;
mod random;

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};

pub use battery::{relation_words, run_borel_relations};
pub use checks::{Check, CheckContext, CheckRegistry, FnCheck};
pub use golden::{Example, GoldenExample};
pub use random::{random_oracle_pair, random_seed};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// Result of evaluating a check body.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
    /// Nonzero residual (rendered) of the first failing identity.
    pub residual: Option<String>,
}

impl Outcome {
    pub fn pass(detail: impl Into<String>) -> Self {
        Outcome { passed: true, detail: detail.into(), residual: None }
    }

    pub fn fail(detail: impl Into<String>) -> Self {
        Outcome { passed: false, detail: detail.into(), residual: None }
    }

    pub fn with_residual(mut self, r: impl Into<String>) -> Self {
        self.residual = Some(r.into());
        self
    }

    pub fn check(passed: bool, detail: impl Into<String>) -> Self {
        Outcome { passed, detail: detail.into(), residual: None }
    }

    /// Conjunction; details joined with `; `.
    pub fn all(parts: Vec<Outcome>) -> Self {
        let passed = parts.iter().all(|p| p.passed);
        let residual = parts.iter().find_map(|p| p.residual.clone());
        let detail = parts
            .iter()
            .filter(|p| passed || !p.passed)
            .map(|p| p.detail.as_str())
            .filter(|d| !d.is_empty())
            .collect::<Vec<_>>()
            .join("; ");
        Outcome { passed, detail, residual }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criterion: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "secs")]
    pub limit: Option<Duration>,
}

fn secs<S: serde::Serializer>(d: &Option<Duration>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match d {
        Some(d) => s.serialize_f64(d.as_secs_f64()),
        None => s.serialize_none(),
    }
}

impl CheckRecord {
    /// Time a check body; errors become `Status::Error`, and exceeding `limit`
    /// turns a pass into a failure.
    pub fn run(name: &str, criterion: Option<u8>, limit: Option<Duration>, body: impl FnOnce() -> Result<Outcome>) -> Self {
        let start = Instant::now();
        let result = body();
        let elapsed = start.elapsed();
        let (status, mut detail, residual) = match result {
            Ok(o) if o.passed => (Status::Pass, o.detail, o.residual),
            Ok(o) => (Status::Fail, o.detail, o.residual),
            Err(e) => (Status::Error, e.to_string(), None),
        };
        let status = match limit {
            Some(l) if status == Status::Pass && elapsed > l => {
                detail = format!("{detail}; exceeded time limit {:.0?}", l);
                Status::Fail
            }
            _ => status,
        };
        CheckRecord { name: name.to_string(), status, detail, residual, elapsed, criterion, limit }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<CheckRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Junit,
    Text,
}

impl FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "junit" => Ok(ReportFormat::Junit),
            "text" => Ok(ReportFormat::Text),
            other => Err(Error::UnknownStrategy { kind: "report format", name: other.to_string() }),
        }
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport { suite: suite.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.checks.push(record);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }

    pub fn failures(&self) -> Vec<&CheckRecord> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn elapsed(&self) -> Duration {
        self.checks.iter().map(|c| c.elapsed).sum()
    }

    /// Render the report. Timings are included only when `timings` is set,
    /// so that repeated runs produce identical bytes.
    pub fn render(&self, format: ReportFormat, timings: bool) -> String {
        match format {
            ReportFormat::Json => {
                let mut v = serde_json::to_value(self).expect("report serializes");
                v["passed"] = serde_json::Value::Bool(self.passed());
                if timings {
                    for (c, rec) in v["checks"].as_array_mut().expect("array").iter_mut().zip(&self.checks) {
                        c["seconds"] = serde_json::json!(rec.elapsed.as_secs_f64());
                    }
                }
                let mut s = serde_json::to_string_pretty(&v).expect("json");
                s.push('\n');
                s
            }
            ReportFormat::Junit => {
                let failures = self.checks.iter().filter(|c| c.status == Status::Fail).count();
                let errors = self.checks.iter().filter(|c| c.status == Status::Error).count();
                let mut s = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
                let _ = writeln!(
                    s,
                    "<testsuite name=\"{}\" tests=\"{}\" failures=\"{failures}\" errors=\"{errors}\">",
                    xml_escape(&self.suite),
                    self.checks.len()
                );
                for c in &self.checks {
                    let time = if timings { format!(" time=\"{:.3}\"", c.elapsed.as_secs_f64()) } else { String::new() };
                    let _ = write!(s, "  <testcase classname=\"{}\" name=\"{}\"{time}", xml_escape(&self.suite), xml_escape(&c.name));
                    match c.status {
                        Status::Pass => s.push_str("/>\n"),
                        Status::Fail | Status::Error => {
                            let tag = if c.status == Status::Fail { "failure" } else { "error" };
                            let mut msg = c.detail.clone();
                            if let Some(r) = &c.residual {
                                let _ = write!(msg, "; residual {r}");
                            }
                            let _ = writeln!(s, ">\n    <{tag} message=\"{}\"/>\n  </testcase>", xml_escape(&msg));
                        }
                    }
                }
                s.push_str("</testsuite>\n");
                s
            }
            ReportFormat::Text => {
                let mut s = String::new();
                for c in &self.checks {
                    let tag = match c.status {
                        Status::Pass => "PASS",
                        Status::Fail => "FAIL",
                        Status::Error => "ERROR",
                    };
                    let _ = write!(s, "{tag:5} {}", c.name);
                    if timings {
                        let _ = write!(s, " ({:.3}s)", c.elapsed.as_secs_f64());
                    }
                    if !c.detail.is_empty() {
                        let _ = write!(s, ": {}", c.detail);
                    }
                    if let Some(r) = &c.residual {
                        let _ = write!(s, " [residual {r}]");
                    }
                    s.push('\n');
                }
                let passed = self.checks.iter().filter(|c| c.passed()).count();
                let _ = writeln!(s, "{}: {passed}/{} passed", self.suite, self.checks.len());
                s
            }
        }
    }
}
