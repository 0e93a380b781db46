//! Serializable run reports.
//!
//! Every JSON payload starts with `"schema": 1`.  Wall-clock timing is
//! kept out of the serialized form on purpose: identical invocations
//! with identical seeds must produce byte-identical reports, and timing
//! is the one field that never repeats.  The commands print elapsed
//! time on stderr instead.

use std::time::Duration;

use serde::Serialize;

use gyrodisc::limit::LimitRow;
use gyrodisc::menelaus::MenelausReport;
use gyrodisc::scene::{AssertionOutcome, Scene};

pub const SCHEMA: u32 = 1;

/// Generator policy echo so a report pins down its inputs completely.
#[derive(Debug, Clone, Serialize)]
pub struct PolicyEcho {
    pub max_radius: f64,
    pub vertex_guard: f64,
    pub max_retries: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct Aggregate {
    pub count: u64,
    pub max_deviation: f64,
    pub failures: u64,
}

/// One generated case.  `deviation` is `null` when evaluation itself
/// failed; such cases always count as failures.
#[derive(Debug, Clone, Serialize)]
pub struct CaseOutcome {
    pub index: u64,
    pub seed: u64,
    pub deviation: Option<f64>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// File name of the repro scene written for a failing case.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repro: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<MenelausReport>,
    #[serde(skip)]
    pub repro_scene: Option<Scene>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignReport {
    pub schema: u32,
    pub command: String,
    pub theorem: String,
    pub n: u64,
    pub seed: u64,
    pub policy: PolicyEcho,
    pub tolerance: f64,
    pub cases: Vec<CaseOutcome>,
    pub aggregate: Aggregate,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub command: String,
    pub scene: String,
    pub outcomes: Vec<AssertionOutcome>,
    pub all_passed: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Serialize)]
pub struct LimitReport {
    pub schema: u32,
    pub command: String,
    pub scene: String,
    pub threshold: f64,
    pub rows: Vec<LimitRow>,
    /// Least-squares slope of ln(euclidean deviation) against ln(s).
    pub slope: Option<f64>,
    /// Euclidean deviation strictly decreases down the sweep (vacuous
    /// for a single row).
    pub monotone: bool,
    pub passed: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization cannot fail");
    s.push('\n');
    s
}

pub fn campaign_text(r: &CampaignReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "random {}: {} cases, seed {}", r.theorem, r.n, r.seed);
    let _ = writeln!(
        out,
        "policy: max_radius {}, vertex_guard {:e}, max_retries {}",
        r.policy.max_radius, r.policy.vertex_guard, r.policy.max_retries
    );
    let _ = writeln!(out, "tolerance {:e}", r.tolerance);
    for c in r.cases.iter().filter(|c| !c.passed) {
        match (&c.error, c.deviation, &c.repro) {
            (Some(e), _, Some(f)) => {
                let _ = writeln!(out, "case {:4} seed {}: {} (repro {})", c.index, c.seed, e, f);
            }
            (None, Some(d), Some(f)) => {
                let _ = writeln!(
                    out,
                    "case {:4} seed {}: deviation {:.3e} (repro {})",
                    c.index, c.seed, d, f
                );
            }
            _ => {
                let _ = writeln!(out, "case {:4} seed {}: failed", c.index, c.seed);
            }
        }
    }
    let _ = writeln!(
        out,
        "max deviation {:.3e} over {} cases, {} failures",
        r.aggregate.max_deviation, r.aggregate.count, r.aggregate.failures
    );
    out
}

pub fn verify_text(r: &VerifyReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "scene {}", r.scene);
    for o in &r.outcomes {
        let verdict = if o.passed { "pass" } else { "FAIL" };
        let _ = writeln!(out, "  {verdict}  {}", o.detail);
    }
    let passed = r.outcomes.iter().filter(|o| o.passed).count();
    let _ = writeln!(out, "{passed}/{} assertions passed", r.outcomes.len());
    out
}

pub fn limit_text(r: &LimitReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "{:>12}  {:>16}  {:>20}", "s", "gyro deviation", "euclidean deviation");
    for row in &r.rows {
        let _ = writeln!(
            out,
            "{:>12}  {:>16.3e}  {:>20.3e}",
            row.s, row.gyro_deviation, row.euclidean_deviation
        );
    }
    match r.slope {
        Some(m) => {
            let _ = writeln!(out, "log-log slope {m:.3}");
        }
        None => {
            let _ = writeln!(out, "log-log slope n/a");
        }
    }
    let verdict = if r.passed { "pass" } else { "FAIL" };
    let _ = writeln!(
        out,
        "{verdict}: euclidean column {} and final {:.3e} vs threshold {:e}",
        if r.monotone { "decreases" } else { "does not decrease" },
        r.rows.last().map(|x| x.euclidean_deviation).unwrap_or(f64::NAN),
        r.threshold
    );
    out
}
