//! Seeded verification campaigns.
//!
//! A campaign draws `n` configurations from per-case seeds derived from
//! one master seed, evaluates the requested identity on each, and
//! collects the outcomes in index order.  The loop is strictly
//! sequential and consumes no other entropy, so a (theorem, n, seed,
//! policy) tuple fixes the whole report.

use std::time::Instant;

use gyrodisc::gen::{self, GenPolicy};
use gyrodisc::gyroline::Gyroline;
use gyrodisc::menelaus::{self, MenelausReport, QuadConfig, TriangleConfig};
use gyrodisc::mobius::{self, DiscPoint};
use gyrodisc::scene::{self, Scene, TheoremId};
use gyrodisc::{tol, Result};

use crate::report::{Aggregate, CampaignReport, CaseOutcome, PolicyEcho, SCHEMA};

#[derive(Debug, Clone)]
pub struct CampaignOptions {
    pub theorem: TheoremId,
    pub n: u64,
    pub seed: u64,
    pub max_radius: Option<f64>,
    pub vertex_guard: Option<f64>,
    pub tolerance: f64,
    /// Echoed into the report; has no effect on the run.
    pub command: String,
}

impl CampaignOptions {
    pub fn new(theorem: TheoremId, n: u64, seed: u64) -> Self {
        Self {
            theorem,
            n,
            seed,
            max_radius: None,
            vertex_guard: None,
            tolerance: tol::VERIFY,
            command: String::new(),
        }
    }

    fn policy(&self, case_seed: u64) -> GenPolicy {
        let mut p = GenPolicy::new(case_seed);
        if let Some(r) = self.max_radius {
            p.max_radius = r;
        }
        if let Some(g) = self.vertex_guard {
            p.vertex_guard = g;
        }
        p
    }
}

/// A drawn configuration, kept around so failing cases can be written
/// back out as scenes.
enum CaseConfig {
    Triangle(TriangleConfig, Gyroline),
    Quad(QuadConfig, Gyroline, bool),
    Cevian(TriangleConfig, DiscPoint, Gyroline),
}

impl CaseConfig {
    fn draw(theorem: TheoremId, policy: &GenPolicy) -> Result<Self> {
        Ok(match theorem {
            TheoremId::MenelausTriangle => {
                let (cfg, l) = gen::gen_triangle_transversal(policy)?;
                CaseConfig::Triangle(cfg, l)
            }
            TheoremId::MenelausQuad => {
                let (cfg, l) = gen::gen_quad_transversal(policy)?;
                CaseConfig::Quad(cfg, l, false)
            }
            TheoremId::MenelausConverse => {
                let (cfg, l) = gen::gen_quad_transversal(policy)?;
                CaseConfig::Quad(cfg, l, true)
            }
            TheoremId::Transversal => {
                let (cfg, d, l) = gen::gen_cevian_config(policy)?;
                CaseConfig::Cevian(cfg, d, l)
            }
        })
    }

    fn evaluate(&self) -> Result<(f64, MenelausReport)> {
        match self {
            CaseConfig::Triangle(cfg, l) => {
                menelaus::triangle_menelaus(cfg, *l).map(|r| (r.deviation, r))
            }
            CaseConfig::Quad(cfg, l, false) => {
                menelaus::quad_menelaus(cfg, *l).map(|r| (r.deviation, r))
            }
            CaseConfig::Quad(cfg, l, true) => converse_round_trip(cfg, *l),
            CaseConfig::Cevian(cfg, d, l) => {
                menelaus::transversal_product(cfg, *d, *l).map(|r| (r.deviation, r))
            }
        }
    }

    fn repro(&self, bound: f64) -> Result<Scene> {
        Ok(match self {
            CaseConfig::Triangle(cfg, l) => scene::triangle_scene(cfg, *l, bound),
            CaseConfig::Quad(cfg, l, converse) => scene::quad_scene(cfg, *l, *converse, bound),
            CaseConfig::Cevian(cfg, d, l) => scene::cevian_scene(cfg, *d, *l, bound)?,
        })
    }
}

/// Forward quadrilateral product, then recover the BC cut from the
/// other three and fold the recovery gaps into one deviation (gaps are
/// gyrodistances, scaled by s to stay comparable with |product - 1|).
pub fn converse_round_trip(cfg: &QuadConfig, l: Gyroline) -> Result<(f64, MenelausReport)> {
    let forward = menelaus::quad_menelaus(cfg, l)?;
    let cut = |i: usize| forward.intersections[i].point;
    let (x, y0, z, w) = (cut(0), cut(1), cut(2), cut(3));
    let out = menelaus::converse_check(cfg, x, z, w)?;
    let s = cfg.a().ball().s();
    let drift = mobius::hyp_distance(out.y, y0)?.v();
    let deviation = out
        .report
        .deviation
        .max(drift / s)
        .max(out.recovery_gap / s);
    Ok((deviation, out.report))
}

pub fn run_campaign(opt: &CampaignOptions) -> Result<CampaignReport> {
    let start = Instant::now();
    let echo_policy = opt.policy(0);
    let mut cases = Vec::with_capacity(opt.n as usize);
    let mut max_deviation = 0.0f64;
    let mut failures = 0u64;
    for index in 0..opt.n {
        let seed = gen::case_seed(opt.seed, index);
        let cfg = CaseConfig::draw(opt.theorem, &opt.policy(seed))?;
        let mut case = match cfg.evaluate() {
            Ok((deviation, report)) => CaseOutcome {
                index,
                seed,
                deviation: Some(deviation),
                passed: deviation <= opt.tolerance,
                error: None,
                repro: None,
                report: Some(report),
                repro_scene: None,
            },
            Err(e) => CaseOutcome {
                index,
                seed,
                deviation: None,
                passed: false,
                error: Some(e.to_string()),
                repro: None,
                report: None,
                repro_scene: None,
            },
        };
        if let Some(d) = case.deviation {
            max_deviation = max_deviation.max(d);
        }
        if !case.passed {
            failures += 1;
            case.repro = Some(format!(
                "repro-{}-{:04}.gyro",
                opt.theorem.canonical(),
                index
            ));
            case.repro_scene = Some(cfg.repro(opt.tolerance)?);
        }
        cases.push(case);
    }
    Ok(CampaignReport {
        schema: SCHEMA,
        command: opt.command.clone(),
        theorem: opt.theorem.canonical().to_string(),
        n: opt.n,
        seed: opt.seed,
        policy: PolicyEcho {
            max_radius: echo_policy.max_radius,
            vertex_guard: echo_policy.vertex_guard,
            max_retries: echo_policy.max_retries,
        },
        tolerance: opt.tolerance,
        cases,
        aggregate: Aggregate {
            count: opt.n,
            max_deviation,
            failures,
        },
        elapsed: start.elapsed(),
    })
}
