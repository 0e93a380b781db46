//! Seeded random configurations for the identity evaluators.
//!
//! Everything is rejection sampling from a counter-based stream: the
//! transversal is drawn first, then vertices are drawn against it, and
//! any constraint failure burns one unit of the retry budget and is
//! tallied by name.  A fixed (seed, policy) pair therefore reproduces a
//! configuration bit for bit.
//!
//! Configurations are generated in the unit ball; callers wanting other
//! scales can rescale the results.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gyroline::{self, Gyroline};
use crate::menelaus::{QuadConfig, TriangleConfig};
use crate::mobius::{BallParam, DiscPoint};

/// Knobs for the generators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenPolicy {
    pub seed: u64,
    /// Vertices stay within this fraction of the ball radius.
    pub max_radius: f64,
    /// Minimum gyrodistance between the transversal and every vertex.
    pub vertex_guard: f64,
    /// Total rejection budget before giving up.
    pub max_retries: u32,
}

impl GenPolicy {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            max_radius: 0.9,
            vertex_guard: 1e-6,
            max_retries: 1000,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.max_radius > 0.0 && self.max_radius < 1.0) {
            return Err(Error::Degenerate(format!(
                "max_radius must be in (0, 1), got {}",
                self.max_radius
            )));
        }
        if !(self.vertex_guard > 0.0) {
            return Err(Error::Degenerate(format!(
                "vertex_guard must be positive, got {}",
                self.vertex_guard
            )));
        }
        if self.max_retries == 0 {
            return Err(Error::Degenerate("max_retries must be positive".into()));
        }
        Ok(())
    }
}

/// Deterministic per-case seed for campaign case `index` under a master
/// seed (splitmix64 mixing, stable across platforms).
pub fn case_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Where the rejection budget went.
#[derive(Debug, Clone, Default)]
pub struct GenTrace {
    /// Individual points sampled.
    pub point_draws: u32,
    /// Points rejected by their immediate, per-point checks (vertex
    /// guard and pairwise separation).
    pub point_rejections: u32,
    /// Assembled configurations thrown away by relational checks.
    pub config_restarts: u32,
    pub rejections: BTreeMap<&'static str, u32>,
}

/// Minimum pairwise vertex separation; keeps side charts non-degenerate.
const MIN_SEP: f64 = 0.03;
/// Minimum offset of a vertex from the line of two others.
const MIN_SPREAD: f64 = 0.02;
/// Side cuts further out than this fraction of the ball are rejected;
/// the gamma correction amplifies roundoff too much beyond it.
const CUT_CAP_FLOOR: f64 = 0.95;

struct Sampler {
    rng: ChaCha8Rng,
    policy: GenPolicy,
    ball: BallParam,
    cut_cap: f64,
    trace: GenTrace,
}

enum PointKind {
    Guarded,
    Free,
}

impl Sampler {
    fn new(policy: &GenPolicy) -> Result<Self> {
        policy.validate()?;
        Ok(Self {
            rng: ChaCha8Rng::seed_from_u64(policy.seed),
            policy: *policy,
            ball: BallParam::unit(),
            cut_cap: policy.max_radius.max(CUT_CAP_FLOOR),
            trace: GenTrace::default(),
        })
    }

    fn reject(&mut self, why: &'static str, kind: PointKind) -> Result<()> {
        *self.trace.rejections.entry(why).or_insert(0) += 1;
        match kind {
            PointKind::Guarded => self.trace.point_rejections += 1,
            PointKind::Free => self.trace.config_restarts += 1,
        }
        let spent: u32 = self.trace.rejections.values().sum();
        if spent > self.policy.max_retries {
            let histogram = self
                .trace
                .rejections
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(", ");
            return Err(Error::GeneratorExhausted {
                draws: self.trace.point_draws,
                histogram,
            });
        }
        Ok(())
    }

    /// Uniform point of the disc of radius max_radius.
    fn point(&mut self) -> DiscPoint {
        let mr = self.policy.max_radius;
        loop {
            let re = self.rng.random_range(-mr..mr);
            let im = self.rng.random_range(-mr..mr);
            self.trace.point_draws += 1;
            if re * re + im * im <= mr * mr {
                return DiscPoint::new(re, im, self.ball).expect("inside the unit ball");
            }
        }
    }

    fn transversal(&mut self) -> Result<Gyroline> {
        'draw: loop {
            let p = self.point();
            let q = self.point();
            if (p.complex() - q.complex()).norm() < 0.1 * self.policy.max_radius {
                self.reject("line_points_close", PointKind::Free)?;
                continue;
            }
            // canonicalize to a sample-point fixpoint: scenes serialize
            // a line by its sample points, so requiring
            // through(sample_points(l)) == l bit for bit makes replayed
            // reports identical to the originals
            let mut l = Gyroline::through(p, q)?;
            for _ in 0..4 {
                let (s1, s2) = l.sample_points();
                let next = Gyroline::through(s1, s2)?;
                if next == l {
                    return Ok(l);
                }
                l = next;
            }
            self.reject("line_canonicalization", PointKind::Free)?;
            continue 'draw;
        }
    }

    /// A vertex kept clear of the transversal and of earlier vertices.
    fn vertex(&mut self, l: Gyroline, others: &[DiscPoint]) -> Result<DiscPoint> {
        'draw: loop {
            let p = self.point();
            if l.gyro_distance(p)? < self.policy.vertex_guard {
                self.reject("vertex_guard", PointKind::Guarded)?;
                continue;
            }
            for &o in others {
                if crate::mobius::hyp_distance(p, o)?.v() < MIN_SEP {
                    self.reject("vertex_separation", PointKind::Guarded)?;
                    continue 'draw;
                }
            }
            return Ok(p);
        }
    }

    fn spread_ok(&self, a: DiscPoint, b: DiscPoint, c: DiscPoint) -> Result<bool> {
        let ab = Gyroline::through(a, b)?;
        Ok(ab.euclid_offset(c.complex()) >= MIN_SPREAD)
    }

    /// The transversal's cut of side (u, v), required to exist and to
    /// stay away from the boundary.
    fn cut(&mut self, l: Gyroline, u: DiscPoint, v: DiscPoint) -> Result<Option<DiscPoint>> {
        let side = Gyroline::through(u, v)?;
        match l.intersect(side) {
            Ok(Some(p)) if p.norm() <= self.cut_cap => Ok(Some(p)),
            Ok(Some(_)) => {
                self.reject("cut_near_boundary", PointKind::Free)?;
                Ok(None)
            }
            Ok(None) | Err(Error::IdenticalGyrolines) => {
                self.reject("non_transversal", PointKind::Free)?;
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }
}

fn all_cuts(smp: &mut Sampler, l: Gyroline, sides: &[(DiscPoint, DiscPoint)]) -> Result<bool> {
    for &(u, v) in sides {
        if smp.cut(l, u, v)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A triangle and a transversal meeting all three extended sides.
pub fn gen_triangle_transversal(policy: &GenPolicy) -> Result<(TriangleConfig, Gyroline)> {
    Ok(gen_triangle_traced(policy)?.0)
}

pub fn gen_triangle_traced(policy: &GenPolicy) -> Result<((TriangleConfig, Gyroline), GenTrace)> {
    let mut smp = Sampler::new(policy)?;
    loop {
        let l = smp.transversal()?;
        let a = smp.vertex(l, &[])?;
        let b = smp.vertex(l, &[a])?;
        let c = smp.vertex(l, &[a, b])?;
        if !smp.spread_ok(a, b, c)? {
            smp.reject("collinear_vertices", PointKind::Free)?;
            continue;
        }
        if !all_cuts(&mut smp, l, &[(a, b), (b, c), (c, a)])? {
            continue;
        }
        let cfg = TriangleConfig::new(a, b, c)?;
        return Ok(((cfg, l), smp.trace));
    }
}

/// A simple quadrilateral and a transversal meeting all four extended
/// sides.
pub fn gen_quad_transversal(policy: &GenPolicy) -> Result<(QuadConfig, Gyroline)> {
    Ok(gen_quad_traced(policy)?.0)
}

pub fn gen_quad_traced(policy: &GenPolicy) -> Result<((QuadConfig, Gyroline), GenTrace)> {
    let mut smp = Sampler::new(policy)?;
    'outer: loop {
        let l = smp.transversal()?;
        let a = smp.vertex(l, &[])?;
        let b = smp.vertex(l, &[a])?;
        let c = smp.vertex(l, &[a, b])?;
        let d = smp.vertex(l, &[a, b, c])?;
        for (p, q, r) in [(a, b, c), (b, c, d), (c, d, a), (d, a, b)] {
            if !smp.spread_ok(p, q, r)? {
                smp.reject("collinear_vertices", PointKind::Free)?;
                continue 'outer;
            }
        }
        for (s1, s2) in [((a, b), (c, d)), ((b, c), (d, a))] {
            if segments_cross(s1, s2)? {
                smp.reject("self_intersecting", PointKind::Free)?;
                continue 'outer;
            }
        }
        if !all_cuts(&mut smp, l, &[(a, b), (b, c), (c, d), (d, a)])? {
            continue;
        }
        let cfg = QuadConfig::new(a, b, c, d)?;
        return Ok(((cfg, l), smp.trace));
    }
}

/// Whether two gyrosegments (not sharing endpoints) cross.
fn segments_cross(s1: (DiscPoint, DiscPoint), s2: (DiscPoint, DiscPoint)) -> Result<bool> {
    let l1 = Gyroline::through(s1.0, s1.1)?;
    let l2 = Gyroline::through(s2.0, s2.1)?;
    let p = match l1.intersect(l2) {
        Ok(Some(p)) => p,
        Ok(None) => return Ok(false),
        Err(Error::IdenticalGyrolines) => return Ok(true),
        Err(e) => return Err(e),
    };
    let t1 = gyroline::segment_param(s1.0, s1.1, p)?;
    let t2 = gyroline::segment_param(s2.0, s2.1, p)?;
    Ok((0.0..=1.0).contains(&t1) && (0.0..=1.0).contains(&t2))
}

/// A triangle, a point D strictly inside gyrosegment BC, and a
/// transversal meeting the extended AB, AC and AD.
pub fn gen_cevian_config(policy: &GenPolicy) -> Result<(TriangleConfig, DiscPoint, Gyroline)> {
    Ok(gen_cevian_traced(policy)?.0)
}

pub fn gen_cevian_traced(
    policy: &GenPolicy,
) -> Result<((TriangleConfig, DiscPoint, Gyroline), GenTrace)> {
    let mut smp = Sampler::new(policy)?;
    loop {
        let l = smp.transversal()?;
        let a = smp.vertex(l, &[])?;
        let b = smp.vertex(l, &[a])?;
        let c = smp.vertex(l, &[a, b])?;
        if !smp.spread_ok(a, b, c)? {
            smp.reject("collinear_vertices", PointKind::Free)?;
            continue;
        }
        let t = smp.rng.random_range(0.1..0.9);
        let d = gyroline::gyroline_point(b, c, t)?;
        if l.gyro_distance(d)? < smp.policy.vertex_guard {
            smp.reject("cevian_guard", PointKind::Free)?;
            continue;
        }
        if !all_cuts(&mut smp, l, &[(a, b), (a, c), (a, d)])? {
            continue;
        }
        let cfg = TriangleConfig::new(a, b, c)?;
        return Ok(((cfg, d, l), smp.trace));
    }
}
