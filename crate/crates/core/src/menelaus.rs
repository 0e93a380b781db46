//! Ratio products along a transversal gyroline.
//!
//! Each side cut is reduced to a signed coordinate on the side's own
//! gyroline: with u = (-U) (+) V rescaled to the unit disc, a point P of
//! the line gets the coordinate x = Re(((-U) (+) P) conj(u)/|u|), and the
//! two gamma-corrected distances of the cut are |x|/(1 - x^2) and
//! |b (-) x|/(1 - (b (-) x)^2) with b = |u| the side length.  Working in
//! this one-dimensional chart keeps every ratio well conditioned and
//! gives the converse solver a strictly monotone scalar equation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gyroline::{self, Gyroline};
use crate::mobius::{self, BallParam, DiscPoint};
use crate::tol;

/// Which identity a report evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Theorem {
    T2,
    T3,
    T4,
    T5,
}

impl Theorem {
    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::T2 => "T2",
            Theorem::T3 => "T3",
            Theorem::T4 => "T4",
            Theorem::T5 => "T5",
        }
    }
}

/// A gyrotriangle with distinct, non-collinear vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleConfig {
    a: DiscPoint,
    b: DiscPoint,
    c: DiscPoint,
}

impl TriangleConfig {
    pub fn new(a: DiscPoint, b: DiscPoint, c: DiscPoint) -> Result<Self> {
        a.ball().matched(b.ball())?.matched(c.ball())?;
        for (p, q) in [(a, b), (b, c), (c, a)] {
            if p.approx_eq(q) {
                return Err(Error::Degenerate("triangle vertices coincide".into()));
            }
        }
        if gyroline::collinear(&[a, b, c], tol::COLLINEAR)? {
            return Err(Error::Degenerate("triangle vertices are collinear".into()));
        }
        Ok(Self { a, b, c })
    }

    pub fn a(self) -> DiscPoint {
        self.a
    }

    pub fn b(self) -> DiscPoint {
        self.b
    }

    pub fn c(self) -> DiscPoint {
        self.c
    }

    pub fn vertices(self) -> [DiscPoint; 3] {
        [self.a, self.b, self.c]
    }
}

/// A gyroquadrilateral with sides taken in order AB, BC, CD, DA.
///
/// Vertices must be pairwise distinct with no three consecutive ones
/// collinear; simplicity is not required here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    a: DiscPoint,
    b: DiscPoint,
    c: DiscPoint,
    d: DiscPoint,
}

impl QuadConfig {
    pub fn new(a: DiscPoint, b: DiscPoint, c: DiscPoint, d: DiscPoint) -> Result<Self> {
        a.ball()
            .matched(b.ball())?
            .matched(c.ball())?
            .matched(d.ball())?;
        let vs = [a, b, c, d];
        for i in 0..4 {
            for j in (i + 1)..4 {
                if vs[i].approx_eq(vs[j]) {
                    return Err(Error::Degenerate("quadrilateral vertices coincide".into()));
                }
            }
        }
        for i in 0..4 {
            let triple = [vs[i], vs[(i + 1) % 4], vs[(i + 2) % 4]];
            if gyroline::collinear(&triple, tol::COLLINEAR)? {
                return Err(Error::Degenerate(
                    "three consecutive quadrilateral vertices are collinear".into(),
                ));
            }
        }
        Ok(Self { a, b, c, d })
    }

    pub fn a(self) -> DiscPoint {
        self.a
    }

    pub fn b(self) -> DiscPoint {
        self.b
    }

    pub fn c(self) -> DiscPoint {
        self.c
    }

    pub fn d(self) -> DiscPoint {
        self.d
    }

    pub fn vertices(self) -> [DiscPoint; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

/// One factor of a product: gamma-corrected numerator and denominator
/// distances and their (unsigned) quotient.
#[derive(Debug, Clone, Serialize)]
pub struct RatioTerm {
    pub label: String,
    pub numerator: f64,
    pub denominator: f64,
    pub ratio: f64,
}

/// Where the transversal cuts one side gyroline.
#[derive(Debug, Clone, Serialize)]
pub struct SideIntersection {
    pub side: String,
    pub point: DiscPoint,
    /// Whether the cut falls between the side's endpoints (parameter in
    /// (0, 1)); the identities hold either way since sides are extended.
    pub interior: bool,
}

/// The proof decomposition of the quadrilateral identity: the cut T of
/// the transversal with diagonal DB and the two triangle sub-products
/// that telescope into the main product.
#[derive(Debug, Clone, Serialize)]
pub struct QuadAux {
    pub t: DiscPoint,
    pub eq2_product: f64,
    pub eq3_product: f64,
}

/// Per-ratio breakdown of one identity evaluation.
#[derive(Debug, Clone, Serialize)]
pub struct MenelausReport {
    pub theorem: Theorem,
    pub s: f64,
    pub ratios: Vec<RatioTerm>,
    pub product: f64,
    pub deviation: f64,
    pub intersections: Vec<SideIntersection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aux: Option<QuadAux>,
}

/// 1-d Mobius difference (b - x)/(1 - bx) of unit-disc coordinates.
fn mob1d_sub(b: f64, x: f64) -> f64 {
    (b - x) / (1.0 - b * x)
}

/// Unit-disc gamma correction with sign, t / (1 - t^2).
fn gamma1d(t: f64) -> f64 {
    t / (1.0 - t * t)
}

/// A transversal's cut through one side, in side coordinates.
#[derive(Debug, Clone, Copy)]
struct SideCut {
    /// Signed coordinate of the cut, measured from the first endpoint.
    x: f64,
    /// Coordinate of the second endpoint (the side gyrolength / s).
    b: f64,
    point: DiscPoint,
    t_param: f64,
}

impl SideCut {
    fn signed_ratio(self) -> f64 {
        gamma1d(self.x) / gamma1d(mob1d_sub(self.b, self.x))
    }

    fn term(self, label: &str, s: f64) -> RatioTerm {
        let num = s * gamma1d(self.x).abs();
        let den = s * gamma1d(mob1d_sub(self.b, self.x)).abs();
        RatioTerm {
            label: label.to_string(),
            numerator: num,
            denominator: den,
            ratio: num / den,
        }
    }

    fn intersection(self, side: &str) -> SideIntersection {
        SideIntersection {
            side: side.to_string(),
            point: self.point,
            interior: self.t_param > 0.0 && self.t_param < 1.0,
        }
    }
}

fn cut_side(u: DiscPoint, v: DiscPoint, l: Gyroline, side: &str) -> Result<SideCut> {
    let side_line = Gyroline::through(u, v)?;
    let point = match l.intersect(side_line) {
        Ok(Some(p)) => p,
        Ok(None) => {
            return Err(Error::NonTransversal {
                side: side.to_string(),
            })
        }
        Err(Error::IdenticalGyrolines) => {
            return Err(Error::Degenerate(format!(
                "transversal coincides with side {side}"
            )))
        }
        Err(e) => return Err(e),
    };
    let s = u.ball().s();
    let w = mobius::mobius_left_sub(u, v)?.complex() / s;
    let b = w.norm();
    let q = mobius::mobius_left_sub(u, point)?.complex() / s;
    let x = (q.re * w.re + q.im * w.im) / b;
    Ok(SideCut {
        x,
        b,
        point,
        t_param: x.atanh() / b.atanh(),
    })
}

fn check_guard(l: Gyroline, labeled: &[(&str, DiscPoint)]) -> Result<()> {
    let guard = tol::EVAL_VERTEX_GUARD * l.ball().s();
    for &(label, p) in labeled {
        if l.gyro_distance(p)? < guard {
            return Err(Error::VertexTooClose {
                label: label.to_string(),
                guard,
            });
        }
    }
    Ok(())
}

/// Gyrotriangle product (AF/BF)(BD/CD)(CE/AE) for a transversal meeting
/// AB in F, BC in D and CA in E; equals 1 for every valid configuration.
pub fn triangle_menelaus(cfg: &TriangleConfig, l: Gyroline) -> Result<MenelausReport> {
    let ball = cfg.a.ball().matched(l.ball())?;
    check_guard(l, &[("A", cfg.a), ("B", cfg.b), ("C", cfg.c)])?;
    let f = cut_side(cfg.a, cfg.b, l, "AB")?;
    let d = cut_side(cfg.b, cfg.c, l, "BC")?;
    let e = cut_side(cfg.c, cfg.a, l, "CA")?;
    Ok(assemble(
        Theorem::T2,
        ball,
        vec![
            f.term("AF/BF", ball.s()),
            d.term("BD/CD", ball.s()),
            e.term("CE/AE", ball.s()),
        ],
        vec![f.intersection("AB"), d.intersection("BC"), e.intersection("CA")],
        None,
    ))
}

fn assemble(
    theorem: Theorem,
    ball: BallParam,
    ratios: Vec<RatioTerm>,
    intersections: Vec<SideIntersection>,
    aux: Option<QuadAux>,
) -> MenelausReport {
    let product = ratios.iter().fold(1.0, |p, r| p * r.ratio);
    MenelausReport {
        theorem,
        s: ball.s(),
        ratios,
        product,
        deviation: (product - 1.0).abs(),
        intersections,
        aux,
    }
}

struct QuadCuts {
    x: SideCut,
    y: SideCut,
    z: SideCut,
    w: SideCut,
}

fn cut_quad(cfg: &QuadConfig, l: Gyroline) -> Result<QuadCuts> {
    check_guard(
        l,
        &[("A", cfg.a), ("B", cfg.b), ("C", cfg.c), ("D", cfg.d)],
    )?;
    Ok(QuadCuts {
        x: cut_side(cfg.a, cfg.b, l, "AB")?,
        y: cut_side(cfg.b, cfg.c, l, "BC")?,
        z: cut_side(cfg.c, cfg.d, l, "CD")?,
        w: cut_side(cfg.d, cfg.a, l, "DA")?,
    })
}

fn quad_report(cfg: &QuadConfig, l: Gyroline, theorem: Theorem, cuts: &QuadCuts) -> MenelausReport {
    let ball = l.ball();
    let s = ball.s();
    // the proof's auxiliary point: the cut of the transversal with
    // diagonal DB, which splits the product into two triangle products
    let aux = diagonal_aux(cfg, l, cuts);
    assemble(
        theorem,
        ball,
        vec![
            cuts.x.term("AX/BX", s),
            cuts.y.term("BY/CY", s),
            cuts.z.term("CZ/DZ", s),
            cuts.w.term("DW/AW", s),
        ],
        vec![
            cuts.x.intersection("AB"),
            cuts.y.intersection("BC"),
            cuts.z.intersection("CD"),
            cuts.w.intersection("DA"),
        ],
        aux,
    )
}

fn diagonal_aux(cfg: &QuadConfig, l: Gyroline, cuts: &QuadCuts) -> Option<QuadAux> {
    let bd = cut_side(cfg.b, cfg.d, l, "BD").ok()?;
    let db = cut_side(cfg.d, cfg.b, l, "DB").ok()?;
    let eq2 = cuts.x.signed_ratio().abs() * bd.signed_ratio().abs() * cuts.w.signed_ratio().abs();
    let eq3 = db.signed_ratio().abs() * cuts.z.signed_ratio().abs() * cuts.y.signed_ratio().abs();
    Some(QuadAux {
        t: bd.point,
        eq2_product: eq2,
        eq3_product: eq3,
    })
}

/// Gyroquadrilateral product (AX/BX)(BY/CY)(CZ/DZ)(DW/AW) for a
/// transversal meeting AB in X, BC in Y, CD in Z and DA in W.
pub fn quad_menelaus(cfg: &QuadConfig, l: Gyroline) -> Result<MenelausReport> {
    cfg.a.ball().matched(l.ball())?;
    let cuts = cut_quad(cfg, l)?;
    Ok(quad_report(cfg, l, Theorem::T3, &cuts))
}

/// Result of the converse check: the cut of line XZW with side BC, both
/// as a geometric intersection and as the solution of the ratio equation.
#[derive(Debug, Clone)]
pub struct ConverseOutcome {
    /// Intersection of the gyroline through X, Z, W with gyroline BC.
    pub y: DiscPoint,
    /// The same point recovered by inverting f on the ratio forced by
    /// the product identity.
    pub y_from_ratio: DiscPoint,
    /// Gyrodistance between the two derivations.
    pub recovery_gap: f64,
    pub report: MenelausReport,
}

/// Given X on AB, Z on CD and W on DA, all collinear, find the fourth
/// point on BC two independent ways and evaluate the full product.
pub fn converse_check(
    cfg: &QuadConfig,
    x: DiscPoint,
    z: DiscPoint,
    w: DiscPoint,
) -> Result<ConverseOutcome> {
    let ball = cfg
        .a
        .ball()
        .matched(x.ball())?
        .matched(z.ball())?
        .matched(w.ball())?;
    let s = ball.s();
    let inc = tol::INCIDENCE * s;
    for (label, p, u, v) in [
        ("X", x, cfg.a, cfg.b),
        ("Z", z, cfg.c, cfg.d),
        ("W", w, cfg.d, cfg.a),
    ] {
        let side = Gyroline::through(u, v)?;
        let offset = side.euclid_offset(p.complex());
        if offset > inc {
            return Err(Error::OffLine {
                label: label.to_string(),
                offset,
            });
        }
    }
    let l = Gyroline::through(x, z)?;
    let w_offset = l.euclid_offset(w.complex());
    if w_offset > inc {
        return Err(Error::NotCollinear {
            max_offset: w_offset,
        });
    }
    let cuts = cut_quad(cfg, l)?;
    let report = quad_report(cfg, l, Theorem::T4, &cuts);
    // the product forces the BC ratio; invert f on the side's chart
    let rho = 1.0
        / (cuts.x.signed_ratio() * cuts.z.signed_ratio() * cuts.w.signed_ratio());
    let y_coord = f_inverse(rho, cuts.y.b)?;
    let dir = mobius::mobius_left_sub(cfg.b, cfg.c)?.complex();
    let step = DiscPoint::from_complex(dir * (s * y_coord / dir.norm()), ball)?;
    let y_from_ratio = mobius::mobius_add(cfg.b, step)?;
    let y = cuts.y.point;
    let recovery_gap = mobius::hyp_distance(y, y_from_ratio)?.v();
    Ok(ConverseOutcome {
        y,
        y_from_ratio,
        recovery_gap,
        report,
    })
}

/// Deviation of the quadrilateral product when the BC cut is displaced
/// along its side by gyrodistance eps, the numerical shadow of the
/// injectivity of f.
pub fn quad_deviation_displaced(cfg: &QuadConfig, l: Gyroline, eps: f64) -> Result<f64> {
    let s = cfg.a.ball().matched(l.ball())?.s();
    if !(eps.is_finite() && eps.abs() < s) {
        return Err(Error::NonFinite("displacement"));
    }
    let cuts = cut_quad(cfg, l)?;
    let e = eps / s;
    let x_moved = (cuts.y.x + e) / (1.0 + cuts.y.x * e);
    let moved_ratio = (gamma1d(x_moved) / gamma1d(mob1d_sub(cuts.y.b, x_moved))).abs();
    let product = cuts.x.signed_ratio().abs()
        * moved_ratio
        * cuts.z.signed_ratio().abs()
        * cuts.w.signed_ratio().abs();
    Ok((product - 1.0).abs())
}

/// Closed form f(x) = x (1 - b^2) / ((b - x)(1 - bx)) on (-1, 1).
pub fn f_eval(x: f64, b: f64) -> Result<f64> {
    f_domain(x, b)?;
    Ok(x * (1.0 - b * b) / ((b - x) * (1.0 - b * x)))
}

/// The defining gamma-ratio form of f; agrees with [`f_eval`] to 1e-12.
pub fn f_eval_gamma(x: f64, b: f64) -> Result<f64> {
    f_domain(x, b)?;
    Ok(gamma1d(x) / gamma1d(mob1d_sub(b, x)))
}

/// Right side of the difference identity
/// f(x) - f(y) = b (1-b^2) (1-xy) (x-y) / ((b-x)(1-bx)(b-y)(1-by)).
pub fn f_diff_rhs(x: f64, y: f64, b: f64) -> Result<f64> {
    f_domain(x, b)?;
    f_domain(y, b)?;
    Ok(b * (1.0 - b * b) * (1.0 - x * y) * (x - y)
        / ((b - x) * (1.0 - b * x) * (b - y) * (1.0 - b * y)))
}

fn f_domain(x: f64, b: f64) -> Result<()> {
    if !(x.is_finite() && b.is_finite()) {
        return Err(Error::NonFinite("f argument"));
    }
    if !(0.0 < b && b < 1.0) || !(-1.0 < x && x < 1.0) {
        return Err(Error::Degenerate(format!(
            "f needs b in (0,1) and x in (-1,1), got b = {b}, x = {x}"
        )));
    }
    if x == b {
        return Err(Error::Degenerate(format!("f has a pole at x = b = {b}")));
    }
    Ok(())
}

/// Invert f on the branch containing the requested value.
///
/// f increases from -(1-b)/(1+b) to +inf on (-1, b) and from -inf to
/// -(1+b)/(1-b) on (b, 1); values in the gap between the two branch
/// closures are never attained.
pub fn f_inverse(rho: f64, b: f64) -> Result<f64> {
    if !(rho.is_finite() && b.is_finite()) {
        return Err(Error::NonFinite("f target"));
    }
    if !(0.0 < b && b < 1.0) {
        return Err(Error::Degenerate(format!("f needs b in (0,1), got {b}")));
    }
    let lo_branch = -(1.0 - b) / (1.0 + b);
    let hi_branch = -(1.0 + b) / (1.0 - b);
    let (mut lo, mut hi) = if rho >= 0.0 {
        (0.0, b)
    } else if rho > lo_branch {
        (-1.0, 0.0)
    } else if rho < hi_branch {
        (b, 1.0)
    } else {
        return Err(Error::RatioUnsolvable { rho });
    };
    // bisection never evaluates at the interval ends, so the poles at b
    // and the boundary are safe
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = mid * (1.0 - b * b) / ((b - mid) * (1.0 - b * mid));
        if fm < rho {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Transversal product of Eq-style (BD/CD)(CA/NA)(NP/MP)(MA/BA) for a
/// cevian AD (D on gyroline BC) and a transversal meeting AB in M, AC in
/// N and AD in P.
pub fn transversal_product(
    cfg: &TriangleConfig,
    d: DiscPoint,
    l: Gyroline,
) -> Result<MenelausReport> {
    let ball = cfg.a.ball().matched(d.ball())?.matched(l.ball())?;
    let s = ball.s();
    let bc = Gyroline::through(cfg.b, cfg.c)?;
    let offset = bc.euclid_offset(d.complex());
    if offset > tol::INCIDENCE * s {
        return Err(Error::OffLine {
            label: "D".to_string(),
            offset,
        });
    }
    check_guard(
        l,
        &[("A", cfg.a), ("B", cfg.b), ("C", cfg.c), ("D", d)],
    )?;
    let m = cut_side(cfg.a, cfg.b, l, "AB")?;
    let n = cut_side(cfg.a, cfg.c, l, "AC")?;
    let p = cut_side(cfg.a, d, l, "AD")?;
    // evaluate the four ratios the way the proof does: as the
    // quadrilateral product of BCNM against the gyroline DA, whose cuts
    // are D, A, P, A; this keeps the result in lockstep with
    // quad_menelaus on the same figure
    let da = Gyroline::through(d, cfg.a)?;
    check_guard(
        da,
        &[("B", cfg.b), ("C", cfg.c), ("N", n.point), ("M", m.point)],
    )?;
    let terms = vec![
        cut_side(cfg.b, cfg.c, da, "BC")?.term("BD/CD", s),
        cut_side(cfg.c, n.point, da, "CN")?.term("CA/NA", s),
        cut_side(n.point, m.point, da, "NM")?.term("NP/MP", s),
        cut_side(m.point, cfg.b, da, "MB")?.term("MA/BA", s),
    ];
    Ok(assemble(
        Theorem::T5,
        ball,
        terms,
        vec![
            m.intersection("AB"),
            n.intersection("AC"),
            p.intersection("AD"),
        ],
        None,
    ))
}
