//! Executing scenes: name resolution, figure binding, assertion runs,
//! and the data a renderer needs.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::gyroline::{self, Gyroline};
use crate::menelaus::{self, MenelausReport, QuadConfig, TriangleConfig};
use crate::mobius::{self, BallParam, DiscPoint};

use super::{Scene, Stmt, TheoremId};

fn setup<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::SceneSetup(msg.into()))
}

/// A scene with every name bound to geometry.
#[derive(Debug, Clone)]
pub struct ResolvedScene {
    pub ball: BallParam,
    /// Every named point, declared and cevian, in definition order.
    pub points: Vec<(String, DiscPoint)>,
    /// Declared lines as (name, first point, second point).
    pub lines: Vec<(String, String, String)>,
    /// Figures as (name, vertex names); three or four vertices.
    pub figures: Vec<(String, Vec<String>)>,
    /// Cevians as (point name, carrier line, parameter).
    pub cevians: Vec<(String, String, f64)>,
}

#[derive(Clone, Copy)]
enum PointDef<'a> {
    Plain(f64, f64),
    Cevian { line: &'a str, t: f64 },
}

struct Resolver<'a> {
    ball: BallParam,
    points: &'a HashMap<&'a str, PointDef<'a>>,
    lines: &'a HashMap<&'a str, (&'a str, &'a str)>,
    cache: HashMap<&'a str, DiscPoint>,
    visiting: HashSet<&'a str>,
}

impl<'a> Resolver<'a> {
    fn point(&mut self, name: &'a str) -> Result<DiscPoint> {
        if let Some(&p) = self.cache.get(name) {
            return Ok(p);
        }
        if !self.visiting.insert(name) {
            return setup(format!("circular definition involving `{name}`"));
        }
        let def = match self.points.get(name) {
            Some(d) => *d,
            None => return setup(format!("`{name}` does not name a point")),
        };
        let p = match def {
            PointDef::Plain(re, im) => DiscPoint::new(re, im, self.ball)
                .map_err(|e| Error::SceneSetup(format!("point `{name}`: {e}")))?,
            PointDef::Cevian { line, t } => {
                let &(a, b) = match self.lines.get(line) {
                    Some(ends) => ends,
                    None => return setup(format!("`{line}` does not name a line")),
                };
                let pa = self.point(a)?;
                let pb = self.point(b)?;
                gyroline::gyroline_point(pa, pb, t)
                    .map_err(|e| Error::SceneSetup(format!("cevian `{name}`: {e}")))?
            }
        };
        self.cache.insert(name, p);
        Ok(p)
    }
}

/// Bind every name in the scene.  Duplicate names, dangling references,
/// points outside the ball and circular cevian chains all surface here.
pub fn resolve(scene: &Scene) -> Result<ResolvedScene> {
    let ball = scene.ball();
    let mut pdefs: HashMap<&str, PointDef> = HashMap::new();
    let mut ldefs: HashMap<&str, (&str, &str)> = HashMap::new();
    let mut seen: HashSet<&str> = HashSet::new();
    for stmt in &scene.stmts {
        let name = match stmt {
            Stmt::Point { name, .. }
            | Stmt::Line { name, .. }
            | Stmt::Triangle { name, .. }
            | Stmt::Quad { name, .. }
            | Stmt::Cevian { name, .. } => name.as_str(),
            _ => continue,
        };
        if !seen.insert(name) {
            return setup(format!("duplicate name `{name}`"));
        }
        match stmt {
            Stmt::Point { name, re, im } => {
                pdefs.insert(name, PointDef::Plain(*re, *im));
            }
            Stmt::Cevian { name, line, t } => {
                pdefs.insert(name, PointDef::Cevian { line, t: *t });
            }
            Stmt::Line { name, a, b } => {
                ldefs.insert(name, (a, b));
            }
            _ => {}
        }
    }

    let mut r = Resolver {
        ball,
        points: &pdefs,
        lines: &ldefs,
        cache: HashMap::new(),
        visiting: HashSet::new(),
    };
    let mut out = ResolvedScene {
        ball,
        points: Vec::new(),
        lines: Vec::new(),
        figures: Vec::new(),
        cevians: Vec::new(),
    };
    for stmt in &scene.stmts {
        match stmt {
            Stmt::Ball(_) | Stmt::Assert { .. } => {}
            Stmt::Point { name, .. } | Stmt::Cevian { name, .. } => {
                let p = r.point(name)?;
                out.points.push((name.clone(), p));
                if let Stmt::Cevian { line, t, .. } = stmt {
                    out.cevians.push((name.clone(), line.clone(), *t));
                }
            }
            Stmt::Line { name, a, b } => {
                let pa = r.point(a)?;
                let pb = r.point(b)?;
                Gyroline::through(pa, pb)
                    .map_err(|e| Error::SceneSetup(format!("line `{name}`: {e}")))?;
                out.lines.push((name.clone(), a.clone(), b.clone()));
            }
            Stmt::Triangle { name, verts } => {
                for v in verts {
                    r.point(v)?;
                }
                out.figures.push((name.clone(), verts.to_vec()));
            }
            Stmt::Quad { name, verts } => {
                for v in verts {
                    r.point(v)?;
                }
                out.figures.push((name.clone(), verts.to_vec()));
            }
        }
    }
    Ok(out)
}

impl ResolvedScene {
    pub fn point(&self, name: &str) -> Result<DiscPoint> {
        match self.points.iter().find(|(n, _)| n == name) {
            Some(&(_, p)) => Ok(p),
            None => setup(format!("`{name}` does not name a point")),
        }
    }

    pub fn line_endpoints(&self, name: &str) -> Result<(DiscPoint, DiscPoint)> {
        match self.lines.iter().find(|(n, _, _)| n == name) {
            Some((_, a, b)) => Ok((self.point(a)?, self.point(b)?)),
            None => setup(format!("`{name}` does not name a line")),
        }
    }

    pub fn gyroline(&self, name: &str) -> Result<Gyroline> {
        let (a, b) = self.line_endpoints(name)?;
        Gyroline::through(a, b)
    }

    /// The unique line acting as the transversal: not a cevian carrier,
    /// and not a chord whose both defining points already belong to a
    /// figure (vertices or cevian points).  Chords like a drawn
    /// diagonal or cevian segment are construction lines, not cuts.
    pub fn transversal(&self) -> Result<(String, Gyroline)> {
        let carriers: HashSet<&str> = self.cevians.iter().map(|(_, l, _)| l.as_str()).collect();
        let mut members: HashSet<&str> =
            self.cevians.iter().map(|(n, _, _)| n.as_str()).collect();
        for (_, verts) in &self.figures {
            members.extend(verts.iter().map(|v| v.as_str()));
        }
        let mut cands: Vec<&str> = Vec::new();
        for (name, a, b) in &self.lines {
            if carriers.contains(name.as_str()) {
                continue;
            }
            if members.contains(a.as_str()) && members.contains(b.as_str()) {
                continue;
            }
            cands.push(name);
        }
        match cands[..] {
            [one] => Ok((one.to_string(), self.gyroline(one)?)),
            [] => setup(
                "no transversal line: declare a line with at least one point outside the figure",
            ),
            _ => setup(format!(
                "ambiguous transversal: candidates {}",
                cands.join(", ")
            )),
        }
    }

    fn figures_with(&self, arity: usize) -> Vec<&(String, Vec<String>)> {
        self.figures.iter().filter(|(_, v)| v.len() == arity).collect()
    }

    pub fn triangle(&self) -> Result<(TriangleConfig, [String; 3])> {
        match self.figures_with(3)[..] {
            [(name, verts)] => {
                let cfg = TriangleConfig::new(
                    self.point(&verts[0])?,
                    self.point(&verts[1])?,
                    self.point(&verts[2])?,
                )
                .map_err(|e| Error::SceneSetup(format!("triangle `{name}`: {e}")))?;
                Ok((cfg, [verts[0].clone(), verts[1].clone(), verts[2].clone()]))
            }
            [] => setup("no triangle figure in scene"),
            _ => setup("more than one triangle figure in scene"),
        }
    }

    pub fn quad(&self) -> Result<QuadConfig> {
        match self.figures_with(4)[..] {
            [(name, verts)] => QuadConfig::new(
                self.point(&verts[0])?,
                self.point(&verts[1])?,
                self.point(&verts[2])?,
                self.point(&verts[3])?,
            )
            .map_err(|e| Error::SceneSetup(format!("quad `{name}`: {e}"))),
            [] => setup("no quad figure in scene"),
            _ => setup("more than one quad figure in scene"),
        }
    }

    /// The transversal-theorem binding: the scene's one triangle, with
    /// its one cevian point D.  The cevian's carrier must join two of
    /// the triangle's vertices; the configuration is reordered so the
    /// remaining vertex is the apex A and D lies on side BC.
    pub fn cevian_triangle(&self) -> Result<(TriangleConfig, DiscPoint)> {
        let (_, names) = self.triangle()?;
        let (d_name, carrier, _) = match &self.cevians[..] {
            [one] => one,
            [] => return setup("no cevian in scene"),
            _ => return setup("more than one cevian in scene"),
        };
        let (ca, cb) = match self.lines.iter().find(|(n, _, _)| n == carrier) {
            Some((_, a, b)) => (a.clone(), b.clone()),
            None => return setup(format!("`{carrier}` does not name a line")),
        };
        let apex = match names
            .iter()
            .filter(|n| **n != ca && **n != cb)
            .collect::<Vec<_>>()[..]
        {
            [one] => one.clone(),
            _ => {
                return setup(format!(
                    "cevian carrier `{carrier}` must join two triangle vertices"
                ))
            }
        };
        let cfg = TriangleConfig::new(self.point(&apex)?, self.point(&ca)?, self.point(&cb)?)
            .map_err(|e| Error::SceneSetup(format!("triangle: {e}")))?;
        Ok((cfg, self.point(d_name)?))
    }
}

/// Outcome of a single `assert` statement.
#[derive(Debug, Clone, serde::Serialize)]
pub struct AssertionOutcome {
    pub theorem: TheoremId,
    pub bound: f64,
    /// None when evaluation itself failed (for instance a line missing
    /// a side); such assertions count as failed.
    pub deviation: Option<f64>,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<MenelausReport>,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct SceneRun {
    pub outcomes: Vec<AssertionOutcome>,
    pub all_passed: bool,
}

/// Execute every assertion.  Structural problems (bad bindings,
/// unresolved names) are errors; geometric evaluation failures become
/// failed assertions.
pub fn run_scene(scene: &Scene) -> Result<SceneRun> {
    let rs = resolve(scene)?;
    let mut outcomes = Vec::new();
    for (theorem, bound) in scene.asserts() {
        outcomes.push(run_assert(&rs, theorem, bound)?);
    }
    let all_passed = outcomes.iter().all(|o| o.passed);
    Ok(SceneRun {
        outcomes,
        all_passed,
    })
}

fn run_assert(rs: &ResolvedScene, theorem: TheoremId, bound: f64) -> Result<AssertionOutcome> {
    let evaluated: Result<(f64, MenelausReport)> = match theorem {
        TheoremId::MenelausTriangle => {
            let (cfg, _) = rs.triangle()?;
            let (_, l) = rs.transversal()?;
            menelaus::triangle_menelaus(&cfg, l).map(|r| (r.deviation, r))
        }
        TheoremId::MenelausQuad => {
            let cfg = rs.quad()?;
            let (_, l) = rs.transversal()?;
            menelaus::quad_menelaus(&cfg, l).map(|r| (r.deviation, r))
        }
        TheoremId::MenelausConverse => {
            let cfg = rs.quad()?;
            let (_, l) = rs.transversal()?;
            converse_deviation(&cfg, l)
        }
        TheoremId::Transversal => {
            let (cfg, d) = rs.cevian_triangle()?;
            let (_, l) = rs.transversal()?;
            menelaus::transversal_product(&cfg, d, l).map(|r| (r.deviation, r))
        }
    };
    Ok(match evaluated {
        Ok((deviation, report)) => AssertionOutcome {
            theorem,
            bound,
            deviation: Some(deviation),
            passed: deviation <= bound,
            detail: format!("{theorem}: deviation {deviation:.3e}, bound {bound:e}"),
            report: Some(report),
        },
        Err(e) => AssertionOutcome {
            theorem,
            bound,
            deviation: None,
            passed: false,
            detail: format!("{theorem}: evaluation failed: {e}"),
            report: None,
        },
    })
}

/// Forward quadrilateral run, then drop the BC cut and recover it via
/// the converse.  The reported deviation folds together the verifying
/// product's residual and both recovery gaps (scaled by the ball
/// radius), so it is zero only when everything agrees.
fn converse_deviation(cfg: &QuadConfig, l: Gyroline) -> Result<(f64, MenelausReport)> {
    let forward = menelaus::quad_menelaus(cfg, l)?;
    let pts: Vec<DiscPoint> = forward.intersections.iter().map(|i| i.point).collect();
    if pts.len() != 4 {
        return Err(Error::Internal("quad report must carry four cuts".into()));
    }
    let (x, y0, z, w) = (pts[0], pts[1], pts[2], pts[3]);
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

/// Geometry a renderer needs, in deterministic (definition) order.
#[derive(Debug, Clone)]
pub struct RenderData {
    pub ball: BallParam,
    pub labeled: Vec<(String, DiscPoint)>,
    /// Figure sides and construction chords.
    pub sides: Vec<Gyroline>,
    pub transversal: Option<Gyroline>,
    /// Cuts of the transversal with each side.
    pub intersections: Vec<DiscPoint>,
}

pub fn render_data(scene: &Scene) -> Result<RenderData> {
    let rs = resolve(scene)?;
    let transversal = rs.transversal().ok();
    let mut pairs: Vec<(String, String)> = Vec::new();
    let add_pair = |pairs: &mut Vec<(String, String)>, a: &str, b: &str| {
        let key = if a <= b { (a.into(), b.into()) } else { (b.into(), a.into()) };
        if !pairs.contains(&key) {
            pairs.push(key);
        }
    };
    for (_, verts) in &rs.figures {
        for i in 0..verts.len() {
            add_pair(&mut pairs, &verts[i], &verts[(i + 1) % verts.len()]);
        }
    }
    for (name, a, b) in &rs.lines {
        if let Some((t_name, _)) = &transversal {
            if name == t_name {
                continue;
            }
        }
        add_pair(&mut pairs, a, b);
    }
    let mut sides = Vec::new();
    for (a, b) in &pairs {
        sides.push(Gyroline::through(rs.point(a)?, rs.point(b)?)?);
    }
    let mut intersections = Vec::new();
    if let Some((_, t)) = &transversal {
        for side in &sides {
            if let Ok(Some(p)) = t.intersect(*side) {
                intersections.push(p);
            }
        }
    }
    Ok(RenderData {
        ball: rs.ball,
        labeled: rs.points.clone(),
        sides,
        transversal: transversal.map(|(_, l)| l),
        intersections,
    })
}

fn point_stmt(name: &str, p: DiscPoint) -> Stmt {
    Stmt::Point {
        name: name.into(),
        re: p.re(),
        im: p.im(),
    }
}

fn scene_prelude(ball: BallParam, l: Gyroline) -> (Vec<Stmt>, Stmt) {
    let (p1, p2) = l.sample_points();
    let line = Stmt::Line {
        name: "L".into(),
        a: "P1".into(),
        b: "P2".into(),
    };
    (
        vec![
            Stmt::Ball(ball.s()),
            point_stmt("P1", p1),
            point_stmt("P2", p2),
        ],
        line,
    )
}

/// Scene reproducing a triangle-with-transversal configuration.
pub fn triangle_scene(cfg: &TriangleConfig, l: Gyroline, bound: f64) -> Scene {
    let (mut stmts, line) = scene_prelude(cfg.a().ball(), l);
    stmts.push(point_stmt("A", cfg.a()));
    stmts.push(point_stmt("B", cfg.b()));
    stmts.push(point_stmt("C", cfg.c()));
    stmts.push(Stmt::Triangle {
        name: "T".into(),
        verts: ["A".into(), "B".into(), "C".into()],
    });
    stmts.push(line);
    stmts.push(Stmt::Assert {
        theorem: TheoremId::MenelausTriangle,
        bound,
    });
    Scene { stmts }
}

/// Scene reproducing a quadrilateral-with-transversal configuration,
/// asserting either the forward identity or the converse round-trip.
pub fn quad_scene(cfg: &QuadConfig, l: Gyroline, converse: bool, bound: f64) -> Scene {
    let (mut stmts, line) = scene_prelude(cfg.a().ball(), l);
    stmts.push(point_stmt("A", cfg.a()));
    stmts.push(point_stmt("B", cfg.b()));
    stmts.push(point_stmt("C", cfg.c()));
    stmts.push(point_stmt("D", cfg.d()));
    stmts.push(Stmt::Quad {
        name: "Q".into(),
        verts: ["A".into(), "B".into(), "C".into(), "D".into()],
    });
    stmts.push(line);
    stmts.push(Stmt::Assert {
        theorem: if converse {
            TheoremId::MenelausConverse
        } else {
            TheoremId::MenelausQuad
        },
        bound,
    });
    Scene { stmts }
}

/// Scene reproducing a cevian configuration for the transversal
/// theorem; D is re-derived from its parameter along BC.
pub fn cevian_scene(
    cfg: &TriangleConfig,
    d: DiscPoint,
    l: Gyroline,
    bound: f64,
) -> Result<Scene> {
    let t = gyroline::segment_param(cfg.b(), cfg.c(), d)?;
    let (mut stmts, line) = scene_prelude(cfg.a().ball(), l);
    stmts.push(point_stmt("A", cfg.a()));
    stmts.push(point_stmt("B", cfg.b()));
    stmts.push(point_stmt("C", cfg.c()));
    stmts.push(Stmt::Line {
        name: "BC".into(),
        a: "B".into(),
        b: "C".into(),
    });
    stmts.push(Stmt::Cevian {
        name: "D".into(),
        line: "BC".into(),
        t,
    });
    stmts.push(Stmt::Line {
        name: "AD".into(),
        a: "A".into(),
        b: "D".into(),
    });
    stmts.push(Stmt::Triangle {
        name: "T".into(),
        verts: ["A".into(), "B".into(), "C".into()],
    });
    stmts.push(line);
    stmts.push(Stmt::Assert {
        theorem: TheoremId::Transversal,
        bound,
    });
    Ok(Scene { stmts })
}
