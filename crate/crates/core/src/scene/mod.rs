//! The `.gyro` scene format: a line-oriented description of points,
//! gyrolines, figures and assertions.
//!
//! ```text
//! ball 1
//! point A 0.4 0
//! point B 0 0.3
//! point C -0.45 0
//! point D -0.2 -0.3
//! point P1 -0.05 0.2
//! point P2 -0.22 -0.17
//! quad Q A B C D
//! line L P1 P2
//! assert menelaus_quad deviation<=1e-9
//! ```
//!
//! One statement per line, `#` starts a comment, tokens are separated
//! by whitespace.  Reals use plain decimal or scientific notation.
//! `cevian NAME LINE T` defines a new point at parameter `T` along the
//! gyrosegment between the referenced line's two defining points.
//!
//! Statement order is free: references may point forward.  The parser
//! recovers after bad lines so one pass reports every diagnostic.

mod exec;
mod parse;
mod unparse;

pub use exec::{
    cevian_scene, quad_scene, render_data, resolve, run_scene, triangle_scene, AssertionOutcome,
    RenderData, ResolvedScene, SceneRun,
};
pub use parse::parse;
pub use unparse::unparse;

use crate::mobius::BallParam;

/// Identity checked by an `assert` statement.
///
/// Canonical spellings are `menelaus_triangle`, `menelaus_quad`,
/// `menelaus_converse` and `transversal`; the short forms `t2`, `t3`,
/// `t4`/`t4-converse` and `t5` are accepted on input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    MenelausTriangle,
    MenelausQuad,
    MenelausConverse,
    Transversal,
}

impl TheoremId {
    pub fn canonical(self) -> &'static str {
        match self {
            TheoremId::MenelausTriangle => "menelaus_triangle",
            TheoremId::MenelausQuad => "menelaus_quad",
            TheoremId::MenelausConverse => "menelaus_converse",
            TheoremId::Transversal => "transversal",
        }
    }

    pub fn from_token(tok: &str) -> Option<Self> {
        match tok {
            "menelaus_triangle" | "t2" => Some(TheoremId::MenelausTriangle),
            "menelaus_quad" | "t3" => Some(TheoremId::MenelausQuad),
            "menelaus_converse" | "t4" | "t4-converse" => Some(TheoremId::MenelausConverse),
            "transversal" | "t5" => Some(TheoremId::Transversal),
            _ => None,
        }
    }
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.canonical())
    }
}

/// One statement, mirroring the text line for line.
#[derive(Debug, Clone, PartialEq)]
pub enum Stmt {
    Ball(f64),
    Point { name: String, re: f64, im: f64 },
    Line { name: String, a: String, b: String },
    Triangle { name: String, verts: [String; 3] },
    Quad { name: String, verts: [String; 4] },
    Cevian { name: String, line: String, t: f64 },
    Assert { theorem: TheoremId, bound: f64 },
}

/// A parsed scene.  Statement order is preserved; `unparse` followed by
/// `parse` reproduces the same statement list.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Scene {
    pub stmts: Vec<Stmt>,
}

impl Scene {
    /// The declared ball, or the unit ball when no `ball` statement is
    /// present.
    pub fn ball(&self) -> BallParam {
        for stmt in &self.stmts {
            if let Stmt::Ball(s) = stmt {
                return BallParam::new(*s).unwrap_or_else(|_| BallParam::unit());
            }
        }
        BallParam::unit()
    }

    pub fn asserts(&self) -> impl Iterator<Item = (TheoremId, f64)> + '_ {
        self.stmts.iter().filter_map(|s| match s {
            Stmt::Assert { theorem, bound } => Some((*theorem, *bound)),
            _ => None,
        })
    }
}

/// A parse or validation problem, tied to a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Diagnostic {
    pub line: u32,
    pub col: u32,
    pub message: String,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}
