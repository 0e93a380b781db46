//! AST -> canonical scene text.
//!
//! Floats print through `Display`, which emits the shortest decimal
//! that round-trips to the same bits, so parse(unparse(s)) == s.

use std::fmt::Write;

use super::{Scene, Stmt};

pub fn unparse(scene: &Scene) -> String {
    let mut out = String::new();
    for stmt in &scene.stmts {
        match stmt {
            Stmt::Ball(s) => writeln!(out, "ball {s}"),
            Stmt::Point { name, re, im } => writeln!(out, "point {name} {re} {im}"),
            Stmt::Line { name, a, b } => writeln!(out, "line {name} {a} {b}"),
            Stmt::Triangle { name, verts } => {
                writeln!(out, "triangle {name} {} {} {}", verts[0], verts[1], verts[2])
            }
            Stmt::Quad { name, verts } => writeln!(
                out,
                "quad {name} {} {} {} {}",
                verts[0], verts[1], verts[2], verts[3]
            ),
            Stmt::Cevian { name, line, t } => writeln!(out, "cevian {name} {line} {t}"),
            Stmt::Assert { theorem, bound } => {
                writeln!(out, "assert {} deviation<={bound}", theorem.canonical())
            }
        }
        .expect("writing to a String cannot fail");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;
    use crate::scene::TheoremId;

    #[test]
    fn canonical_text_round_trips() {
        let scene = Scene {
            stmts: vec![
                Stmt::Ball(2.5),
                Stmt::Point {
                    name: "A".into(),
                    re: 0.1,
                    im: -0.25,
                },
                Stmt::Point {
                    name: "B".into(),
                    re: 1e-7,
                    im: 0.0,
                },
                Stmt::Line {
                    name: "L".into(),
                    a: "A".into(),
                    b: "B".into(),
                },
                Stmt::Cevian {
                    name: "D".into(),
                    line: "L".into(),
                    t: 0.4,
                },
                Stmt::Assert {
                    theorem: TheoremId::Transversal,
                    bound: 1e-9,
                },
            ],
        };
        let text = unparse(&scene);
        assert_eq!(parse(&text).unwrap(), scene);
    }

    #[test]
    fn aliases_canonicalize_on_output() {
        let s = parse("assert t5 deviation<=0.001\n").unwrap();
        assert_eq!(unparse(&s), "assert transversal deviation<=0.001\n");
    }

    #[test]
    fn awkward_floats_survive_bit_exactly() {
        let vals = [0.1 + 0.2, f64::MIN_POSITIVE, 1.0 / 3.0, -2.2250738585072014e-308];
        for v in vals {
            let scene = Scene {
                stmts: vec![Stmt::Ball(v.abs().max(1e-300) + 1.0), Stmt::Point {
                    name: "A".into(),
                    re: v,
                    im: 0.0,
                }],
            };
            let back = parse(&unparse(&scene)).unwrap();
            match &back.stmts[1] {
                Stmt::Point { re, .. } => assert_eq!(re.to_bits(), v.to_bits()),
                other => panic!("unexpected {other:?}"),
            }
        }
    }
}
