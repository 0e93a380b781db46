//! Scene renderer.
//!
//! The ball of radius s maps onto a 500 px disc centered in a 1100 px
//! square, y axis flipped to screen convention.  Geodesics are drawn
//! over their full ideal extent: diameters as line segments, arc
//! carriers as native elliptical-arc path segments.  All coordinates
//! print with two decimals through one formatter, so a fixed scene
//! renders to byte-identical output.

use std::fmt::Write;

use num_complex::Complex64;

use gyrodisc::gyroline::{Carrier, Gyroline};
use gyrodisc::scene::RenderData;

const SIZE: f64 = 1100.0;
const CENTER: f64 = 550.0;
const RADIUS_PX: f64 = 500.0;

fn fmt(v: f64) -> String {
    format!("{v:.2}")
}

fn px(z: Complex64, s: f64) -> (f64, f64) {
    (
        CENTER + RADIUS_PX * z.re / s,
        CENTER - RADIUS_PX * z.im / s,
    )
}

/// Path data for the whole geodesic, endpoints on the boundary circle.
///
/// An arc carrier crosses the boundary orthogonally, so the part inside
/// the disc always subtends less than a half turn: large-arc-flag is 0
/// and only the sweep direction has to be chosen.  Sweep 1 traces
/// screen-clockwise, which is the inside arc exactly when the carrier
/// center sits left of the chord, i.e. when the screen cross product
/// below is negative.
fn path_d(l: Gyroline) -> String {
    let s = l.ball().s();
    let (e1, e2) = l.ideal_endpoints();
    let (x1, y1) = px(e1, s);
    let (x2, y2) = px(e2, s);
    match l.carrier() {
        Carrier::Diameter { .. } => {
            format!("M {} {} L {} {}", fmt(x1), fmt(y1), fmt(x2), fmt(y2))
        }
        Carrier::Arc { center, radius } => {
            let (cx, cy) = px(center, s);
            let r = RADIUS_PX * radius / s;
            let cross = (cx - x1) * (y2 - y1) - (cy - y1) * (x2 - x1);
            let sweep = if cross < 0.0 { 1 } else { 0 };
            format!(
                "M {} {} A {} {} 0 0 {sweep} {} {}",
                fmt(x1),
                fmt(y1),
                fmt(r),
                fmt(r),
                fmt(x2),
                fmt(y2)
            )
        }
    }
}

pub fn render(data: &RenderData) -> String {
    let s = data.ball.s();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(
        out,
        "<circle class=\"boundary\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#222\" stroke-width=\"2\"/>",
        fmt(CENTER),
        fmt(CENTER),
        fmt(RADIUS_PX)
    );
    for side in &data.sides {
        let _ = writeln!(
            out,
            "<path class=\"side\" d=\"{}\" fill=\"none\" stroke=\"#0a62a8\" stroke-width=\"2\"/>",
            path_d(*side)
        );
    }
    if let Some(t) = data.transversal {
        let _ = writeln!(
            out,
            "<path class=\"transversal\" d=\"{}\" fill=\"none\" stroke=\"#c22424\" stroke-width=\"2.5\"/>",
            path_d(t)
        );
    }
    for p in &data.intersections {
        let (x, y) = px(p.complex(), s);
        let _ = writeln!(out, "<g class=\"cut\" stroke=\"#111\" stroke-width=\"2\">");
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            fmt(x - 5.0),
            fmt(y - 5.0),
            fmt(x + 5.0),
            fmt(y + 5.0)
        );
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            fmt(x - 5.0),
            fmt(y + 5.0),
            fmt(x + 5.0),
            fmt(y - 5.0)
        );
        let _ = writeln!(out, "</g>");
    }
    for (name, p) in &data.labeled {
        let (x, y) = px(p.complex(), s);
        let _ = writeln!(out, "<g class=\"marker\">");
        let _ = writeln!(
            out,
            "<rect x=\"{}\" y=\"{}\" width=\"7\" height=\"7\" fill=\"#111\"/>",
            fmt(x - 3.5),
            fmt(y - 3.5)
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"22\" fill=\"#111\">{name}</text>",
            fmt(x + 9.0),
            fmt(y - 9.0)
        );
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}
