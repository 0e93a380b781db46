//! The Euclidean limit of the ratio products.
//!
//! A fixed set of coordinates is embedded unchanged in balls of growing
//! radius.  The gyro products stay at 1 for every s, while the products
//! of plain Euclidean distances taken at the (s-dependent) geodesic
//! intersections approach 1 like 1/s^2, which is the rate at which the
//! gamma correction v/(1 - v^2/s^2) collapses to v.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gyroline::{self, Gyroline};
use crate::menelaus::{self, MenelausReport, QuadConfig, TriangleConfig};
use crate::mobius::{BallParam, DiscPoint};

/// One row of a sweep: deviations of both products at a given ball size.
#[derive(Debug, Clone, Serialize)]
pub struct LimitRow {
    pub s: f64,
    pub gyro_deviation: f64,
    pub euclidean_deviation: f64,
}

/// Sweep a triangle (3 vertices) or quadrilateral (4 vertices) cut by
/// the line through two fixed points across the given ball radii.
pub fn euclidean_limit_sweep(
    vertices: &[Complex64],
    line: (Complex64, Complex64),
    s_values: &[f64],
) -> Result<Vec<LimitRow>> {
    if !(vertices.len() == 3 || vertices.len() == 4) {
        return Err(Error::SceneSetup(format!(
            "limit sweep needs 3 or 4 vertices, got {}",
            vertices.len()
        )));
    }
    if s_values.is_empty() {
        return Err(Error::SceneSetup("limit sweep needs at least one s".into()));
    }
    let mut rows = Vec::with_capacity(s_values.len());
    for &s in s_values {
        let ball = BallParam::new(s)?;
        let pts: Vec<DiscPoint> = vertices
            .iter()
            .map(|&z| DiscPoint::from_complex(z, ball))
            .collect::<Result<_>>()?;
        let l = Gyroline::through(
            DiscPoint::from_complex(line.0, ball)?,
            DiscPoint::from_complex(line.1, ball)?,
        )?;
        let report = if pts.len() == 3 {
            menelaus::triangle_menelaus(&TriangleConfig::new(pts[0], pts[1], pts[2])?, l)?
        } else {
            menelaus::quad_menelaus(&QuadConfig::new(pts[0], pts[1], pts[2], pts[3])?, l)?
        };
        rows.push(LimitRow {
            s,
            gyro_deviation: report.deviation,
            euclidean_deviation: euclidean_deviation(&pts, &report),
        });
    }
    Ok(rows)
}

/// Sweep a cevian configuration: triangle vertices, the parameter of D
/// along BC, and the transversal's two fixed points.
pub fn transversal_limit_sweep(
    vertices: &[Complex64; 3],
    d_param: f64,
    line: (Complex64, Complex64),
    s_values: &[f64],
) -> Result<Vec<LimitRow>> {
    if s_values.is_empty() {
        return Err(Error::SceneSetup("limit sweep needs at least one s".into()));
    }
    let mut rows = Vec::with_capacity(s_values.len());
    for &s in s_values {
        let ball = BallParam::new(s)?;
        let a = DiscPoint::from_complex(vertices[0], ball)?;
        let b = DiscPoint::from_complex(vertices[1], ball)?;
        let c = DiscPoint::from_complex(vertices[2], ball)?;
        let cfg = TriangleConfig::new(a, b, c)?;
        let d = gyroline::gyroline_point(b, c, d_param)?;
        let l = Gyroline::through(
            DiscPoint::from_complex(line.0, ball)?,
            DiscPoint::from_complex(line.1, ball)?,
        )?;
        let report = menelaus::transversal_product(&cfg, d, l)?;
        let e = |u: Complex64, v: Complex64| (u - v).norm();
        let (m, n, p) = (
            report.intersections[0].point.complex(),
            report.intersections[1].point.complex(),
            report.intersections[2].point.complex(),
        );
        let (za, zb, zc, zd) = (a.complex(), b.complex(), c.complex(), d.complex());
        let product = e(zb, zd) / e(zc, zd) * (e(zc, za) / e(n, za)) * (e(n, p) / e(m, p))
            * (e(m, za) / e(zb, za));
        rows.push(LimitRow {
            s,
            gyro_deviation: report.deviation,
            euclidean_deviation: (product - 1.0).abs(),
        });
    }
    Ok(rows)
}

/// Product of Euclidean distance ratios |U - P| / |V - P| over the sides
/// in report order.
fn euclidean_deviation(pts: &[DiscPoint], report: &MenelausReport) -> f64 {
    let n = pts.len();
    let mut product = 1.0;
    for (i, cut) in report.intersections.iter().enumerate() {
        let u = pts[i].complex();
        let v = pts[(i + 1) % n].complex();
        let p = cut.point.complex();
        product *= (u - p).norm() / (v - p).norm();
    }
    (product - 1.0).abs()
}

/// Least-squares slope of ln(euclidean deviation) against ln(s); None if
/// any deviation is zero or only one row exists.
pub fn loglog_slope(rows: &[LimitRow]) -> Option<f64> {
    if rows.len() < 2 || rows.iter().any(|r| r.euclidean_deviation <= 0.0) {
        return None;
    }
    let n = rows.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for r in rows {
        let x = r.s.ln();
        let y = r.euclidean_deviation.ln();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    Some((n * sxy - sx * sy) / (n * sxx - sx * sx))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn quad_sweep_decays_quadratically() {
        let vertices = [z(0.4, 0.0), z(0.0, 0.3), z(-0.45, 0.0), z(-0.2, -0.3)];
        let line = (z(-0.05, 0.2), (z(-0.22, -0.17)));
        let s_values = [10.0, 100.0, 1000.0, 10000.0];
        let rows = euclidean_limit_sweep(&vertices, line, &s_values).unwrap();
        assert_eq!(rows.len(), 4);
        for pair in rows.windows(2) {
            assert!(pair[1].euclidean_deviation < pair[0].euclidean_deviation);
        }
        for r in &rows {
            assert!(r.gyro_deviation <= 1e-9);
        }
        assert!(rows.last().unwrap().euclidean_deviation <= 1e-7);
        let slope = loglog_slope(&rows).unwrap();
        assert!((slope + 2.0).abs() <= 0.2, "slope {slope}");
    }

    #[test]
    fn gamma_residual_matches_the_rate() {
        // |v_gamma - v| = v^3 / (s^2 - v^2): 0.125 / 99.75 at v = 0.5, s = 10
        let ball = BallParam::new(10.0).unwrap();
        let g = crate::mobius::gamma_correct(0.5, ball).unwrap();
        assert!((g.v_gamma() - g.v() - 0.0012531328320802005).abs() <= 1e-15);
    }

    #[test]
    fn single_s_gives_single_row() {
        let vertices = [z(0.1, 0.4), z(-0.3, -0.1), z(0.45, -0.15)];
        let line = (z(-0.05, 0.15), z(0.2, 0.1));
        let rows = euclidean_limit_sweep(&vertices, line, &[1e9]).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].euclidean_deviation <= 1e-9);
    }

    #[test]
    fn config_must_fit_every_ball() {
        let vertices = [z(3.0, 0.0), z(0.0, 3.0), z(-3.0, 0.0)];
        let line = (z(0.1, 0.0), z(0.05, 0.2));
        assert!(matches!(
            euclidean_limit_sweep(&vertices, line, &[2.0]),
            Err(Error::OutsideBall { .. })
        ));
    }

    #[test]
    fn cevian_sweep_decays() {
        let vertices = [z(0.1, 0.4), z(-0.3, -0.1), z(0.45, -0.15)];
        let line = (z(-0.05, 0.15), z(0.2, 0.1));
        let rows = transversal_limit_sweep(&vertices, 0.4, line, &[10.0, 100.0, 1000.0]).unwrap();
        for pair in rows.windows(2) {
            assert!(pair[1].euclidean_deviation < pair[0].euclidean_deviation);
        }
        for r in &rows {
            assert!(r.gyro_deviation <= 1e-9);
        }
    }
}
