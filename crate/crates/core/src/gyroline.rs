//! Geodesics of the s-ball as Euclidean carriers.
//!
//! A gyroline is either a diameter or a circular arc whose carrier circle
//! meets the boundary at right angles, which pins the carrier by
//! |c|^2 = r^2 + s^2.  That orthogonality is what makes the numerics
//! here simple: every carrier has power s^2 at the origin, so the radical
//! line of two arcs passes through the origin, and the two roots of any
//! carrier-diameter intersection multiply to exactly s^2, leaving exactly
//! one of them inside the ball.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::mobius::{self, BallParam, DiscPoint};
use crate::tol;

/// The Euclidean object carrying a gyroline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Carrier {
    /// Line through the origin with direction angle theta in [0, pi).
    Diameter { theta: f64 },
    /// Circle orthogonal to the boundary; only its part inside the ball
    /// belongs to the gyroline.
    Arc { center: Complex64, radius: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gyroline {
    carrier: Carrier,
    ball: BallParam,
}

fn fold_angle(t: f64) -> f64 {
    let mut a = t.rem_euclid(PI);
    if a >= PI {
        a = 0.0;
    }
    a
}

impl Gyroline {
    /// The unique geodesic through two distinct points.
    pub fn through(a: DiscPoint, b: DiscPoint) -> Result<Self> {
        let ball = a.ball().matched(b.ball())?;
        let s = ball.s();
        let (za, zb) = (a.complex(), b.complex());
        if (za - zb).norm() <= tol::POINT_EQ * s {
            return Err(Error::CoincidentPoints);
        }
        let (na, nb) = (za.norm(), zb.norm());
        // through the origin the geodesic is the diameter toward the
        // other point
        if na <= tol::POINT_EQ * s {
            return Ok(Self {
                carrier: Carrier::Diameter {
                    theta: fold_angle(zb.arg()),
                },
                ball,
            });
        }
        if nb <= tol::POINT_EQ * s {
            return Ok(Self {
                carrier: Carrier::Diameter {
                    theta: fold_angle(za.arg()),
                },
                ball,
            });
        }
        let cross = za.re * zb.im - za.im * zb.re;
        if (cross / (na * nb)).abs() <= tol::DIAMETER_CROSS {
            return Ok(Self {
                carrier: Carrier::Diameter {
                    theta: fold_angle(za.arg()),
                },
                ball,
            });
        }
        // center from 2 Re(conj(c) z) = s^2 + |z|^2 at both points
        let p = s * s + za.norm_sqr();
        let q = s * s + zb.norm_sqr();
        let inv = 1.0 / (2.0 * cross);
        let c = Complex64::new((p * zb.im - q * za.im) * inv, (q * za.re - p * zb.re) * inv);
        // the radius through the defining points is better conditioned
        // than sqrt(|c|^2 - s^2) when the center is far away
        let r = 0.5 * ((c - za).norm() + (c - zb).norm());
        Ok(Self {
            carrier: Carrier::Arc { center: c, radius: r },
            ball,
        })
    }

    pub fn carrier(self) -> Carrier {
        self.carrier
    }

    pub fn ball(self) -> BallParam {
        self.ball
    }

    /// Default incidence tolerance for this ball.
    pub fn default_tol(self) -> f64 {
        tol::INCIDENCE * self.ball.s()
    }

    /// Euclidean distance from z to the carrier.
    ///
    /// For arcs this goes through the power of the point,
    /// |z - c|^2 - r^2 over |z - c| + r, which stays accurate even for
    /// near-diameter carriers whose center and radius are enormous.
    pub fn euclid_offset(self, z: Complex64) -> f64 {
        match self.carrier {
            Carrier::Diameter { theta } => {
                let e = Complex64::from_polar(1.0, theta);
                (z.im * e.re - z.re * e.im).abs()
            }
            Carrier::Arc { center: c, radius: r } => {
                let s = self.ball.s();
                let power = z.norm_sqr() - 2.0 * (c.re * z.re + c.im * z.im) + s * s;
                power.abs() / ((z - c).norm() + r)
            }
        }
    }

    /// Incidence within an absolute Euclidean tolerance.
    pub fn contains(self, p: DiscPoint, tol: f64) -> Result<bool> {
        self.ball.matched(p.ball())?;
        Ok(self.euclid_offset(p.complex()) <= tol)
    }

    /// Gyrodistance from a point to the nearest point of the gyroline.
    ///
    /// If S is sinh of the (rapidity-scaled) separation, computable in
    /// closed form from the carrier, the metric value is
    /// s S / (1 + sqrt(1 + S^2)).
    pub fn gyro_distance(self, p: DiscPoint) -> Result<f64> {
        self.ball.matched(p.ball())?;
        let s = self.ball.s();
        let z = p.complex();
        let denom = s * s - z.norm_sqr();
        let big_s = match self.carrier {
            Carrier::Diameter { theta } => {
                let e = Complex64::from_polar(1.0, theta);
                let de = (z.im * e.re - z.re * e.im).abs();
                2.0 * s * de / denom
            }
            Carrier::Arc { center: c, radius: r } => {
                let power = z.norm_sqr() - 2.0 * (c.re * z.re + c.im * z.im) + s * s;
                s * power.abs() / (r * denom)
            }
        };
        Ok(s * big_s / (1.0 + (1.0 + big_s * big_s).sqrt()))
    }

    /// The single interior intersection of two distinct gyrolines, if any.
    pub fn intersect(self, other: Gyroline) -> Result<Option<DiscPoint>> {
        let ball = self.ball.matched(other.ball)?;
        match (self.carrier, other.carrier) {
            (Carrier::Diameter { theta: t1 }, Carrier::Diameter { theta: t2 }) => {
                let d = (t1 - t2).abs();
                if d.min(PI - d) <= tol::DIAMETER_CROSS {
                    return Err(Error::IdenticalGyrolines);
                }
                Ok(Some(DiscPoint::origin(ball)))
            }
            (Carrier::Diameter { theta }, Carrier::Arc { center, .. })
            | (Carrier::Arc { center, .. }, Carrier::Diameter { theta }) => {
                interior_root(Complex64::from_polar(1.0, theta), center, ball)
            }
            (Carrier::Arc { center: c1, .. }, Carrier::Arc { center: c2, .. }) => {
                if (c1 - c2).norm() <= tol::POINT_EQ * (c1.norm() + c2.norm()) {
                    return Err(Error::IdenticalGyrolines);
                }
                // the radical line of two boundary-orthogonal circles
                // passes through the origin, perpendicular to the line
                // of centers
                let d = c2 - c1;
                let u = Complex64::new(-d.im, d.re) / d.norm();
                let c = if c1.norm() <= c2.norm() { c1 } else { c2 };
                interior_root(u, c, ball)
            }
        }
    }

    /// Whether two gyrolines describe the same geodesic, within loose
    /// reconstruction tolerances.
    pub fn approx_eq(self, other: Gyroline) -> bool {
        if self.ball != other.ball {
            return false;
        }
        let s = self.ball.s();
        match (self.carrier, other.carrier) {
            (Carrier::Diameter { theta: t1 }, Carrier::Diameter { theta: t2 }) => {
                let d = (t1 - t2).abs();
                d.min(PI - d) <= 1e-9
            }
            (Carrier::Arc { center: c1, radius: r1 }, Carrier::Arc { center: c2, radius: r2 }) => {
                (c1 - c2).norm() <= 1e-9 * (s + c1.norm()) && (r1 - r2).abs() <= 1e-9 * (s + r1)
            }
            _ => false,
        }
    }

    /// Ideal endpoints on the boundary circle.
    pub fn ideal_endpoints(self) -> (Complex64, Complex64) {
        let s = self.ball.s();
        match self.carrier {
            Carrier::Diameter { theta } => {
                let e = Complex64::from_polar(s, theta);
                (e, -e)
            }
            Carrier::Arc { center: c, radius: _ } => {
                let eta = c.arg();
                let psi = (s / c.norm()).clamp(-1.0, 1.0).acos();
                (
                    Complex64::from_polar(s, eta - psi),
                    Complex64::from_polar(s, eta + psi),
                )
            }
        }
    }

    /// Two well-separated interior points of the gyroline, deterministic
    /// in the carrier; used to serialize a gyroline as a point pair.
    ///
    /// Arc points are found by cutting the carrier with the circle
    /// |z| = rho midway between the arc's closest approach and the
    /// boundary, which is stable for arbitrarily large carriers.
    pub fn sample_points(self) -> (DiscPoint, DiscPoint) {
        let s = self.ball.s();
        match self.carrier {
            Carrier::Diameter { theta } => {
                let e = Complex64::from_polar(0.5 * s, theta);
                (DiscPoint::raw(e, self.ball), DiscPoint::raw(-e, self.ball))
            }
            Carrier::Arc { center: c, radius: r } => {
                let nc = c.norm();
                let lo = s * s / (nc + r); // |c| - r without cancellation
                let rho = 0.5 * (lo + s);
                let alpha = ((rho * rho + s * s) / (2.0 * rho * nc))
                    .clamp(-1.0, 1.0)
                    .acos();
                let eta = c.arg();
                (
                    DiscPoint::raw(Complex64::from_polar(rho, eta + alpha), self.ball),
                    DiscPoint::raw(Complex64::from_polar(rho, eta - alpha), self.ball),
                )
            }
        }
    }

    /// Image of the gyroline under rotation about the origin.
    pub fn rotated(self, phi: f64) -> Gyroline {
        let carrier = match self.carrier {
            Carrier::Diameter { theta } => Carrier::Diameter {
                theta: fold_angle(theta + phi),
            },
            Carrier::Arc { center, radius } => Carrier::Arc {
                center: center * Complex64::from_polar(1.0, phi),
                radius,
            },
        };
        Gyroline {
            carrier,
            ball: self.ball,
        }
    }
}

/// Intersection of the line t -> t u (|u| = 1) with the carrier circle of
/// center c: t^2 - 2 Re(conj(c) u) t + s^2 = 0.  The root product is s^2,
/// so when the discriminant is positive exactly one root is interior; it
/// is recovered from the large root, which has no cancellation.
fn interior_root(u: Complex64, c: Complex64, ball: BallParam) -> Result<Option<DiscPoint>> {
    let s = ball.s();
    let rr = u.re * c.re + u.im * c.im;
    let disc = rr * rr - s * s;
    if disc <= 0.0 {
        return Ok(None);
    }
    let t_big = rr + rr.signum() * disc.sqrt();
    if t_big.abs() <= s {
        return Err(Error::Internal(
            "carrier intersection produced two interior roots".into(),
        ));
    }
    let t_in = s * s / t_big;
    Ok(Some(DiscPoint::from_complex(u * t_in, ball)?))
}

impl fmt::Display for Gyroline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.carrier {
            Carrier::Diameter { theta } => write!(f, "diameter(theta={theta})"),
            Carrier::Arc { center, radius } => {
                write!(f, "arc(c=({}, {}), r={})", center.re, center.im, radius)
            }
        }
    }
}

impl Serialize for Gyroline {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.carrier {
            Carrier::Diameter { theta } => {
                let mut st = serializer.serialize_struct("Gyroline", 2)?;
                st.serialize_field("kind", "diameter")?;
                st.serialize_field("theta", &theta)?;
                st.end()
            }
            Carrier::Arc { center, radius } => {
                let mut st = serializer.serialize_struct("Gyroline", 4)?;
                st.serialize_field("kind", "arc")?;
                st.serialize_field("cx", &center.re)?;
                st.serialize_field("cy", &center.im)?;
                st.serialize_field("r", &radius)?;
                st.end()
            }
        }
    }
}

/// Whether all points lie on one geodesic, tested against the gyroline
/// through the two most-separated points.
///
/// `tol` is relative: each point's gyrodistance to that line is compared
/// against `tol` times the defining pair's separation, so the verdict
/// does not depend on the ball radius or on where in the ball the
/// cluster sits.
pub fn collinear(points: &[DiscPoint], tol: f64) -> Result<bool> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: points.len(),
        });
    }
    let mut ball = points[0].ball();
    for p in &points[1..] {
        ball = ball.matched(p.ball())?;
    }
    let (mut bi, mut bj, mut best) = (0, 1, -1.0);
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let v = mobius::hyp_distance(points[i], points[j])?.v();
            if v > best {
                (bi, bj, best) = (i, j, v);
            }
        }
    }
    if best <= tol::POINT_EQ * ball.s() {
        return Ok(true); // a cluster of coincident points
    }
    let line = Gyroline::through(points[bi], points[bj])?;
    for p in points {
        if line.gyro_distance(*p)? > tol * best {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The gyroline parametrization P(t) = a (+) (((-a) (+) b) (x) t); P(0) = a
/// and P(1) = b.
pub fn gyroline_point(a: DiscPoint, b: DiscPoint, t: f64) -> Result<DiscPoint> {
    let w = mobius::mobius_left_sub(a, b)?;
    mobius::mobius_add(a, mobius::mobius_scalar_mul(t, w)?)
}

/// Parameter of a point p of the gyroline through a and b, inverse of
/// [`gyroline_point`] for points on the line (off-line points project).
pub fn segment_param(a: DiscPoint, b: DiscPoint, p: DiscPoint) -> Result<f64> {
    let ball = a.ball().matched(b.ball())?.matched(p.ball())?;
    let w = mobius::mobius_left_sub(a, b)?.complex() / ball.s();
    let bw = w.norm();
    if bw <= tol::POINT_EQ {
        return Err(Error::CoincidentPoints);
    }
    let q = mobius::mobius_left_sub(a, p)?.complex() / ball.s();
    let x = (q.re * w.re + q.im * w.im) / bw;
    Ok(x.atanh() / bw.atanh())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mobius::{mobius_midpoint, BallParam, DiscPoint};

    fn pt(re: f64, im: f64) -> DiscPoint {
        DiscPoint::new(re, im, BallParam::unit()).unwrap()
    }

    #[test]
    fn through_origin_gives_diameter() {
        let l = Gyroline::through(DiscPoint::origin(BallParam::unit()), pt(0.5, 0.0)).unwrap();
        assert!(matches!(l.carrier(), Carrier::Diameter { theta } if theta.abs() <= 1e-15));
        let m = Gyroline::through(pt(-0.3, 0.0), pt(0.3, 0.0)).unwrap();
        assert!(matches!(m.carrier(), Carrier::Diameter { theta } if theta.abs() <= 1e-15));
    }

    #[test]
    fn through_frozen_arc() {
        // |c - 0.5| = |c - 0.5i| = r with |c|^2 = r^2 + 1 puts the center
        // at 1.25 + 1.25i, r = sqrt(2.125)
        let l = Gyroline::through(pt(0.5, 0.0), pt(0.0, 0.5)).unwrap();
        match l.carrier() {
            Carrier::Arc { center, radius } => {
                assert!((center.re - 1.25).abs() <= 1e-12);
                assert!((center.im - 1.25).abs() <= 1e-12);
                assert!((radius - 2.125f64.sqrt()).abs() <= 1e-12);
            }
            Carrier::Diameter { .. } => panic!("expected an arc"),
        }
        assert!(l.contains(pt(0.5, 0.0), l.default_tol()).unwrap());
        assert!(l.contains(pt(0.0, 0.5), l.default_tol()).unwrap());
        let mid = mobius_midpoint(pt(0.5, 0.0), pt(0.0, 0.5)).unwrap();
        assert!(l.contains(mid, l.default_tol()).unwrap());
    }

    #[test]
    fn coincident_points_rejected() {
        assert!(matches!(
            Gyroline::through(pt(0.1, 0.2), pt(0.1, 0.2)),
            Err(Error::CoincidentPoints)
        ));
    }

    #[test]
    fn contains_on_diameter() {
        let l = Gyroline::through(pt(-0.3, 0.0), pt(0.3, 0.0)).unwrap();
        assert!(l.contains(pt(0.7, 0.0), l.default_tol()).unwrap());
        assert!(!l.contains(pt(0.0, 0.1), l.default_tol()).unwrap());
    }

    #[test]
    fn diameters_meet_at_center() {
        let l1 = Gyroline::through(pt(-0.3, 0.0), pt(0.3, 0.0)).unwrap();
        let l2 = Gyroline::through(pt(0.0, -0.4), pt(0.0, 0.4)).unwrap();
        let x = l1.intersect(l2).unwrap().unwrap();
        assert!(x.norm() <= 1e-15);
        assert!(matches!(l1.intersect(l1), Err(Error::IdenticalGyrolines)));
    }

    #[test]
    fn diameter_meets_frozen_arc() {
        // the real-axis crossing of the arc through (0.5, 0.5i) is the
        // root of t^2 - 2.5 t + 1, i.e. exactly 0.5
        let arc = Gyroline::through(pt(0.5, 0.0), pt(0.0, 0.5)).unwrap();
        let diam = Gyroline::through(pt(-0.3, 0.0), pt(0.3, 0.0)).unwrap();
        let x = diam.intersect(arc).unwrap().unwrap();
        assert!((x.re() - 0.5).abs() <= 1e-12);
        assert!(x.im().abs() <= 1e-12);
    }

    #[test]
    fn separated_arcs_do_not_meet() {
        // two boundary-hugging arcs near opposite sides of the disc
        let a = Gyroline::through(pt(0.8, 0.05), pt(0.8, -0.05)).unwrap();
        let b = Gyroline::through(pt(-0.8, 0.05), pt(-0.8, -0.05)).unwrap();
        assert!(a.intersect(b).unwrap().is_none());
    }

    #[test]
    fn arc_arc_interior_intersection() {
        let a = Gyroline::through(pt(0.5, 0.1), pt(-0.2, 0.4)).unwrap();
        let b = Gyroline::through(pt(0.3, -0.2), pt(0.1, 0.45)).unwrap();
        let x = a.intersect(b).unwrap().unwrap();
        assert!(a.euclid_offset(x.complex()) <= 1e-12);
        assert!(b.euclid_offset(x.complex()) <= 1e-12);
        assert!(x.norm() < 1.0);
    }

    #[test]
    fn collinear_trivial_cases() {
        let pts = [pt(0.0, 0.0), pt(0.2, 0.0), pt(0.7, 0.0)];
        assert!(collinear(&pts, 1e-9).unwrap());
        let bad = [pt(0.0, 0.0), pt(0.2, 0.0), pt(0.0, 0.1)];
        assert!(!collinear(&bad, 1e-9).unwrap());
        assert!(matches!(
            collinear(&pts[..1], 1e-9),
            Err(Error::TooFewPoints { .. })
        ));
    }

    #[test]
    fn parametrized_points_are_collinear() {
        let a = pt(0.31, -0.2);
        let b = pt(-0.1, 0.44);
        let l = Gyroline::through(a, b).unwrap();
        for t in [-1.5, -0.3, 0.0, 0.25, 0.5, 1.0, 2.4] {
            let p = gyroline_point(a, b, t).unwrap();
            assert!(l.euclid_offset(p.complex()) <= 1e-9);
            let back = segment_param(a, b, p).unwrap();
            assert!((back - t).abs() <= 1e-9);
        }
    }

    #[test]
    fn sample_points_lie_on_the_line() {
        for (a, b) in [
            (pt(0.31, -0.2), pt(-0.1, 0.44)),
            (pt(0.5, 0.001), pt(-0.5, -0.0012)), // nearly a diameter
            (pt(0.8, 0.05), pt(0.8, -0.05)),     // boundary-hugging arc
            (pt(-0.3, 0.0), pt(0.3, 0.0)),
        ] {
            let l = Gyroline::through(a, b).unwrap();
            let (p, q) = l.sample_points();
            assert!(l.euclid_offset(p.complex()) <= 1e-9);
            assert!(l.euclid_offset(q.complex()) <= 1e-9);
            assert!(p.norm() < 1.0 && q.norm() < 1.0);
            let rebuilt = Gyroline::through(p, q).unwrap();
            assert!(rebuilt.approx_eq(l) || {
                // a huge arc may round-trip as the diameter it hugs
                let (e1, _) = l.ideal_endpoints();
                rebuilt.euclid_offset(e1) <= 1e-6
            });
        }
    }

    #[test]
    fn gyro_distance_vanishes_on_the_line() {
        let a = pt(0.31, -0.2);
        let b = pt(-0.1, 0.44);
        let l = Gyroline::through(a, b).unwrap();
        assert!(l.gyro_distance(a).unwrap() <= 1e-12);
        let off = pt(0.31, 0.3);
        let d = l.gyro_distance(off).unwrap();
        assert!(d > 0.0);
        // the distance never exceeds the distance to any particular
        // point of the line
        let to_a = mobius::hyp_distance(off, a).unwrap().v();
        assert!(d <= to_a + 1e-15);
    }
}
