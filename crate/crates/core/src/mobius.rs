//! Mobius gyrovector arithmetic on the open s-ball.
//!
//! Formulas are stated on the unit disc.  A point of a ball of radius `s`
//! is divided by `s` on the way into a formula and multiplied by `s` on
//! the way out, so there is a single code path and rescaling between
//! balls is exactly linear.

use num_complex::Complex64;
use serde::{Serialize, Serializer};
use std::fmt;

use crate::error::{Error, Result};
use crate::tol;

/// Radius of the ball carrying the gyrovector structure.
///
/// Two points interoperate only when their `BallParam`s compare equal as
/// floats; mixing scales is always a caller bug, never silently coerced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallParam(f64);

impl BallParam {
    pub fn new(s: f64) -> Result<Self> {
        if s.is_finite() && s > 0.0 {
            Ok(Self(s))
        } else {
            Err(Error::InvalidBall(s))
        }
    }

    /// The Poincare disc itself, s = 1.
    pub const fn unit() -> Self {
        Self(1.0)
    }

    pub fn s(self) -> f64 {
        self.0
    }

    pub(crate) fn matched(self, other: Self) -> Result<Self> {
        if self.0 == other.0 {
            Ok(self)
        } else {
            Err(Error::BallMismatch(self.0, other.0))
        }
    }
}

impl Default for BallParam {
    fn default() -> Self {
        Self::unit()
    }
}

/// A point strictly inside the s-ball, stored as one complex scalar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPoint {
    z: Complex64,
    ball: BallParam,
}

impl DiscPoint {
    pub fn new(re: f64, im: f64, ball: BallParam) -> Result<Self> {
        Self::from_complex(Complex64::new(re, im), ball)
    }

    pub fn from_complex(z: Complex64, ball: BallParam) -> Result<Self> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite("point coordinate"));
        }
        if z.norm_sqr() >= ball.s() * ball.s() {
            return Err(Error::OutsideBall {
                re: z.re,
                im: z.im,
                s: ball.s(),
            });
        }
        Ok(Self { z, ball })
    }

    pub fn origin(ball: BallParam) -> Self {
        Self {
            z: Complex64::new(0.0, 0.0),
            ball,
        }
    }

    /// Construction that skips the membership check, for results of maps
    /// that cannot leave the ball by more than a rounding ulp (negation,
    /// rotation, rescaling).
    pub(crate) fn raw(z: Complex64, ball: BallParam) -> Self {
        Self { z, ball }
    }

    pub fn re(self) -> f64 {
        self.z.re
    }

    pub fn im(self) -> f64 {
        self.z.im
    }

    pub fn complex(self) -> Complex64 {
        self.z
    }

    pub fn ball(self) -> BallParam {
        self.ball
    }

    pub fn norm(self) -> f64 {
        self.z.norm()
    }

    /// Coordinates mapped to the unit disc.
    pub(crate) fn unit(self) -> Complex64 {
        self.z / self.ball.s()
    }

    /// Same point, equality thresholded at 1e-12 times the ball radius.
    pub fn approx_eq(self, other: Self) -> bool {
        self.ball == other.ball && (self.z - other.z).norm() <= tol::POINT_EQ * self.ball.s()
    }

    /// Rotation about the origin, an isometry of the ball.
    pub fn rotated(self, phi: f64) -> Self {
        Self::raw(self.z * Complex64::from_polar(1.0, phi), self.ball)
    }
}

impl fmt::Display for DiscPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.z.re, self.z.im)
    }
}

impl Serialize for DiscPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.z.re, self.z.im].serialize(serializer)
    }
}

/// The unimodular factor gyr[a, b] acting on the disc by multiplication.
#[derive(Debug, Clone, Copy)]
pub struct GyrationFactor {
    u: Complex64,
}

impl GyrationFactor {
    pub fn as_complex(self) -> Complex64 {
        self.u
    }

    /// How far the modulus strays from 1; zero up to rounding.
    pub fn unit_defect(self) -> f64 {
        (self.u.norm() - 1.0).abs()
    }

    /// Apply the gyration to a point of the same ball.
    pub fn apply(self, p: DiscPoint) -> DiscPoint {
        DiscPoint::raw(p.z * self.u / self.u.norm(), p.ball)
    }
}

/// A hyperbolic length v together with its gamma correction
/// v_gamma = v / (1 - v^2/s^2).
#[derive(Debug, Clone, Copy)]
pub struct GammaLength {
    v: f64,
    v_gamma: f64,
    ball: BallParam,
}

impl GammaLength {
    pub fn v(self) -> f64 {
        self.v
    }

    pub fn v_gamma(self) -> f64 {
        self.v_gamma
    }

    pub fn ball(self) -> BallParam {
        self.ball
    }
}

/// Mobius addition a (+) b = (a + b) / (1 + conj(a) b), scaled to the ball.
pub fn mobius_add(a: DiscPoint, b: DiscPoint) -> Result<DiscPoint> {
    let ball = a.ball.matched(b.ball)?;
    let (au, bu) = (a.unit(), b.unit());
    let w = (au + bu) / (Complex64::new(1.0, 0.0) + au.conj() * bu);
    DiscPoint::from_complex(w * ball.s(), ball)
}

/// The gyrogroup inverse; plain complex negation.
pub fn mobius_neg(a: DiscPoint) -> DiscPoint {
    DiscPoint::raw(-a.z, a.ball)
}

/// a (-) b = a (+) (-b).
pub fn mobius_sub(a: DiscPoint, b: DiscPoint) -> Result<DiscPoint> {
    mobius_add(a, mobius_neg(b))
}

/// The gyrovector from a to b, (-a) (+) b.  Not the same point as
/// b (-) a: addition is non-commutative, and the two differ by a
/// gyration.  Segment directions and side charts all use this form.
pub fn mobius_left_sub(a: DiscPoint, b: DiscPoint) -> Result<DiscPoint> {
    mobius_add(mobius_neg(a), b)
}

/// gyr[a, b] = (1 + a conj(b)) / (1 + conj(a) b), the rotation that
/// restores commutativity: a (+) b = gyr[a, b] (b (+) a).
pub fn gyr(a: DiscPoint, b: DiscPoint) -> Result<GyrationFactor> {
    a.ball.matched(b.ball)?;
    let (au, bu) = (a.unit(), b.unit());
    let w = Complex64::new(1.0, 0.0) + au * bu.conj();
    Ok(GyrationFactor { u: w / w.conj() })
}

/// r (x) a = s tanh(r artanh(|a|/s)) a/|a|, the standard Mobius scalar
/// multiplication; 0 for a = 0.
pub fn mobius_scalar_mul(r: f64, a: DiscPoint) -> Result<DiscPoint> {
    if !r.is_finite() {
        return Err(Error::NonFinite("scalar factor"));
    }
    let m = a.z.norm() / a.ball.s();
    if m == 0.0 {
        return Ok(DiscPoint::origin(a.ball));
    }
    let t = (r * m.atanh()).tanh();
    DiscPoint::from_complex(a.z * (t / m), a.ball)
}

/// Gyrodistance d(a, b) = |a (-) b| with its gamma correction.
pub fn hyp_distance(a: DiscPoint, b: DiscPoint) -> Result<GammaLength> {
    let ball = a.ball.matched(b.ball)?;
    let (au, bu) = (a.unit(), b.unit());
    let w = (au - bu) / (Complex64::new(1.0, 0.0) - au.conj() * bu);
    gamma_correct(ball.s() * w.norm(), ball)
}

/// v_gamma = v / (1 - v^2/s^2) for a length v in [0, s).
pub fn gamma_correct(v: f64, ball: BallParam) -> Result<GammaLength> {
    if !v.is_finite() {
        return Err(Error::NonFinite("length"));
    }
    let s = ball.s();
    if !(0.0..s).contains(&v) {
        return Err(Error::GammaDomain { v, s });
    }
    let m = v / s;
    Ok(GammaLength {
        v,
        v_gamma: v / (1.0 - m * m),
        ball,
    })
}

/// Move a point to a ball of a different radius, preserving |z|/s.
pub fn rescale(p: DiscPoint, target: BallParam) -> DiscPoint {
    DiscPoint::raw(p.z * (target.s() / p.ball.s()), target)
}

/// The gyromidpoint a (+) ((-a (+) b) (x) 1/2).
pub fn mobius_midpoint(a: DiscPoint, b: DiscPoint) -> Result<DiscPoint> {
    mobius_add(a, mobius_scalar_mul(0.5, mobius_left_sub(a, b)?)?)
}
