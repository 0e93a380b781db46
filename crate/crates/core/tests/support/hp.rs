//! 512-bit reference arithmetic (astro-float) used to pin expected values.
//!
//! Everything here reimplements the library's formulas over big floats so
//! that the f64 results can be compared against answers whose rounding
//! error is far below 1e-100.  Carriers and intersections use the same
//! closed forms as the library (orthogonal-circle Cramer solve, radical
//! line through the origin, root product s^2), so agreement checks
//! exercise the whole geometric pipeline and not just the algebra.

use std::cell::RefCell;

use astro_float::{BigFloat, Consts, RoundingMode};
use num_complex::Complex64;

pub const PREC: usize = 512;
const RM: RoundingMode = RoundingMode::ToEven;

pub fn num(v: f64) -> BigFloat {
    BigFloat::from_f64(v, PREC)
}

pub fn add(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.add(b, PREC, RM)
}

pub fn sub(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.sub(b, PREC, RM)
}

pub fn mul(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.mul(b, PREC, RM)
}

pub fn div(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.div(b, PREC, RM)
}

pub fn sqrt(a: &BigFloat) -> BigFloat {
    a.sqrt(PREC, RM)
}

/// Round to the nearest f64 by printing the full decimal expansion and
/// letting the standard parser do the final rounding.
pub fn to_f64(a: &BigFloat) -> f64 {
    format!("{a}").parse().expect("finite big float")
}

/// Complex number with big-float parts.
#[derive(Clone, Debug)]
pub struct Cx {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Cx {
    pub fn new(re: f64, im: f64) -> Self {
        Cx { re: num(re), im: num(im) }
    }

    pub fn from_c64(z: Complex64) -> Self {
        Cx::new(z.re, z.im)
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }

    pub fn add(&self, o: &Cx) -> Cx {
        Cx { re: add(&self.re, &o.re), im: add(&self.im, &o.im) }
    }

    pub fn sub(&self, o: &Cx) -> Cx {
        Cx { re: sub(&self.re, &o.re), im: sub(&self.im, &o.im) }
    }

    pub fn mul(&self, o: &Cx) -> Cx {
        Cx {
            re: sub(&mul(&self.re, &o.re), &mul(&self.im, &o.im)),
            im: add(&mul(&self.re, &o.im), &mul(&self.im, &o.re)),
        }
    }

    pub fn div(&self, o: &Cx) -> Cx {
        let d = o.norm_sqr();
        let n = self.mul(&o.conj());
        Cx { re: div(&n.re, &d), im: div(&n.im, &d) }
    }

    pub fn conj(&self) -> Cx {
        Cx { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn neg(&self) -> Cx {
        Cx { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn scale(&self, k: &BigFloat) -> Cx {
        Cx { re: mul(&self.re, k), im: mul(&self.im, k) }
    }

    pub fn norm_sqr(&self) -> BigFloat {
        add(&mul(&self.re, &self.re), &mul(&self.im, &self.im))
    }

    pub fn abs(&self) -> BigFloat {
        sqrt(&self.norm_sqr())
    }

    /// re * o.re + im * o.im
    pub fn dot(&self, o: &Cx) -> BigFloat {
        add(&mul(&self.re, &o.re), &mul(&self.im, &o.im))
    }

    /// re * o.im - im * o.re
    pub fn cross(&self, o: &Cx) -> BigFloat {
        sub(&mul(&self.re, &o.im), &mul(&self.im, &o.re))
    }
}

fn one() -> BigFloat {
    num(1.0)
}

/// a (+) b on the s-ball.
pub fn mobius_add(a: &Cx, b: &Cx, s: f64) -> Cx {
    let sv = Cx::new(s, 0.0);
    let au = a.div(&sv);
    let bu = b.div(&sv);
    let n = au.add(&bu);
    let d = Cx::new(1.0, 0.0).add(&au.conj().mul(&bu));
    n.div(&d).mul(&sv)
}

/// gyr[a, b] = (1 + a conj(b)) / (1 + conj(a) b) in unit coordinates.
pub fn gyr(a: &Cx, b: &Cx, s: f64) -> Cx {
    let sv = Cx::new(s, 0.0);
    let au = a.div(&sv);
    let bu = b.div(&sv);
    let w = Cx::new(1.0, 0.0).add(&au.mul(&bu.conj()));
    w.div(&w.conj())
}

/// Gyrodistance s |au - bu| / |1 - conj(au) bu|.
pub fn gyrodistance(a: &Cx, b: &Cx, s: f64) -> BigFloat {
    let sv = Cx::new(s, 0.0);
    let au = a.div(&sv);
    let bu = b.div(&sv);
    let w = au.sub(&bu).div(&Cx::new(1.0, 0.0).sub(&au.conj().mul(&bu)));
    mul(&num(s), &w.abs())
}

/// v / (1 - (v/s)^2)
pub fn gamma(v: &BigFloat, s: f64) -> BigFloat {
    let m = div(v, &num(s));
    div(v, &sub(&one(), &mul(&m, &m)))
}

/// f(x) = x (1 - b^2) / ((b - x)(1 - b x)) on the unit chart.
pub fn f_eval(x: &BigFloat, b: &BigFloat) -> BigFloat {
    let n = mul(x, &sub(&one(), &mul(b, b)));
    let d = mul(&sub(b, x), &sub(&one(), &mul(b, x)));
    div(&n, &d)
}

/// Carrier of the geodesic, as in the library: a diameter direction or
/// the center of a boundary-orthogonal circle (radius is implied by
/// |c|^2 = r^2 + s^2 and never needed explicitly here).
pub enum Carrier {
    Diameter { dir: Cx },
    Arc { center: Cx },
}

pub fn carrier_through(a: &Cx, b: &Cx, s: f64) -> Carrier {
    let cross = a.cross(b);
    if to_f64(&cross) == 0.0 {
        let d = if to_f64(&a.norm_sqr()) == 0.0 { b } else { a };
        let dir = d.scale(&div(&one(), &d.abs()));
        return Carrier::Diameter { dir };
    }
    let s2 = num(s * s);
    let p = add(&s2, &a.norm_sqr());
    let q = add(&s2, &b.norm_sqr());
    let inv = div(&one(), &mul(&num(2.0), &cross));
    let center = Cx {
        re: mul(&sub(&mul(&p, &b.im), &mul(&q, &a.im)), &inv),
        im: mul(&sub(&mul(&q, &a.re), &mul(&p, &b.re)), &inv),
    };
    Carrier::Arc { center }
}

/// The intersection point inside the ball.
///
/// Both carriers pass the radical-line test through the origin, so the
/// cut lies on a diameter direction u with t^2 - 2 R t + s^2 = 0,
/// R = <c, u>; the interior root is s^2 over the exterior one.
pub fn interior_intersection(l1: &Carrier, l2: &Carrier, s: f64) -> Cx {
    let (u, c) = match (l1, l2) {
        (Carrier::Arc { center: c1 }, Carrier::Arc { center: c2 }) => {
            let d = c1.sub(c2);
            let u = Cx { re: d.im.neg(), im: d.re.clone() };
            (u.scale(&div(&one(), &u.abs())), c1.clone())
        }
        (Carrier::Diameter { dir }, Carrier::Arc { center })
        | (Carrier::Arc { center }, Carrier::Diameter { dir }) => (dir.clone(), center.clone()),
        (Carrier::Diameter { .. }, Carrier::Diameter { .. }) => return Cx::new(0.0, 0.0),
    };
    let r = c.dot(&u);
    let s2 = num(s * s);
    let disc = sqrt(&sub(&mul(&r, &r), &s2));
    let big = if to_f64(&r) >= 0.0 { add(&r, &disc) } else { sub(&r, &disc) };
    u.scale(&div(&s2, &big))
}

/// Unsigned Menelaus product over the cyclic sides of `vertices` for the
/// transversal through `p1`, `p2`; also returns the cut points in side
/// order.
pub fn menelaus_product(vertices: &[Cx], p1: &Cx, p2: &Cx, s: f64) -> (BigFloat, Vec<Cx>) {
    let line = carrier_through(p1, p2, s);
    let mut product = one();
    let mut cuts = Vec::new();
    for i in 0..vertices.len() {
        let u = &vertices[i];
        let v = &vertices[(i + 1) % vertices.len()];
        let side = carrier_through(u, v, s);
        let cut = interior_intersection(&line, &side, s);
        let n = gamma(&gyrodistance(u, &cut, s), s);
        let d = gamma(&gyrodistance(v, &cut, s), s);
        product = mul(&product, &div(&n, &d));
        cuts.push(cut);
    }
    (product, cuts)
}

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

pub fn atanh(a: &BigFloat) -> BigFloat {
    CONSTS.with(|cc| a.atanh(PREC, RM, &mut cc.borrow_mut()))
}

pub fn tanh(a: &BigFloat) -> BigFloat {
    CONSTS.with(|cc| a.tanh(PREC, RM, &mut cc.borrow_mut()))
}

/// r (x) a = s tanh(r artanh(|a|/s)) a/|a|.
pub fn scalar_mul(r: f64, a: &Cx, s: f64) -> Cx {
    let m = div(&a.abs(), &num(s));
    let t = tanh(&mul(&num(r), &atanh(&m)));
    a.scale(&div(&t, &m))
}
