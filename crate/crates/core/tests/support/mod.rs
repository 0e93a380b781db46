//! Shared helpers for the integration tests.

#![allow(dead_code)]

pub mod hp;

use gyrodisc::mobius::{BallParam, DiscPoint};

pub fn pt(re: f64, im: f64) -> DiscPoint {
    DiscPoint::new(re, im, BallParam::unit()).unwrap()
}

pub fn ball_pt(re: f64, im: f64, s: f64) -> DiscPoint {
    DiscPoint::new(re, im, BallParam::new(s).unwrap()).unwrap()
}
