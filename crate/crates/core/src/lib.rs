//! Mobius gyrovector geometry in the Poincare s-ball.
//!
//! The disc of radius `s` carries a gyrocommutative group operation
//! (Mobius addition), a scalar multiplication, and a metric whose geodesics
//! are diameters and circular arcs orthogonal to the boundary.  On top of
//! that structure this crate evaluates Menelaus-type gyroratio products for
//! triangles and quadrilaterals cut by a transversal gyroline, checks the
//! converse statement by recovering a fourth intersection point from the
//! other three, and verifies that every product collapses to its Euclidean
//! counterpart as `s` grows.
//!
//! Entry points:
//!
//! * [`mobius`]: points, Mobius addition, gyrations, scalar product, the
//!   gyrometric and its gamma correction.
//! * [`gyroline`]: geodesic construction, incidence, intersection and
//!   point-to-gyroline distance.
//! * [`menelaus`]: ratio products for the four theorem families `T2`, `T3`,
//!   `T4` (converse) and `T5` (transversal).
//! * [`limit`]: the Euclidean limit sweep over growing `s`.
//! * [`gen`]: seeded random configurations that avoid degeneracies.
//! * [`scene`]: a small text format for declaring figures and assertions.

pub mod error;
pub mod gen;
pub mod gyroline;
pub mod limit;
pub mod menelaus;
pub mod mobius;
pub mod scene;
pub mod tol;

pub use error::{Error, Result};
pub use gyroline::Gyroline;
pub use mobius::{BallParam, DiscPoint};
