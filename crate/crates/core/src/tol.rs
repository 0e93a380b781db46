//! Pinned tolerances.
//!
//! Every default used by the library and the test suite lives here, so the
//! meaning of "close enough" is fixed in one place.  Scale-dependent bounds
//! state their scaling next to the constant; callers multiply by `s` or `s^2`
//! as noted.

/// Gyro-algebraic identities at unit scale, operands within radius 0.95.
pub const ALGEBRAIC: f64 = 1e-12;

/// Modulus of a gyration away from 1.
pub const GYR_UNIT_MODULUS: f64 = 1e-14;

/// Symmetry of the gyrometric, relative.
pub const DISTANCE_SYMMETRY: f64 = 1e-15;

/// Point-on-gyroline incidence, scales with `s`.
pub const INCIDENCE: f64 = 1e-9;

/// Minimum gyrodistance between a transversal and each vertex when
/// generating configurations, scales with `s`.
pub const VERTEX_GUARD: f64 = 1e-6;

/// Evaluators refuse a transversal only when it passes through a vertex
/// to within this (times `s`): the cut ratios turn into 0/0 there.
/// Far looser than [`VERTEX_GUARD`]: hand-authored or embedded
/// configurations may legitimately run much closer than a generator
/// would ever produce.
pub const EVAL_VERTEX_GUARD: f64 = 1e-12;

/// Collinearity of a point set, relative: gyrodistance to the line
/// through the two most-separated points, over their separation.
pub const COLLINEAR: f64 = 1e-9;

/// Deviation bound for ratio products on configurations within radius 0.9 s.
pub const VERIFY: f64 = 1e-9;

/// Deviation bound when configurations reach radius 0.99 s.
pub const STRESS: f64 = 1e-6;

/// Treat the cross product of two unit chords as zero below this, which
/// sends the gyroline through a diameter rather than an enormous arc.
pub const DIAMETER_CROSS: f64 = 1e-12;

/// Orthogonality defect `| |c|^2 - r^2 - s^2 |` of an arc, scales with `s^2`.
pub const ORTHOGONALITY: f64 = 1e-10;

/// Two points are the same point below this, scales with `s`.
pub const POINT_EQ: f64 = 1e-12;

/// Telescoping identity linking the quadrilateral product to the two
/// triangle products through the auxiliary point.
pub const TELESCOPING: f64 = 1e-12;

/// Agreement of the closed form of `f` with its gamma-ratio form.
pub const RATIO_FORMS: f64 = 1e-12;

/// Residual of the difference identity for `f`.
pub const DIFF_IDENTITY: f64 = 1e-13;

/// Invariance of products under disc rotations.
pub const ISOMETRY: f64 = 1e-10;

/// Euclidean deviation required at the largest ball of the limit sweep.
pub const LIMIT_FINAL: f64 = 1e-7;

/// The limit sweep must fit a log-log slope in `-2 +- LIMIT_SLOPE_TOL`.
pub const LIMIT_SLOPE: f64 = -2.0;
pub const LIMIT_SLOPE_TOL: f64 = 0.2;
