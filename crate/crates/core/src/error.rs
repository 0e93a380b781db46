use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong outside of scene parsing, which reports
/// positioned diagnostics through [`crate::scene::Diagnostic`] instead.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("ball parameter must be positive and finite, got {0}")]
    InvalidBall(f64),

    #[error("point ({re}, {im}) does not lie strictly inside the ball of radius {s}")]
    OutsideBall { re: f64, im: f64, s: f64 },

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("mismatched ball parameters {0} and {1}")]
    BallMismatch(f64, f64),

    #[error("gamma correction needs 0 <= v < s, got v = {v} with s = {s}")]
    GammaDomain { v: f64, s: f64 },

    #[error("points coincide, no unique gyroline through them")]
    CoincidentPoints,

    #[error("gyrolines coincide, intersection is not a single point")]
    IdenticalGyrolines,

    #[error("collinearity needs at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("points are not collinear, worst offset {max_offset:.3e}")]
    NotCollinear { max_offset: f64 },

    #[error("transversal passes within {guard:e} of vertex {label}")]
    VertexTooClose { label: String, guard: f64 },

    #[error("transversal does not meet side {side} inside the ball")]
    NonTransversal { side: String },

    #[error("point {label} is off the transversal by {offset:.3e}")]
    OffLine { label: String, offset: f64 },

    #[error("the gyroratio equation has no solution on the line for rho = {rho}")]
    RatioUnsolvable { rho: f64 },

    #[error("generator gave up after {draws} draws; rejections: {histogram}")]
    GeneratorExhausted { draws: u32, histogram: String },

    #[error("scene setup: {0}")]
    SceneSetup(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
