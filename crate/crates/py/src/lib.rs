//! Python bindings for the gyrodisc crate.
//!
//! Points cross the boundary as Python complex numbers; every function
//! takes the ball radius as a trailing `s` argument defaulting to the
//! unit disc.  Reports come back as plain dicts mirroring the JSON
//! schema of the CLI (points inside reports are `[re, im]` pairs).
//! All domain errors raise `ValueError`.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use gyrodisc::gen::{self, GenPolicy};
use gyrodisc::gyroline::{self, Carrier};
use gyrodisc::limit;
use gyrodisc::menelaus::{self, QuadConfig, TriangleConfig};
use gyrodisc::mobius::{self, BallParam, DiscPoint};
use gyrodisc::scene;

fn err(e: gyrodisc::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn ball(s: f64) -> PyResult<BallParam> {
    BallParam::new(s).map_err(err)
}

fn point(z: Complex64, b: BallParam) -> PyResult<DiscPoint> {
    DiscPoint::from_complex(z, b).map_err(err)
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    pythonize::pythonize(py, value).map_err(Into::into)
}

/// Mobius addition a (+) b.
#[pyfunction]
#[pyo3(signature = (a, b, s=1.0))]
fn mobius_add(a: Complex64, b: Complex64, s: f64) -> PyResult<Complex64> {
    let bl = ball(s)?;
    Ok(mobius::mobius_add(point(a, bl)?, point(b, bl)?)
        .map_err(err)?
        .complex())
}

/// Mobius difference a (-) b = a (+) (-b).
#[pyfunction]
#[pyo3(signature = (a, b, s=1.0))]
fn mobius_sub(a: Complex64, b: Complex64, s: f64) -> PyResult<Complex64> {
    let bl = ball(s)?;
    Ok(mobius::mobius_sub(point(a, bl)?, point(b, bl)?)
        .map_err(err)?
        .complex())
}

#[pyfunction]
#[pyo3(signature = (a, s=1.0))]
fn mobius_neg(a: Complex64, s: f64) -> PyResult<Complex64> {
    Ok(mobius::mobius_neg(point(a, ball(s)?)?).complex())
}

/// The unimodular gyration factor gyr[a, b] as a complex number.
#[pyfunction]
#[pyo3(signature = (a, b, s=1.0))]
fn gyration(a: Complex64, b: Complex64, s: f64) -> PyResult<Complex64> {
    let bl = ball(s)?;
    Ok(mobius::gyr(point(a, bl)?, point(b, bl)?)
        .map_err(err)?
        .as_complex())
}

/// Scalar product r (x) a.
#[pyfunction]
#[pyo3(signature = (r, a, s=1.0))]
fn scalar_mul(r: f64, a: Complex64, s: f64) -> PyResult<Complex64> {
    Ok(mobius::mobius_scalar_mul(r, point(a, ball(s)?)?)
        .map_err(err)?
        .complex())
}

/// Gyrodistance d(a, b) = s |a (-) b| / s-scaled, in [0, s).
#[pyfunction]
#[pyo3(signature = (a, b, s=1.0))]
fn gyro_distance(a: Complex64, b: Complex64, s: f64) -> PyResult<f64> {
    let bl = ball(s)?;
    Ok(mobius::hyp_distance(point(a, bl)?, point(b, bl)?)
        .map_err(err)?
        .v())
}

/// Gamma correction v / (1 - v^2 / s^2).
#[pyfunction]
#[pyo3(signature = (v, s=1.0))]
fn gamma(v: f64, s: f64) -> PyResult<f64> {
    Ok(mobius::gamma_correct(v, ball(s)?).map_err(err)?.v_gamma())
}

#[pyfunction]
#[pyo3(signature = (points, tol=1e-9, s=1.0))]
fn collinear(points: Vec<Complex64>, tol: f64, s: f64) -> PyResult<bool> {
    let bl = ball(s)?;
    let pts: Vec<DiscPoint> = points
        .into_iter()
        .map(|z| point(z, bl))
        .collect::<PyResult<_>>()?;
    gyroline::collinear(&pts, tol).map_err(err)
}

/// A geodesic of the s-ball through two points.
#[pyclass(frozen)]
struct Gyroline {
    a: DiscPoint,
    b: DiscPoint,
    line: gyroline::Gyroline,
}

impl Gyroline {
    fn wrap(a: DiscPoint, b: DiscPoint) -> PyResult<Self> {
        Ok(Self {
            a,
            b,
            line: gyroline::Gyroline::through(a, b).map_err(err)?,
        })
    }
}

#[pymethods]
impl Gyroline {
    #[new]
    #[pyo3(signature = (a, b, s=1.0))]
    fn new(a: Complex64, b: Complex64, s: f64) -> PyResult<Self> {
        let bl = ball(s)?;
        Gyroline::wrap(point(a, bl)?, point(b, bl)?)
    }

    #[getter]
    fn s(&self) -> f64 {
        self.line.ball().s()
    }

    /// `{"kind": "diameter", "theta": ...}` or
    /// `{"kind": "arc", "center": ..., "radius": ...}`.
    fn carrier<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        match self.line.carrier() {
            Carrier::Diameter { theta } => {
                d.set_item("kind", "diameter")?;
                d.set_item("theta", theta)?;
            }
            Carrier::Arc { center, radius } => {
                d.set_item("kind", "arc")?;
                d.set_item("center", center)?;
                d.set_item("radius", radius)?;
            }
        }
        Ok(d)
    }

    #[pyo3(signature = (p, tol=None))]
    fn contains(&self, p: Complex64, tol: Option<f64>) -> PyResult<bool> {
        let q = point(p, self.line.ball())?;
        self.line
            .contains(q, tol.unwrap_or_else(|| self.line.default_tol()))
            .map_err(err)
    }

    /// Gyrodistance from a point to its nearest point on the line.
    fn gyro_distance(&self, p: Complex64) -> PyResult<f64> {
        self.line
            .gyro_distance(point(p, self.line.ball())?)
            .map_err(err)
    }

    /// Unique interior intersection with another gyroline, or None.
    fn intersect(&self, other: &Gyroline) -> PyResult<Option<Complex64>> {
        Ok(self
            .line
            .intersect(other.line)
            .map_err(err)?
            .map(|p| p.complex()))
    }

    /// The two boundary points the geodesic converges to.
    fn ideal_endpoints(&self) -> (Complex64, Complex64) {
        self.line.ideal_endpoints()
    }

    /// Point at parameter t; 0 and 1 are the defining points.
    fn point_at(&self, t: f64) -> PyResult<Complex64> {
        Ok(gyroline::gyroline_point(self.a, self.b, t)
            .map_err(err)?
            .complex())
    }

    /// Parameter of a point on the line (inverse of `point_at`).
    fn param_of(&self, p: Complex64) -> PyResult<f64> {
        gyroline::segment_param(self.a, self.b, point(p, self.line.ball())?).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Gyroline({}, {}, s={})",
            self.a.complex(),
            self.b.complex(),
            self.line.ball().s()
        )
    }
}

/// Triangle Menelaus report for vertices a, b, c cut by the gyroline
/// through p1 and p2.
#[pyfunction]
#[pyo3(signature = (a, b, c, p1, p2, s=1.0))]
fn triangle_menelaus<'py>(
    py: Python<'py>,
    a: Complex64,
    b: Complex64,
    c: Complex64,
    p1: Complex64,
    p2: Complex64,
    s: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let bl = ball(s)?;
    let cfg = TriangleConfig::new(point(a, bl)?, point(b, bl)?, point(c, bl)?).map_err(err)?;
    let l = gyroline::Gyroline::through(point(p1, bl)?, point(p2, bl)?).map_err(err)?;
    to_py(py, &menelaus::triangle_menelaus(&cfg, l).map_err(err)?)
}

/// Quadrilateral Menelaus report for vertices a, b, c, d.
#[pyfunction]
#[pyo3(signature = (a, b, c, d, p1, p2, s=1.0))]
#[allow(clippy::too_many_arguments)]
fn quad_menelaus<'py>(
    py: Python<'py>,
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    p1: Complex64,
    p2: Complex64,
    s: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let bl = ball(s)?;
    let cfg = QuadConfig::new(
        point(a, bl)?,
        point(b, bl)?,
        point(c, bl)?,
        point(d, bl)?,
    )
    .map_err(err)?;
    let l = gyroline::Gyroline::through(point(p1, bl)?, point(p2, bl)?).map_err(err)?;
    to_py(py, &menelaus::quad_menelaus(&cfg, l).map_err(err)?)
}

/// Transversal report for triangle a, b, c with cevian point d on
/// gyroline bc, cut by the gyroline through p1 and p2.
#[pyfunction]
#[pyo3(signature = (a, b, c, d, p1, p2, s=1.0))]
#[allow(clippy::too_many_arguments)]
fn transversal<'py>(
    py: Python<'py>,
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    p1: Complex64,
    p2: Complex64,
    s: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let bl = ball(s)?;
    let cfg = TriangleConfig::new(point(a, bl)?, point(b, bl)?, point(c, bl)?).map_err(err)?;
    let l = gyroline::Gyroline::through(point(p1, bl)?, point(p2, bl)?).map_err(err)?;
    to_py(
        py,
        &menelaus::transversal_product(&cfg, point(d, bl)?, l).map_err(err)?,
    )
}

/// Recover the BC cut of quad a, b, c, d from the cuts x (on AB),
/// z (on CD) and w (on DA).
#[pyfunction]
#[pyo3(signature = (a, b, c, d, x, z, w, s=1.0))]
#[allow(clippy::too_many_arguments)]
fn converse_check<'py>(
    py: Python<'py>,
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    x: Complex64,
    z: Complex64,
    w: Complex64,
    s: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let bl = ball(s)?;
    let cfg = QuadConfig::new(
        point(a, bl)?,
        point(b, bl)?,
        point(c, bl)?,
        point(d, bl)?,
    )
    .map_err(err)?;
    let out = menelaus::converse_check(&cfg, point(x, bl)?, point(z, bl)?, point(w, bl)?)
        .map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("y", out.y.complex())?;
    d.set_item("y_from_ratio", out.y_from_ratio.complex())?;
    d.set_item("recovery_gap", out.recovery_gap)?;
    d.set_item("report", to_py(py, &out.report)?)?;
    Ok(d)
}

/// The cut-ratio function f(x) = x (1 - b^2) / ((b - x)(1 - bx)).
#[pyfunction]
fn f_eval(x: f64, b: f64) -> PyResult<f64> {
    menelaus::f_eval(x, b).map_err(err)
}

/// Invert f on the branch containing rho.
#[pyfunction]
fn f_inverse(rho: f64, b: f64) -> PyResult<f64> {
    menelaus::f_inverse(rho, b).map_err(err)
}

fn policy(seed: u64, max_radius: f64) -> GenPolicy {
    let mut p = GenPolicy::new(seed);
    p.max_radius = max_radius;
    p
}

fn config_dict<'py>(
    py: Python<'py>,
    named: &[(&str, DiscPoint)],
    l: gyroline::Gyroline,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    for (name, p) in named {
        d.set_item(name, p.complex())?;
    }
    let (p1, p2) = l.sample_points();
    d.set_item("p1", p1.complex())?;
    d.set_item("p2", p2.complex())?;
    Ok(d)
}

/// Seeded random triangle-with-transversal in the unit disc.
#[pyfunction]
#[pyo3(signature = (seed, max_radius=0.9))]
fn gen_triangle(py: Python<'_>, seed: u64, max_radius: f64) -> PyResult<Bound<'_, PyDict>> {
    let (cfg, l) = gen::gen_triangle_transversal(&policy(seed, max_radius)).map_err(err)?;
    config_dict(py, &[("a", cfg.a()), ("b", cfg.b()), ("c", cfg.c())], l)
}

/// Seeded random quadrilateral-with-transversal in the unit disc.
#[pyfunction]
#[pyo3(signature = (seed, max_radius=0.9))]
fn gen_quad(py: Python<'_>, seed: u64, max_radius: f64) -> PyResult<Bound<'_, PyDict>> {
    let (cfg, l) = gen::gen_quad_transversal(&policy(seed, max_radius)).map_err(err)?;
    config_dict(
        py,
        &[("a", cfg.a()), ("b", cfg.b()), ("c", cfg.c()), ("d", cfg.d())],
        l,
    )
}

/// Seeded random cevian configuration in the unit disc.
#[pyfunction]
#[pyo3(signature = (seed, max_radius=0.9))]
fn gen_cevian(py: Python<'_>, seed: u64, max_radius: f64) -> PyResult<Bound<'_, PyDict>> {
    let (cfg, d, l) = gen::gen_cevian_config(&policy(seed, max_radius)).map_err(err)?;
    config_dict(
        py,
        &[("a", cfg.a()), ("b", cfg.b()), ("c", cfg.c()), ("d", d)],
        l,
    )
}

/// Parse and execute a scene text; returns the run as a dict.
#[pyfunction]
fn run_scene<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    let parsed = scene::parse(text).map_err(|diags| {
        let lines: Vec<String> = diags.iter().map(ToString::to_string).collect();
        PyValueError::new_err(lines.join("\n"))
    })?;
    to_py(py, &scene::run_scene(&parsed).map_err(err)?)
}

/// Parse a scene and return its canonical text.
#[pyfunction]
fn scene_canonical(text: &str) -> PyResult<String> {
    let parsed = scene::parse(text).map_err(|diags| {
        let lines: Vec<String> = diags.iter().map(ToString::to_string).collect();
        PyValueError::new_err(lines.join("\n"))
    })?;
    Ok(scene::unparse(&parsed))
}

/// Sweep a fixed figure across growing ball radii; returns rows of
/// (s, gyro_deviation, euclidean_deviation) and the fitted log-log
/// slope of the euclidean column.
#[pyfunction]
fn euclidean_limit_sweep<'py>(
    py: Python<'py>,
    vertices: Vec<Complex64>,
    line: (Complex64, Complex64),
    s_values: Vec<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let rows = limit::euclidean_limit_sweep(&vertices, line, &s_values).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("slope", limit::loglog_slope(&rows))?;
    d.set_item("rows", to_py(py, &rows)?)?;
    Ok(d)
}

#[pymodule]
fn gyrodisc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Gyroline>()?;
    m.add_function(wrap_pyfunction!(mobius_add, m)?)?;
    m.add_function(wrap_pyfunction!(mobius_sub, m)?)?;
    m.add_function(wrap_pyfunction!(mobius_neg, m)?)?;
    m.add_function(wrap_pyfunction!(gyration, m)?)?;
    m.add_function(wrap_pyfunction!(scalar_mul, m)?)?;
    m.add_function(wrap_pyfunction!(gyro_distance, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(collinear, m)?)?;
    m.add_function(wrap_pyfunction!(triangle_menelaus, m)?)?;
    m.add_function(wrap_pyfunction!(quad_menelaus, m)?)?;
    m.add_function(wrap_pyfunction!(transversal, m)?)?;
    m.add_function(wrap_pyfunction!(converse_check, m)?)?;
    m.add_function(wrap_pyfunction!(f_eval, m)?)?;
    m.add_function(wrap_pyfunction!(f_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(gen_triangle, m)?)?;
    m.add_function(wrap_pyfunction!(gen_quad, m)?)?;
    m.add_function(wrap_pyfunction!(gen_cevian, m)?)?;
    m.add_function(wrap_pyfunction!(run_scene, m)?)?;
    m.add_function(wrap_pyfunction!(scene_canonical, m)?)?;
    m.add_function(wrap_pyfunction!(euclidean_limit_sweep, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
