//! Python bindings for `vrbound`.

use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ::vrbound::bounds as b;
use ::vrbound::extremal::{self, DiscreteOptions};
use ::vrbound::hyp3 as h;
use ::vrbound::surface::{self as s};

create_exception!(vrbound, VrboundError, PyValueError);

fn err(e: impl std::fmt::Display) -> PyErr {
    VrboundError::new_err(e.to_string())
}

fn options(tol: f64) -> PyResult<DiscreteOptions> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(err(format!("tol must lie in (0, 1), got {tol}")));
    }
    Ok(DiscreteOptions::with_tol(tol))
}

/// A surface model with named curves.
#[pyclass(name = "Surface", module = "vrbound", frozen)]
struct PySurface {
    inner: s::Surface,
}

#[pymethods]
impl PySurface {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: s::Surface::from_json_bytes(text.as_bytes()).map_err(err)? })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(Self { inner: s::load_surface(path).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json_string()
    }

    #[getter]
    fn genus(&self) -> u32 {
        self.inner.genus
    }

    #[getter]
    fn model(&self) -> &'static str {
        self.inner.kind().as_str()
    }

    #[getter]
    fn curve_names(&self) -> Vec<String> {
        self.inner.curves.iter().map(|c| c.name.clone()).collect()
    }

    fn __repr__(&self) -> String {
        format!("Surface(genus={}, model={:?}, curves={})", self.inner.genus, self.model(), self.inner.curves.len())
    }
}

/// Interval containing the extremal length of a curve.
#[pyclass(name = "ElEstimate", module = "vrbound", frozen, get_all)]
struct PyElEstimate {
    lower: f64,
    upper: f64,
    lower_method: String,
    upper_method: String,
}

impl From<extremal::ElEstimate> for PyElEstimate {
    fn from(e: extremal::ElEstimate) -> Self {
        Self {
            lower: e.lower,
            upper: e.upper,
            lower_method: format!("{:?}", e.lower_method),
            upper_method: format!("{:?}", e.upper_method),
        }
    }
}

#[pymethods]
impl PyElEstimate {
    fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    fn __repr__(&self) -> String {
        format!("ElEstimate([{}, {}], {}/{})", self.lower, self.upper, self.lower_method, self.upper_method)
    }
}

fn named<'a>(surface: &'a PySurface, curve: &str) -> PyResult<&'a s::CurveClass> {
    surface.inner.curve(curve).ok_or_else(|| err(format!("no curve named {curve:?}")))
}

/// Best extremal-length interval for one named curve.
#[pyfunction]
#[pyo3(signature = (surface, curve, tol = 1e-3))]
fn estimate_curve(py: Python<'_>, surface: &PySurface, curve: &str, tol: f64) -> PyResult<PyElEstimate> {
    let c = named(surface, curve)?;
    let opts = options(tol)?;
    let e = py.detach(|| extremal::estimate_curve(&surface.inner, c, &opts)).map_err(err)?;
    Ok(e.into())
}

/// Discrete cutting-plane solver on a mesh; returns the interval and
/// whether the tolerance was reached.
#[pyfunction]
#[pyo3(signature = (surface, curve, tol = 1e-3))]
fn el_discrete(py: Python<'_>, surface: &PySurface, curve: &str, tol: f64) -> PyResult<(PyElEstimate, bool)> {
    let c = named(surface, curve)?;
    let opts = options(tol)?;
    match py.detach(|| extremal::el_discrete(&surface.inner, c, &opts)) {
        Ok(r) => Ok((r.estimate.into(), true)),
        Err(extremal::ElError::NonconvergenceWithinBudget { best }) => Ok((best.estimate.into(), false)),
        Err(e) => Err(err(e)),
    }
}

/// Full bound report as a JSON string.
#[pyfunction]
#[pyo3(signature = (surface, budget = 1000, tol = 1e-3, bending = None))]
fn evaluate(py: Python<'_>, surface: &PySurface, budget: usize, tol: f64, bending: Option<f64>) -> PyResult<String> {
    let opts = options(tol)?;
    let bending = bending.map(b::BendingHypothesis::new).transpose().map_err(err)?;
    let r = py.detach(|| ::vrbound::report::evaluate(&surface.inner, budget, opts, bending)).map_err(err)?;
    Ok(r.to_json())
}

/// Verdict name and threshold for an upper bound on the combined length.
#[pyfunction]
fn certify(length_upper: f64, g: u32) -> PyResult<(String, f64, Option<String>)> {
    let c = b::certify(length_upper, g).map_err(err)?;
    let route = c.route.map(|r| serde_json::to_value(r).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default());
    Ok((c.verdict.as_str().to_owned(), c.threshold, route))
}

#[pyfunction]
fn pk_max(k: f64) -> PyResult<(f64, f64)> {
    b::pk_max(k).map_err(err)
}

#[pyfunction]
fn vr_bound_poly(l: f64, g: u32, total_bending: f64) -> PyResult<f64> {
    let bend = b::BendingHypothesis::new(total_bending).map_err(err)?;
    b::vr_bound_poly(l, g, &bend).map_err(err)
}

#[pyfunction]
fn vr_bound_genus(l: f64, g: u32) -> PyResult<f64> {
    b::vr_bound_genus(l, g).map_err(err)
}

#[pyfunction]
fn vr_bound_small_l(l: f64, g: u32) -> PyResult<(f64, bool)> {
    let f = b::vr_bound_small_l(l, g).map_err(err)?;
    Ok((f.value, f.valid))
}

#[pyfunction]
fn vr_bound_genus2(l: f64) -> PyResult<(f64, bool)> {
    let f = b::vr_bound_genus2(l).map_err(err)?;
    Ok((f.value, f.valid))
}

#[pyfunction]
fn convex_core_bound(thurston_lengths: Vec<f64>, g: u32) -> PyResult<f64> {
    b::convex_core_bound(&b::ConvexCoreInput { thurston_lengths }, g).map_err(err)
}

/// Point of hyperbolic 3-space in the hyperboloid model.
#[pyclass(name = "PointH3", module = "vrbound", frozen, from_py_object)]
#[derive(Clone)]
struct PyPoint {
    inner: h::PointH3,
}

#[pymethods]
impl PyPoint {
    #[new]
    fn new(coords: [f64; 4]) -> PyResult<Self> {
        Ok(Self { inner: h::PointH3::new(coords).map_err(err)? })
    }

    #[staticmethod]
    fn origin() -> Self {
        Self { inner: h::PointH3::origin() }
    }

    #[staticmethod]
    fn from_polar(r: f64, direction: [f64; 3]) -> Self {
        Self { inner: h::PointH3::from_polar(r, direction) }
    }

    #[getter]
    fn coords(&self) -> [f64; 4] {
        *self.inner.coords()
    }

    fn __repr__(&self) -> String {
        format!("PointH3({:?})", self.inner.coords())
    }
}

#[pyfunction]
fn h3_distance(p: &PyPoint, q: &PyPoint) -> f64 {
    h::h3_distance(&p.inner, &q.inner)
}

#[pyfunction]
fn h3_angle(at: &PyPoint, q: &PyPoint, r: &PyPoint) -> PyResult<f64> {
    h::h3_angle(&at.inner, &q.inner, &r.inner).map_err(err)
}

#[pyfunction]
fn triangle_area(alpha: f64, beta: f64, gamma: f64) -> PyResult<f64> {
    h::triangle_area(alpha, beta, gamma).map_err(err)
}

/// `(disk_area, exterior_angle_sum, lemma_slack)` of a planar convex polygon.
#[pyfunction]
fn polygon_report(vertices: Vec<PyPoint>) -> PyResult<(f64, f64, f64)> {
    let poly = h::GeodesicPolygon::new(vertices.into_iter().map(|p| p.inner).collect()).map_err(err)?;
    let r = h::polygon_report(&poly).map_err(err)?;
    Ok((r.disk_area, r.exterior_angle_sum, r.lemma_slack))
}

/// Vertices of the regular `k`-gon with circumradius `r` in the plane `x3 = 0`.
#[pyfunction]
fn regular_polygon(k: usize, r: f64) -> Vec<PyPoint> {
    h::regular_polygon(k, r).vertices.into_iter().map(|inner| PyPoint { inner }).collect()
}

/// `(exterior_sum, total_curvature, disk_area, lemma_gap)`.
#[pyfunction]
fn circle_bending_check(r: f64, k: usize) -> PyResult<(f64, f64, f64, f64)> {
    let c = h::circle_bending_check(r, k).map_err(err)?;
    Ok((c.exterior_sum, c.total_curvature, c.disk_area, c.lemma_gap))
}

/// `(volume, area, ratio)` of the round ball.
#[pyfunction]
fn ball_isoperimetric(r: f64) -> PyResult<(f64, f64, f64)> {
    let b = h::ball_isoperimetric(r).map_err(err)?;
    Ok((b.volume, b.area, b.ratio))
}

/// Exact `(x_n, d_n)`.
#[pyfunction]
fn cover_counts(g: u32, n: u32) -> PyResult<(BigUint, BigUint)> {
    let c = h::cover_counts(g, n).map_err(err)?;
    Ok((c.x, c.d))
}

#[pyfunction]
fn volume_bound_family(g: u32, disk_areas: Vec<f64>, k: u32) -> PyResult<f64> {
    h::volume_bound_family(g, &disk_areas, k).map_err(err)
}

#[pyfunction]
fn boundary_area(g: u32, disk_areas: Vec<f64>) -> PyResult<f64> {
    h::boundary_area(g, &disk_areas).map_err(err)
}

/// Lemma suite as a JSON string.
#[pyfunction]
#[pyo3(signature = (seed = 0))]
fn verify_lemmas(py: Python<'_>, seed: u64) -> String {
    py.detach(|| ::vrbound::lemmas::verify_lemmas(seed).to_json())
}

#[pymodule]
#[pyo3(name = "vrbound")]
fn vrbound_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("VrboundError", m.py().get_type::<VrboundError>())?;
    m.add_class::<PySurface>()?;
    m.add_class::<PyElEstimate>()?;
    m.add_class::<PyPoint>()?;
    m.add_function(wrap_pyfunction!(estimate_curve, m)?)?;
    m.add_function(wrap_pyfunction!(el_discrete, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(pk_max, m)?)?;
    m.add_function(wrap_pyfunction!(vr_bound_poly, m)?)?;
    m.add_function(wrap_pyfunction!(vr_bound_genus, m)?)?;
    m.add_function(wrap_pyfunction!(vr_bound_small_l, m)?)?;
    m.add_function(wrap_pyfunction!(vr_bound_genus2, m)?)?;
    m.add_function(wrap_pyfunction!(convex_core_bound, m)?)?;
    m.add_function(wrap_pyfunction!(h3_distance, m)?)?;
    m.add_function(wrap_pyfunction!(h3_angle, m)?)?;
    m.add_function(wrap_pyfunction!(triangle_area, m)?)?;
    m.add_function(wrap_pyfunction!(polygon_report, m)?)?;
    m.add_function(wrap_pyfunction!(regular_polygon, m)?)?;
    m.add_function(wrap_pyfunction!(circle_bending_check, m)?)?;
    m.add_function(wrap_pyfunction!(ball_isoperimetric, m)?)?;
    m.add_function(wrap_pyfunction!(cover_counts, m)?)?;
    m.add_function(wrap_pyfunction!(volume_bound_family, m)?)?;
    m.add_function(wrap_pyfunction!(boundary_area, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lemmas, m)?)?;
    Ok(())
}
