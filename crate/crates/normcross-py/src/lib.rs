//! Python bindings.  Structured results come back as plain dicts and lists
//! with the same shape as the command-line JSON.

use normcross::curves::{self, BoundaryCurveCoords};
use normcross::farey;
use normcross::homology::{two_torsion_framing, Framing, FramingFlavor, Peripheral};
use normcross::invariants::{self, Config, InvariantError};
use normcross::normal::{self, Caps, Cone, CoordSystem, NormalError, DEFAULT_DISC_CAP, DEFAULT_HB_CAP};
use normcross::triangulation;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde::Serialize;
use serde_json::Value;

create_exception!(normcross_py, PreconditionError, PyValueError, "Input fails a precondition.");
create_exception!(normcross_py, EnumerationAborted, PyRuntimeError, "A resource cap was hit during enumeration.");

fn err(e: impl std::fmt::Display, abort: bool) -> PyErr {
    if abort {
        EnumerationAborted::new_err(e.to_string())
    } else {
        PreconditionError::new_err(e.to_string())
    }
}

fn inv_err(e: InvariantError) -> PyErr {
    let abort = e.is_abort();
    err(e, abort)
}

fn normal_err(e: NormalError) -> PyErr {
    let abort = e.is_abort();
    err(e, abort)
}

fn precondition(e: impl std::fmt::Display) -> PyErr {
    err(e, false)
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any().unbind(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any().unbind(),
            (None, Some(u)) => u.into_pyobject(py)?.into_any().unbind(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any().unbind(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any().unbind(),
        Value::Array(xs) => {
            let items = xs.iter().map(|x| to_py(py, x)).collect::<PyResult<Vec<_>>>()?;
            PyList::new(py, items)?.into_any().unbind()
        }
        Value::Object(map) => {
            let d = PyDict::new(py);
            for (k, x) in map {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any().unbind()
        }
    })
}

fn result_to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let v = serde_json::to_value(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    to_py(py, &v)
}

fn system(name: &str) -> PyResult<CoordSystem> {
    name.parse().map_err(PyValueError::new_err)
}

fn config(disc_cap: u64, hb_cap: usize, assume_efficient: bool) -> Config {
    Config { caps: Caps { discs: disc_cap, generators: hb_cap }, check_efficiency: !assume_efficient }
}

fn slope(s: &str) -> PyResult<curves::Slope> {
    s.parse().map_err(precondition)
}

/// A triangulation of a compact 3-manifold.
#[pyclass(frozen, module = "normcross_py")]
struct Triangulation {
    inner: triangulation::Triangulation,
}

#[pymethods]
impl Triangulation {
    /// Parses a gluing-table JSON document or an isomorphism signature.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        triangulation::Triangulation::parse(text).map(|inner| Triangulation { inner }).map_err(precondition)
    }

    #[staticmethod]
    fn from_isosig(sig: &str) -> PyResult<Self> {
        triangulation::Triangulation::from_isosig(sig).map(|inner| Triangulation { inner }).map_err(precondition)
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    /// Knot-exterior checks: orientability, torus boundary, vertex counts.
    fn validate(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        result_to_py(py, &triangulation::validate_knot_exterior(&self.inner))
    }

    /// Normal spheres, projective planes and discs among the vertex surfaces.
    #[pyo3(signature = (disc_cap = DEFAULT_DISC_CAP, hb_cap = DEFAULT_HB_CAP))]
    fn efficiency(&self, py: Python<'_>, disc_cap: u64, hb_cap: usize) -> PyResult<Py<PyAny>> {
        let r = normal::zero_efficiency_check(&self.inner, Caps { discs: disc_cap, generators: hb_cap })
            .map_err(normal_err)?;
        result_to_py(py, &r)
    }

    /// The 2-torsion framing as two `"a/b"` classes.
    fn two_torsion_framing(&self) -> PyResult<(String, String)> {
        let [a, b] = two_torsion_framing(&self.inner).map_err(precondition)?.to_strings();
        Ok((a, b))
    }

    /// Class `[a, b]` of a boundary edge.
    fn edge_class(&self, edge: usize) -> PyResult<(i64, i64)> {
        let p = Peripheral::new(&self.inner).map_err(precondition)?;
        let [a, b] = invariants::edge_class(&p.torus, edge).map_err(inv_err)?;
        Ok((a, b))
    }

    fn __repr__(&self) -> String {
        format!("Triangulation(size={})", self.inner.size())
    }
}

/// Fundamental (standard) or Q-fundamental (quad) surfaces.
#[pyfunction]
#[pyo3(signature = (tri, coords = "standard", disc_cap = DEFAULT_DISC_CAP, hb_cap = DEFAULT_HB_CAP))]
fn fundamental_surfaces(
    py: Python<'_>,
    tri: &Triangulation,
    coords: &str,
    disc_cap: u64,
    hb_cap: usize,
) -> PyResult<Py<PyAny>> {
    let set = py.detach(|| {
        normal::fundamental_surfaces(&tri.inner, system(coords)?, Caps { discs: disc_cap, generators: hb_cap })
            .map_err(normal_err)
    })?;
    result_to_py(py, &set.surfaces)
}

/// Crosscap number.  A meridian edge selects the suitable method (standard
/// coordinates) or the quad method; meridian coordinates select the general one.
#[pyfunction]
#[pyo3(signature = (tri, meridian_edge = None, meridian_coords = None, coords = "standard",
                    disc_cap = DEFAULT_DISC_CAP, hb_cap = DEFAULT_HB_CAP, assume_efficient = false))]
#[allow(clippy::too_many_arguments)]
fn crosscap(
    py: Python<'_>,
    tri: &Triangulation,
    meridian_edge: Option<usize>,
    meridian_coords: Option<[u64; 3]>,
    coords: &str,
    disc_cap: u64,
    hb_cap: usize,
    assume_efficient: bool,
) -> PyResult<Py<PyAny>> {
    let cfg = config(disc_cap, hb_cap, assume_efficient);
    let sys = system(coords)?;
    let r = py.detach(|| match (meridian_edge, meridian_coords, sys) {
        (Some(e), None, CoordSystem::Standard) => invariants::crosscap_suitable(&tri.inner, e, &cfg).map_err(inv_err),
        (Some(e), None, CoordSystem::Quad) => invariants::crosscap_quad(&tri.inner, e, &cfg).map_err(inv_err),
        (None, Some(c), CoordSystem::Standard) => {
            invariants::crosscap_general(&tri.inner, BoundaryCurveCoords(c), &cfg).map_err(inv_err)
        }
        _ => Err(PreconditionError::new_err(
            "give exactly one of meridian_edge or meridian_coords (coords only in standard coordinates)",
        )),
    })?;
    result_to_py(py, &r)
}

/// Genus of a null-homologous knot with the given meridian edge.
#[pyfunction]
#[pyo3(signature = (tri, meridian_edge, disc_cap = DEFAULT_DISC_CAP, hb_cap = DEFAULT_HB_CAP, assume_efficient = false))]
fn knot_genus(
    py: Python<'_>,
    tri: &Triangulation,
    meridian_edge: usize,
    disc_cap: u64,
    hb_cap: usize,
    assume_efficient: bool,
) -> PyResult<Py<PyAny>> {
    let cfg = config(disc_cap, hb_cap, assume_efficient);
    let r = py.detach(|| {
        let p = Peripheral::new(&tri.inner).map_err(precondition)?;
        let m = invariants::edge_class(&p.torus, meridian_edge).map_err(inv_err)?;
        invariants::knot_genus(&tri.inner, m, &cfg).map_err(inv_err)
    })?;
    result_to_py(py, &r)
}

/// Norm of an even slope `"p/q"`, or of the manifold when `slope` is None.
/// The framing defaults to the 2-torsion framing.
#[pyfunction]
#[pyo3(signature = (tri, slope = None, framing = None, coords = "standard",
                    disc_cap = DEFAULT_DISC_CAP, hb_cap = DEFAULT_HB_CAP, assume_efficient = false))]
#[allow(clippy::too_many_arguments)]
fn slope_norm(
    py: Python<'_>,
    tri: &Triangulation,
    slope: Option<&str>,
    framing: Option<(String, String)>,
    coords: &str,
    disc_cap: u64,
    hb_cap: usize,
    assume_efficient: bool,
) -> PyResult<Py<PyAny>> {
    let cfg = config(disc_cap, hb_cap, assume_efficient);
    let fr = match framing {
        Some((a, b)) => Framing::from_strings(&a, &b, FramingFlavor::TwoTorsion),
        None => two_torsion_framing(&tri.inner),
    }
    .map_err(precondition)?;
    let sys = system(coords)?;
    match slope {
        Some(s) => {
            let delta = self::slope(s)?;
            let r = py.detach(|| invariants::slope_norm(&tri.inner, &fr, delta, &cfg)).map_err(inv_err)?;
            result_to_py(py, &r)
        }
        None => {
            let r = py.detach(|| invariants::slope_norm_of_manifold(&tri.inner, &fr, sys, &cfg)).map_err(inv_err)?;
            result_to_py(py, &r)
        }
    }
}

/// Saddle count between the canonical triangles of two even slopes.
#[pyfunction]
fn farey_distance(a: &str, b: &str) -> PyResult<u64> {
    farey::farey_distance(slope(a)?, slope(b)?).map_err(precondition)
}

/// Distance from an even slope to the even integral subtree.
#[pyfunction]
fn distance_to_even_integral_subtree(a: &str) -> PyResult<u64> {
    farey::distance_to_even_integral_subtree(slope(a)?).map_err(precondition)
}

/// Flips taking the triangle `(a, b, c)` to one containing `to`.
#[pyfunction]
fn layering_sequence(from: (String, String, String), to: &str) -> PyResult<Vec<String>> {
    let t = farey::FareyTriangle::new(slope(&from.0)?, slope(&from.1)?, slope(&from.2)?).map_err(precondition)?;
    Ok(farey::layering_sequence(&t, slope(to)?).into_iter().map(|f| f.edge_slope.to_string()).collect())
}

/// Algebraic intersection of two boundary curves given by arc coordinates.
#[pyfunction]
fn intersection_number(a: [u64; 3], b: [u64; 3]) -> PyResult<i64> {
    curves::intersection_number(BoundaryCurveCoords(a), BoundaryCurveCoords(b)).map_err(precondition)
}

/// Hilbert basis of `{x ≥ 0 : A x = 0}` with at most one nonzero entry in
/// each exclusive group.
#[pyfunction]
#[pyo3(signature = (columns, equations, exclusive = Vec::new(), cap = DEFAULT_HB_CAP))]
fn hilbert_basis(
    py: Python<'_>,
    columns: usize,
    equations: Vec<Vec<i64>>,
    exclusive: Vec<Vec<usize>>,
    cap: usize,
) -> PyResult<Vec<Vec<num_bigint::BigInt>>> {
    if equations.iter().any(|r| r.len() != columns) || exclusive.iter().flatten().any(|&i| i >= columns) {
        return Err(PreconditionError::new_err("equation or group does not match the column count"));
    }
    let cone = Cone { columns, equations, exclusive };
    py.detach(|| normal::hilbert_basis(&cone, cap)).map_err(|e| err(e, true))
}

#[pymodule]
fn normcross_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Triangulation>()?;
    m.add("PreconditionError", m.py().get_type::<PreconditionError>())?;
    m.add("EnumerationAborted", m.py().get_type::<EnumerationAborted>())?;
    m.add_function(wrap_pyfunction!(fundamental_surfaces, m)?)?;
    m.add_function(wrap_pyfunction!(crosscap, m)?)?;
    m.add_function(wrap_pyfunction!(knot_genus, m)?)?;
    m.add_function(wrap_pyfunction!(slope_norm, m)?)?;
    m.add_function(wrap_pyfunction!(farey_distance, m)?)?;
    m.add_function(wrap_pyfunction!(distance_to_even_integral_subtree, m)?)?;
    m.add_function(wrap_pyfunction!(layering_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(intersection_number, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_basis, m)?)?;
    Ok(())
}
