use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use sigatlas_core::affine::{self, GroupParams, LambdaMarker, LatticeRing};
use sigatlas_core::covering::{self, HurwitzTuple};
use sigatlas_core::fpgroup::{todd_coxeter, OrbifoldPresentation, DEFAULT_MAX_COSETS};
use sigatlas_core::numeric::{self, ComplexPolynomial, TrackConfig};
use sigatlas_core::signature::{self, Order};
use sigatlas_core::tiling::{self, SvgOptions, MAX_DEPTH};
use sigatlas_core::Error;

create_exception!(sigatlas, SigatlasError, PyException);

fn err(e: Error) -> PyErr {
    match e {
        Error::Validation(_) | Error::Usage(_) => PyValueError::new_err(e.to_string()),
        _ => SigatlasError::new_err(e.to_string()),
    }
}

/// Round-trips a serializable value through JSON into Python objects.
fn to_py<'py>(py: Python<'py>, v: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(v).map_err(|e| SigatlasError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (s,))
}

fn order_to_py<'py>(py: Python<'py>, o: Order) -> PyResult<Bound<'py, PyAny>> {
    match o {
        Order::Finite(r) => Ok(r.into_pyobject(py)?.into_any()),
        Order::Inf => Ok(pyo3::types::PyString::new(py, "inf").into_any()),
    }
}

#[pyclass(name = "OrderSet", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyOrderSet(signature::OrderSet);

#[pymethods]
impl PyOrderSet {
    /// Accepts `"2,3,inf"` or a list such as `[2, 3, "inf"]`.
    #[new]
    fn new(orders: &Bound<'_, PyAny>) -> PyResult<Self> {
        let text = match orders.extract::<String>() {
            Ok(s) => s,
            Err(_) => {
                let items: Vec<Bound<'_, PyAny>> = orders.extract()?;
                items.iter().map(|x| Ok(x.str()?.to_string())).collect::<PyResult<Vec<_>>>()?.join(",")
            }
        };
        signature::OrderSet::parse(&text).map(PyOrderSet).map_err(err)
    }

    #[getter]
    fn orders<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.0.orders().iter().map(|&o| order_to_py(py, o)).collect()
    }

    /// Exact characteristic as a `fractions.Fraction`.
    fn characteristic<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let chi = self.0.characteristic().value();
        py.import("fractions")?.getattr("Fraction")?.call1((*chi.numer(), *chi.denom()))
    }

    /// `(kind, family)`; family is `None` for hyperbolic sets.
    fn classify(&self) -> (String, Option<String>) {
        let c = self.0.classify();
        (c.kind.to_string(), c.family.map(|f| f.to_string()))
    }

    /// Order of the deck group, or `None` when it is infinite.
    fn expected_group_order(&self) -> PyResult<Option<u64>> {
        self.0.expected_group_order().map(|o| o.finite()).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("OrderSet('{}')", self.0)
    }
}

#[pyclass(name = "Permutation", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPermutation(sigatlas_core::Permutation);

#[pymethods]
impl PyPermutation {
    /// From the image list of `0..n`.
    #[new]
    fn new(images: Vec<u32>) -> PyResult<Self> {
        sigatlas_core::Permutation::from_images(images).map(PyPermutation).map_err(err)
    }

    /// From cycle notation such as `"(0 1 2)(3 4)"`.
    #[staticmethod]
    fn parse(degree: usize, cycles: &str) -> PyResult<Self> {
        sigatlas_core::Permutation::parse_cycles(degree, cycles).map(PyPermutation).map_err(err)
    }

    #[getter]
    fn images(&self) -> Vec<u32> {
        self.0.images().to_vec()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn order(&self) -> u64 {
        self.0.order()
    }

    fn cycle_type(&self) -> Vec<usize> {
        self.0.cycle_type()
    }

    fn inverse(&self) -> Self {
        PyPermutation(self.0.inverse())
    }

    /// `self` first, then `other`.
    fn then(&self, other: &PyPermutation) -> PyResult<Self> {
        if self.0.degree() != other.0.degree() {
            return Err(PyValueError::new_err("degrees differ"));
        }
        Ok(PyPermutation(self.0.then(&other.0)))
    }

    fn __mul__(&self, other: &PyPermutation) -> PyResult<Self> {
        self.then(other)
    }

    fn __call__(&self, point: usize) -> PyResult<usize> {
        if point >= self.0.degree() {
            return Err(PyValueError::new_err("point out of range"));
        }
        Ok(self.0.apply(point))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation({:?})", self.0.images())
    }
}

fn unwrap_tuple(sigma: &[PyPermutation]) -> PyResult<HurwitzTuple> {
    HurwitzTuple::new(sigma.iter().map(|p| p.0.clone()).collect()).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (max_param = 12))]
fn enumerate_elliptic(max_param: u32) -> Vec<PyOrderSet> {
    signature::enumerate_elliptic(max_param).into_iter().map(PyOrderSet).collect()
}

#[pyfunction]
fn enumerate_parabolic() -> Vec<PyOrderSet> {
    signature::enumerate_parabolic().into_iter().map(PyOrderSet).collect()
}

/// Index of the trivial subgroup found by coset enumeration, or `None` on
/// overflow.
#[pyfunction]
#[pyo3(signature = (orders, max_cosets = DEFAULT_MAX_COSETS))]
fn coset_count(orders: &PyOrderSet, max_cosets: usize) -> Option<usize> {
    let table = todd_coxeter(&OrbifoldPresentation::from_orders(&orders.0), &[], max_cosets);
    table.is_complete().then(|| table.coset_count())
}

/// Hurwitz classes of transitive coverings of the given degree.
#[pyfunction]
fn enumerate_coverings(orders: &PyOrderSet, degree: usize) -> PyResult<Vec<Vec<PyPermutation>>> {
    let found = covering::enumerate_coverings(&orders.0, degree).map_err(err)?;
    Ok(found.into_iter().map(|t| t.sigma().iter().cloned().map(PyPermutation).collect()).collect())
}

#[pyfunction]
#[pyo3(signature = (sigma, orders = None))]
fn monodromy_report<'py>(
    py: Python<'py>,
    sigma: Vec<PyPermutation>,
    orders: Option<&PyOrderSet>,
) -> PyResult<Bound<'py, PyAny>> {
    let t = unwrap_tuple(&sigma)?;
    to_py(py, &covering::monodromy_report(&t, orders.map(|o| &o.0)).map_err(err)?)
}

/// Galois closure of a covering given by its tuple.
#[pyfunction]
fn normalization(sigma: Vec<PyPermutation>) -> PyResult<Vec<PyPermutation>> {
    let t = unwrap_tuple(&sigma)?;
    let n = covering::normalization(&t, covering::DEFAULT_MAX_NORMALIZATION_ORDER).map_err(err)?;
    Ok(n.sigma().iter().cloned().map(PyPermutation).collect())
}

/// Quotient orbifold of an affine lattice group, as `"(6,3,2)"` or
/// `"genus one"`.
#[pyfunction]
#[pyo3(signature = (type_id, k = None, real_lambda = None, ring = None))]
fn affine_quotient(type_id: u8, k: Option<u32>, real_lambda: Option<bool>, ring: Option<&str>) -> PyResult<String> {
    let ring = match ring.map(str::to_ascii_lowercase).as_deref() {
        None => None,
        Some("none") => Some(LatticeRing::None),
        Some("z") => Some(LatticeRing::Z),
        Some("gauss") => Some(LatticeRing::Gauss),
        Some("eisenstein") => Some(LatticeRing::Eisenstein),
        Some("general") => Some(LatticeRing::General),
        Some(other) => return Err(PyValueError::new_err(format!("unknown ring {other:?}"))),
    };
    let lambda = real_lambda.map(|r| if r { LambdaMarker::Real } else { LambdaMarker::NonReal });
    let spec = affine::group_spec(type_id, GroupParams { k, lambda, ring }).map_err(err)?;
    Ok(affine::quotient_signature(&spec).map_err(err)?.to_string())
}

#[pyfunction]
fn ritt_report<'py>(py: Python<'py>, p: u32) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &sigatlas_core::ritt::verify_nonhyperbolic(p).map_err(err)?)
}

/// Numeric monodromy of a polynomial with real coefficients in ascending
/// degree.
#[pyfunction]
fn poly_monodromy<'py>(py: Python<'py>, coeffs: Vec<f64>) -> PyResult<Bound<'py, PyAny>> {
    let p = ComplexPolynomial::from_real(&coeffs).map_err(err)?;
    to_py(py, &numeric::monodromy(&p, &TrackConfig::default()).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (orders, depth = MAX_DEPTH))]
fn tiling_report<'py>(py: Python<'py>, orders: &PyOrderSet, depth: usize) -> PyResult<Bound<'py, PyAny>> {
    let poly = tiling::build_polygon(&orders.0).map_err(err)?;
    let orbit = tiling::reflect_orbit(&poly, depth).map_err(err)?;
    to_py(py, &tiling::check_tiling(&orbit))
}

#[pyfunction]
#[pyo3(signature = (orders, depth = MAX_DEPTH, size_px = 800))]
fn tiling_svg(orders: &PyOrderSet, depth: usize, size_px: u32) -> PyResult<String> {
    let poly = tiling::build_polygon(&orders.0).map_err(err)?;
    let orbit = tiling::reflect_orbit(&poly, depth).map_err(err)?;
    Ok(tiling::emit_svg(&orbit, &SvgOptions { size_px, ..SvgOptions::default() }))
}

#[pymodule]
fn sigatlas(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SigatlasError", m.py().get_type::<SigatlasError>())?;
    m.add_class::<PyOrderSet>()?;
    m.add_class::<PyPermutation>()?;
    m.add_function(wrap_pyfunction!(enumerate_elliptic, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_parabolic, m)?)?;
    m.add_function(wrap_pyfunction!(coset_count, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_coverings, m)?)?;
    m.add_function(wrap_pyfunction!(monodromy_report, m)?)?;
    m.add_function(wrap_pyfunction!(normalization, m)?)?;
    m.add_function(wrap_pyfunction!(affine_quotient, m)?)?;
    m.add_function(wrap_pyfunction!(ritt_report, m)?)?;
    m.add_function(wrap_pyfunction!(poly_monodromy, m)?)?;
    m.add_function(wrap_pyfunction!(tiling_report, m)?)?;
    m.add_function(wrap_pyfunction!(tiling_svg, m)?)?;
    Ok(())
}
