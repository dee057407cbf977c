//! Python bindings: the weighted pair, the four evaluators, the series
//! coefficients, the double-double reference and the pair generator.

use pyo3::create_exception;
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;

use jsd_core::pairgen::{
    sample_pair as core_sample_pair, sample_simplex as core_sample_simplex, GenSpec,
};
use jsd_core::{Distribution, EvalResult, JsdError as CoreError, Method, Units, WeightedPair};

create_exception!(
    jsdiv,
    JsdError,
    PyValueError,
    "Invalid input to a divergence computation."
);

fn to_py(e: CoreError) -> PyErr {
    match e {
        CoreError::Io { .. } => PyOSError::new_err(e.to_string()),
        other => JsdError::new_err(other.to_string()),
    }
}

fn parse_units(name: &str) -> PyResult<Units> {
    name.parse().map_err(to_py)
}

/// Two distributions with mixture weights `pi1` and `1 - pi1`.
#[pyclass(name = "Pair", module = "jsdiv", frozen)]
struct PyPair {
    inner: WeightedPair,
}

#[pymethods]
impl PyPair {
    #[new]
    #[pyo3(signature = (p1, p2, pi1 = 0.5, normalize = false))]
    fn new(p1: Vec<f64>, p2: Vec<f64>, pi1: f64, normalize: bool) -> PyResult<Self> {
        let build = |v: Vec<f64>| {
            if normalize {
                Distribution::normalized(v)
            } else {
                Distribution::new(v)
            }
        };
        let p1 = build(p1).map_err(to_py)?;
        let p2 = build(p2).map_err(to_py)?;
        let inner = WeightedPair::with_pi1(p1, p2, pi1).map_err(to_py)?;
        Ok(PyPair { inner })
    }

    /// Pair with weights `(1 + alpha) / 2` and `(1 - alpha) / 2`.
    #[staticmethod]
    fn from_alpha(p1: Vec<f64>, p2: Vec<f64>, alpha: f64) -> PyResult<Self> {
        let p1 = Distribution::new(p1).map_err(to_py)?;
        let p2 = Distribution::new(p2).map_err(to_py)?;
        let inner = WeightedPair::from_alpha(p1, p2, alpha).map_err(to_py)?;
        Ok(PyPair { inner })
    }

    #[getter]
    fn p1(&self) -> Vec<f64> {
        self.inner.p1().to_vec()
    }

    #[getter]
    fn p2(&self) -> Vec<f64> {
        self.inner.p2().to_vec()
    }

    #[getter]
    fn pi1(&self) -> f64 {
        self.inner.pi1()
    }

    #[getter]
    fn pi2(&self) -> f64 {
        self.inner.pi2()
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha()
    }

    /// `(pbar, eta, eps, alpha)` as lists and a float.
    fn reduced(&self) -> (Vec<f64>, Vec<f64>, Vec<f64>, f64) {
        let rf = jsd_core::reduce(&self.inner);
        (rf.pbar, rf.eta, rf.eps, rf.alpha)
    }

    /// Root-mean-square of the relative perturbation.
    fn eps_norm(&self) -> f64 {
        jsd_core::epsilon_rms_norm(&jsd_core::reduce(&self.inner))
    }

    fn swapped(&self) -> Self {
        PyPair {
            inner: self.inner.swapped(),
        }
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Pair(n={}, pi1={}, pi2={})",
            self.inner.len(),
            self.inner.pi1(),
            self.inner.pi2()
        )
    }
}

/// A divergence value with the method and order that produced it.
#[pyclass(name = "Result", module = "jsdiv", frozen, get_all)]
struct PyEvalResult {
    value: f64,
    units: String,
    method: String,
    auto_selected: bool,
    order: Option<usize>,
    empty_bins: bool,
    boundary_eps: bool,
}

#[pymethods]
impl PyEvalResult {
    fn __float__(&self) -> f64 {
        self.value
    }

    fn __repr__(&self) -> String {
        let order = self
            .order
            .map(|k| format!(", order={k}"))
            .unwrap_or_default();
        format!(
            "Result(value={:e}, units={}, method={}{order})",
            self.value, self.units, self.method
        )
    }
}

impl From<EvalResult> for PyEvalResult {
    fn from(r: EvalResult) -> Self {
        PyEvalResult {
            value: r.value,
            units: r.units.to_string(),
            method: r.method.to_string(),
            auto_selected: r.auto_selected,
            order: r.order,
            empty_bins: r.diagnostics.empty_bins,
            boundary_eps: r.diagnostics.boundary_eps,
        }
    }
}

#[pyfunction]
fn entropy(p: Vec<f64>) -> PyResult<f64> {
    jsd_core::entropy(&p).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (pair, units = "nats"))]
fn jsd_naive(pair: &PyPair, units: &str) -> PyResult<PyEvalResult> {
    Ok(jsd_core::jsd_naive(&pair.inner, parse_units(units)?).into())
}

#[pyfunction]
#[pyo3(signature = (pair, units = "nats"))]
fn jsd_exact(pair: &PyPair, units: &str) -> PyResult<PyEvalResult> {
    Ok(jsd_core::jsd_exact_reduced(&pair.inner, parse_units(units)?).into())
}

#[pyfunction]
#[pyo3(signature = (pair, order, units = "nats"))]
fn jsd_series(pair: &PyPair, order: usize, units: &str) -> PyResult<PyEvalResult> {
    jsd_core::jsd_series(&pair.inner, order, parse_units(units)?)
        .map(Into::into)
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (pair, rel_tol = 1e-14, units = "nats"))]
fn jsd_auto(pair: &PyPair, rel_tol: f64, units: &str) -> PyResult<PyEvalResult> {
    jsd_core::jsd_auto(&pair.inner, rel_tol, parse_units(units)?)
        .map(Into::into)
        .map_err(to_py)
}

/// Dispatch on a method name: `naive`, `exact`, `series` or `auto`.
#[pyfunction]
#[pyo3(signature = (pair, method = "auto", order = 12, rel_tol = 1e-14, units = "nats"))]
fn jsd(
    pair: &PyPair,
    method: &str,
    order: usize,
    rel_tol: f64,
    units: &str,
) -> PyResult<PyEvalResult> {
    let u = parse_units(units)?;
    let r = match method.parse::<Method>().map_err(to_py)? {
        Method::Naive => jsd_core::jsd_naive(&pair.inner, u),
        Method::ExactReduced => jsd_core::jsd_exact_reduced(&pair.inner, u),
        Method::Series => jsd_core::jsd_series(&pair.inner, order, u).map_err(to_py)?,
        Method::Auto => jsd_core::jsd_auto(&pair.inner, rel_tol, u).map_err(to_py)?,
    };
    Ok(r.into())
}

/// Double-double reference in nats as `(hi, lo)`.
#[pyfunction]
fn jsd_reference(pair: &PyPair) -> (f64, f64) {
    let v = jsd_core::jsd_reference(&pair.inner);
    (v.hi, v.lo)
}

/// `B_1 .. B_order`.
#[pyfunction]
fn coefficients(alpha: f64, order: usize) -> PyResult<Vec<f64>> {
    jsd_core::series_coefficients(alpha, order)
        .map(|b| b.as_slice().to_vec())
        .map_err(to_py)
}

#[pyfunction]
fn delta_series(eps: f64, alpha: f64, order: usize) -> PyResult<f64> {
    jsd_core::delta_series(eps, alpha, order).map_err(to_py)
}

#[pyfunction]
fn sample_simplex(n: usize, seed: u64) -> PyResult<Vec<f64>> {
    core_sample_simplex(n, seed)
        .map(Distribution::into_inner)
        .map_err(to_py)
}

/// Random pair whose `log10 ||eps||` is within 0.05 of `log10_eps`.
#[pyfunction]
#[pyo3(signature = (n, log10_eps, seed, alpha = 0.0))]
fn sample_pair(n: usize, log10_eps: f64, seed: u64, alpha: f64) -> PyResult<PyPair> {
    let spec = GenSpec {
        n,
        target_log10_eps: log10_eps,
        alpha,
        seed,
    };
    core_sample_pair(&spec)
        .map(|g| PyPair { inner: g.pair })
        .map_err(to_py)
}

#[pymodule]
fn jsdiv(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("JsdError", m.py().get_type::<JsdError>())?;
    m.add_class::<PyPair>()?;
    m.add_class::<PyEvalResult>()?;
    m.add_function(wrap_pyfunction!(entropy, m)?)?;
    m.add_function(wrap_pyfunction!(jsd_naive, m)?)?;
    m.add_function(wrap_pyfunction!(jsd_exact, m)?)?;
    m.add_function(wrap_pyfunction!(jsd_series, m)?)?;
    m.add_function(wrap_pyfunction!(jsd_auto, m)?)?;
    m.add_function(wrap_pyfunction!(jsd, m)?)?;
    m.add_function(wrap_pyfunction!(jsd_reference, m)?)?;
    m.add_function(wrap_pyfunction!(coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(delta_series, m)?)?;
    m.add_function(wrap_pyfunction!(sample_simplex, m)?)?;
    m.add_function(wrap_pyfunction!(sample_pair, m)?)?;
    Ok(())
}
