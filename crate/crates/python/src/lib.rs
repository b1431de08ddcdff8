//! Python bindings for the Catalan-constant numerics library.

use std::cell::RefCell;

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use hyperlab::elliptic::{self, Modulus};
use hyperlab::identities::{self, registry, VerificationResult};
use hyperlab::integrals::{self, CatalanMethod};
use hyperlab::quadrature::{self, QuadratureSpec};
use hyperlab::report::{self, Report};
use hyperlab::sfcore::{self, PfqParams};
use hyperlab::{Error, EvalResult};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Domain(_) | Error::InvalidArgument(_) | Error::UnknownIdentity(_) => {
            PyValueError::new_err(e.to_string())
        }
        Error::NonConvergence { .. } | Error::Breakdown { .. } | Error::IntegrandFailure { .. } => {
            PyArithmeticError::new_err(e.to_string())
        }
    }
}

/// A value with its error estimate, effort and evaluation method.
#[pyclass(name = "EvalResult", module = "catalan_hyperlab", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyEvalResult {
    value: f64,
    err_estimate: f64,
    effort: usize,
    converged: bool,
    method: String,
}

impl From<EvalResult> for PyEvalResult {
    fn from(r: EvalResult) -> Self {
        PyEvalResult {
            value: r.value,
            err_estimate: r.err_estimate,
            effort: r.effort,
            converged: r.converged,
            method: r.method.to_string(),
        }
    }
}

#[pymethods]
impl PyEvalResult {
    fn __float__(&self) -> f64 {
        self.value
    }

    fn __repr__(&self) -> String {
        format!(
            "EvalResult(value={:?}, err_estimate={:e}, effort={}, converged={}, method='{}')",
            self.value,
            self.err_estimate,
            self.effort,
            if self.converged { "True" } else { "False" },
            self.method
        )
    }
}

/// One identity checked at one parameter point.
#[pyclass(name = "VerificationResult", module = "catalan_hyperlab", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyVerificationResult {
    id: String,
    param: String,
    lhs: Option<f64>,
    rhs: Option<f64>,
    abs_residual: f64,
    rel_residual: f64,
    tol: f64,
    passed: bool,
    lhs_method: Option<String>,
    rhs_method: Option<String>,
    effort: usize,
    diagnostics: Option<String>,
}

impl From<VerificationResult> for PyVerificationResult {
    fn from(r: VerificationResult) -> Self {
        PyVerificationResult {
            id: r.id,
            param: r.param.to_string(),
            lhs: r.lhs,
            rhs: r.rhs,
            abs_residual: r.abs_residual,
            rel_residual: r.rel_residual,
            tol: r.tol,
            passed: r.pass,
            lhs_method: r.lhs_method.map(|m| m.to_string()),
            rhs_method: r.rhs_method.map(|m| m.to_string()),
            effort: r.effort,
            diagnostics: r.diagnostics,
        }
    }
}

#[pymethods]
impl PyVerificationResult {
    fn __repr__(&self) -> String {
        format!(
            "VerificationResult(id='{}', param='{}', abs_residual={:e}, passed={})",
            self.id,
            self.param,
            self.abs_residual,
            if self.passed { "True" } else { "False" }
        )
    }
}

#[pyfunction]
fn ellipk(py: Python<'_>, s: f64) -> PyResult<PyEvalResult> {
    py.detach(|| Modulus::new(s).and_then(elliptic::ellipk_eval))
        .map(Into::into)
        .map_err(to_py)
}

#[pyfunction]
fn ellipe(py: Python<'_>, s: f64) -> PyResult<PyEvalResult> {
    py.detach(|| Modulus::new(s).and_then(elliptic::ellipe_eval))
        .map(Into::into)
        .map_err(to_py)
}

#[pyfunction]
fn agm(a: f64, b: f64) -> PyResult<f64> {
    elliptic::agm(a, b).map_err(to_py)
}

#[pyfunction]
fn lgamma(x: f64) -> PyResult<f64> {
    sfcore::lgamma(x).map_err(to_py)
}

#[pyfunction]
fn pochhammer(a: f64, k: usize) -> f64 {
    sfcore::pochhammer(a, k)
}

#[pyfunction]
fn central_binomial(n: u32) -> f64 {
    sfcore::central_binomial(n)
}

#[pyfunction]
fn gauss_2f1_at_one(a: f64, b: f64, c: f64) -> PyResult<f64> {
    sfcore::gauss_2f1_at_one(a, b, c).map_err(to_py)
}

/// `pFq(upper; lower; x)`, summed directly or with acceleration at `|x| = 1`.
#[pyfunction]
#[pyo3(signature = (upper, lower, x, tol = 1e-12))]
fn pfq(py: Python<'_>, upper: Vec<f64>, lower: Vec<f64>, x: f64, tol: f64) -> PyResult<PyEvalResult> {
    py.detach(|| PfqParams::new(upper, lower, x).and_then(|p| sfcore::pfq(&p, tol)))
        .map(Into::into)
        .map_err(to_py)
}

macro_rules! parametric {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[pyfunction]
        fn $name(py: Python<'_>, s: f64) -> PyResult<PyEvalResult> {
            py.detach(|| integrals::$name(s)).map(Into::into).map_err(to_py)
        }
    };
}

parametric!(integral_a, "`A(s) = ∫₀¹ arcsin(sx) / (x√(1−x²)) dx`.");
parametric!(integral_b, "`B(s) = ∫₀¹ (arcsin(sx) + sx√(1−s²x²)) / (2x√(1−x²)) dx`.");
parametric!(integral_c, "`C(s) = ∫₀¹ log(1 + √(1−s²x²)) / √(1−x²) dx`.");
parametric!(integral_d, "`D(s) = ∫₀¹ log(1 − √(1−s²x²)) / √(1−x²) dx`.");

/// Catalan's constant by the named route.
#[pyfunction]
#[pyo3(signature = (method = "beta_series"))]
fn catalan(py: Python<'_>, method: &str) -> PyResult<PyEvalResult> {
    let method: CatalanMethod = method.parse().map_err(to_py)?;
    py.detach(|| integrals::catalan(method))
        .map(Into::into)
        .map_err(to_py)
}

/// Tanh-sinh quadrature of a Python callable over `[lo, hi]`.
#[pyfunction]
#[pyo3(signature = (f, lo, hi, tol = 1e-11, max_level = 10, singular_lo = false, singular_hi = false))]
fn quad(
    f: &Bound<'_, PyAny>,
    lo: f64,
    hi: f64,
    tol: f64,
    max_level: u32,
    singular_lo: bool,
    singular_hi: bool,
) -> PyResult<PyEvalResult> {
    let spec = QuadratureSpec::new(lo, hi)
        .map_err(to_py)?
        .tol(tol)
        .max_level(max_level)
        .singular(singular_lo, singular_hi);
    let failure: RefCell<Option<PyErr>> = RefCell::new(None);
    let result = quadrature::tanh_sinh(
        |x| match f.call1((x,)).and_then(|v| v.extract::<f64>()) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        },
        &spec,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    result.map(Into::into).map_err(to_py)
}

/// Five-point central difference of a Python callable.
#[pyfunction]
#[pyo3(signature = (f, s, h = quadrature::DEFAULT_FD_STEP))]
fn central_diff(f: &Bound<'_, PyAny>, s: f64, h: f64) -> PyResult<f64> {
    let mut failure: Option<PyErr> = None;
    let result = quadrature::central_diff(
        |x| match f.call1((x,)).and_then(|v| v.extract::<f64>()) {
            Ok(v) => Ok(v),
            Err(e) => {
                failure.get_or_insert(e);
                Err(Error::InvalidArgument("callable raised".into()))
            }
        },
        s,
        h,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    result.map_err(to_py)
}

/// Identity ids in registry order.
#[pyfunction]
fn identity_ids() -> Vec<String> {
    registry().into_iter().map(|i| i.id).collect()
}

#[pyfunction]
#[pyo3(signature = (id, tol = None))]
fn verify(py: Python<'_>, id: &str, tol: Option<f64>) -> PyResult<Vec<PyVerificationResult>> {
    py.detach(|| identities::verify(id, tol))
        .map(|rs| rs.into_iter().map(Into::into).collect())
        .map_err(to_py)
}

/// Full verification report as JSON; `tol_scale` multiplies every tolerance.
#[pyfunction]
#[pyo3(signature = (tol_scale = 1.0))]
fn verify_all_json(py: Python<'_>, tol_scale: f64) -> PyResult<String> {
    py.detach(|| {
        let start = std::time::Instant::now();
        identities::verify_all(tol_scale).map(|o| Report::new(&o, start.elapsed().as_secs_f64()).to_json())
    })
    .map_err(to_py)
}

/// The identity registry as JSON.
#[pyfunction]
fn catalog_json() -> String {
    report::catalog_json()
}

#[pymodule]
fn catalan_hyperlab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", hyperlab::VERSION)?;
    m.add_class::<PyEvalResult>()?;
    m.add_class::<PyVerificationResult>()?;
    m.add_function(wrap_pyfunction!(ellipk, m)?)?;
    m.add_function(wrap_pyfunction!(ellipe, m)?)?;
    m.add_function(wrap_pyfunction!(agm, m)?)?;
    m.add_function(wrap_pyfunction!(lgamma, m)?)?;
    m.add_function(wrap_pyfunction!(pochhammer, m)?)?;
    m.add_function(wrap_pyfunction!(central_binomial, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_2f1_at_one, m)?)?;
    m.add_function(wrap_pyfunction!(pfq, m)?)?;
    m.add_function(wrap_pyfunction!(integral_a, m)?)?;
    m.add_function(wrap_pyfunction!(integral_b, m)?)?;
    m.add_function(wrap_pyfunction!(integral_c, m)?)?;
    m.add_function(wrap_pyfunction!(integral_d, m)?)?;
    m.add_function(wrap_pyfunction!(catalan, m)?)?;
    m.add_function(wrap_pyfunction!(quad, m)?)?;
    m.add_function(wrap_pyfunction!(central_diff, m)?)?;
    m.add_function(wrap_pyfunction!(identity_ids, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all_json, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_json, m)?)?;
    Ok(())
}
