//! Numerics for Catalan's constant `G`.
//!
//! The crate evaluates the parametric integrals, complete elliptic integrals
//! and unit-argument hypergeometric values that are tied to `G`, and checks
//! each identity between them by two independent numerical routes (direct
//! series, accelerated series, tanh-sinh quadrature, AGM, closed form).
//!
//! Modulus convention: `K(s)` and `E(s)` take the modulus `s`, so `s²`
//! appears inside the integrand.

pub mod accel;
pub mod elliptic;
mod error;
pub mod identities;
pub mod integrals;
pub mod quadrature;
pub mod report;
pub mod sfcore;

use serde::{Deserialize, Serialize};

pub use error::{Error, Result};

/// Crate version written into reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    DirectSeries,
    Accelerated,
    Quadrature,
    Agm,
    ClosedForm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::DirectSeries => "direct-series",
            Method::Accelerated => "accelerated",
            Method::Quadrature => "quadrature",
            Method::Agm => "agm",
            Method::ClosedForm => "closed-form",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A computed value together with its error estimate and the work spent.
///
/// `effort` counts summed terms, integrand calls or AGM steps depending on
/// `method`. Values returned through `Ok` always have `converged == true`;
/// unconverged estimates travel inside [`Error::NonConvergence`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: f64,
    pub err_estimate: f64,
    pub effort: usize,
    pub converged: bool,
    pub method: Method,
}

impl EvalResult {
    pub fn closed_form(value: f64) -> Self {
        EvalResult {
            value,
            err_estimate: 0.0,
            effort: 0,
            converged: true,
            method: Method::ClosedForm,
        }
    }
}

/// Numerical knobs shared by the integrals and the verification engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    /// Absolute tolerance for series evaluation.
    pub series_tol: f64,
    /// Term cap for direct summation.
    pub max_terms: usize,
    /// Term cap for accelerated summation (at most 4000).
    pub accel_cap: usize,
    /// Inter-level tolerance for tanh-sinh.
    pub quad_tol: f64,
    /// Maximum tanh-sinh refinement level (at most 12).
    pub quad_level: u32,
    /// Step of the five-point difference stencil.
    pub fd_step: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            series_tol: 1e-12,
            max_terms: sfcore::DIRECT_TERM_CAP,
            accel_cap: accel::MAX_CAP,
            quad_tol: quadrature::DEFAULT_TARGET_TOL,
            quad_level: quadrature::DEFAULT_MAX_LEVEL,
            fd_step: quadrature::DEFAULT_FD_STEP,
        }
    }
}
