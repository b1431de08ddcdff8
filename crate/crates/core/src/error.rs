use thiserror::Error;

use crate::EvalResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The effort cap was reached before the requested tolerance. `best`
    /// carries the last estimate with `converged == false`.
    #[error("no convergence after {} evaluations (last estimate {}, error estimate {:e})", best.effort, best.value, best.err_estimate)]
    NonConvergence { best: EvalResult },

    /// A denominator in an extrapolation table fell below the breakdown threshold.
    #[error("numerical breakdown in {method} after {terms} terms")]
    Breakdown { method: &'static str, terms: usize },

    #[error("integrand returned {value} at x = {abscissa:e}")]
    IntegrandFailure { abscissa: f64, value: f64 },

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
}
