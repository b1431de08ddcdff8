//! Complete elliptic integrals by the arithmetic-geometric mean.
//!
//! `K(s) = ∫₀¹ dx / √((1−x²)(1−s²x²))` and `E(s) = ∫₀¹ √(1−s²x²)/√(1−x²) dx`
//! with modulus `s`. The `*_complement` variants take `s' = √(1−s²)`
//! directly, which keeps full precision when `s` is within rounding of 1.

use std::f64::consts::FRAC_PI_2;

use crate::{Error, EvalResult, Method, Result};

/// `K` is rejected for `|s|` at or beyond `1 − K_EDGE`.
pub const K_EDGE: f64 = 1e-12;

const AGM_REL_TOL: f64 = 1e-15;
const AGM_MAX_ITER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Modulus(f64);

impl Modulus {
    pub fn new(s: f64) -> Result<Self> {
        if !s.is_finite() || s.abs() > 1.0 {
            return Err(Error::Domain(format!("modulus must satisfy |s| <= 1, got {s}")));
        }
        Ok(Modulus(s))
    }

    pub fn s(self) -> f64 {
        self.0
    }

    /// Complementary modulus `√(1−s²)`.
    pub fn complement(self) -> f64 {
        let s = self.0.abs();
        ((1.0 - s) * (1.0 + s)).sqrt()
    }
}

struct AgmRun {
    mean: f64,
    iterations: usize,
    // Σ 2^{n−1} c_n² for n ≥ 1
    weighted_c: f64,
}

fn agm_run(a0: f64, b0: f64) -> AgmRun {
    let (mut a, mut b) = (a0, b0);
    let mut weighted_c = 0.0;
    let mut power = 0.5;
    let mut iterations = 0;
    while iterations < AGM_MAX_ITER {
        if (a - b).abs() <= AGM_REL_TOL * a {
            break;
        }
        let c = 0.5 * (a - b);
        let next_a = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next_a;
        power *= 2.0;
        weighted_c += power * c * c;
        iterations += 1;
    }
    AgmRun {
        mean: 0.5 * (a + b),
        iterations: iterations.max(1),
        weighted_c,
    }
}

/// Arithmetic-geometric mean of two positive numbers.
pub fn agm(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!("agm needs positive finite inputs, got ({a}, {b})")));
    }
    Ok(agm_run(a, b).mean)
}

/// `K` from the complementary modulus `s' ∈ (0, 1]`.
pub fn ellipk_complement(sp: f64) -> Result<EvalResult> {
    if !(sp > 0.0 && sp <= 1.0) {
        return Err(Error::Domain(format!("complementary modulus must lie in (0, 1], got {sp}")));
    }
    let run = agm_run(1.0, sp);
    Ok(EvalResult {
        value: FRAC_PI_2 / run.mean,
        err_estimate: 4.0 * f64::EPSILON * FRAC_PI_2 / run.mean,
        effort: run.iterations,
        converged: true,
        method: Method::Agm,
    })
}

/// `E` from the complementary modulus `s' ∈ [0, 1]`.
pub fn ellipe_complement(sp: f64) -> Result<EvalResult> {
    if !(0.0..=1.0).contains(&sp) {
        return Err(Error::Domain(format!("complementary modulus must lie in [0, 1], got {sp}")));
    }
    if sp == 0.0 {
        return Ok(EvalResult {
            value: 1.0,
            err_estimate: 0.0,
            effort: 1,
            converged: true,
            method: Method::Agm,
        });
    }
    let run = agm_run(1.0, sp);
    let k = FRAC_PI_2 / run.mean;
    let s2 = (1.0 - sp) * (1.0 + sp);
    let value = k * (1.0 - 0.5 * s2 - run.weighted_c);
    Ok(EvalResult {
        value,
        err_estimate: 8.0 * f64::EPSILON * k,
        effort: run.iterations,
        converged: true,
        method: Method::Agm,
    })
}

pub fn ellipk_eval(m: Modulus) -> Result<EvalResult> {
    if m.s().abs() >= 1.0 - K_EDGE {
        return Err(Error::Domain(format!(
            "K diverges at |s| = 1; got s = {}",
            m.s()
        )));
    }
    ellipk_complement(m.complement())
}

pub fn ellipe_eval(m: Modulus) -> Result<EvalResult> {
    if m.s().abs() == 1.0 {
        return Ok(EvalResult::closed_form(1.0));
    }
    ellipe_complement(m.complement())
}

/// Complete elliptic integral of the first kind, `|s| < 1`.
pub fn ellipk(m: Modulus) -> Result<f64> {
    ellipk_eval(m).map(|r| r.value)
}

/// Complete elliptic integral of the second kind, `|s| ≤ 1`.
pub fn ellipe(m: Modulus) -> Result<f64> {
    ellipe_eval(m).map(|r| r.value)
}
