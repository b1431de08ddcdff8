//! Tanh-sinh quadrature on finite intervals and a five-point difference
//! stencil.
//!
//! Integrands that need to know how close they are to an endpoint (to avoid
//! cancellation in `1 − x` or `x − lo`) can use [`tanh_sinh_gap`], which
//! hands over the exact distances to both ends instead of the rounded
//! abscissa.

use std::f64::consts::FRAC_PI_2;

use crate::{Error, EvalResult, Method, Result};

pub const DEFAULT_TARGET_TOL: f64 = 1e-11;
pub const DEFAULT_MAX_LEVEL: u32 = 10;
pub const MAX_LEVEL_LIMIT: u32 = 12;
pub const DEFAULT_FD_STEP: f64 = 1e-3;

// Levels below this are never accepted as converged.
const MIN_LEVEL: u32 = 3;

// Relative gap at which an endpoint is considered reached.
const SINGULAR_CUTOFF: f64 = 1e-300;
const REGULAR_CUTOFF: f64 = 1e-18;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub lo: f64,
    pub hi: f64,
    pub target_tol: f64,
    pub max_level: u32,
    pub singular_lo: bool,
    pub singular_hi: bool,
}

impl QuadratureSpec {
    /// Interval `[lo, hi]` with default tolerance and level cap and no
    /// singular endpoints.
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        let spec = QuadratureSpec {
            lo,
            hi,
            target_tol: DEFAULT_TARGET_TOL,
            max_level: DEFAULT_MAX_LEVEL,
            singular_lo: false,
            singular_hi: false,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn tol(mut self, target_tol: f64) -> Self {
        self.target_tol = target_tol;
        self
    }

    pub fn max_level(mut self, max_level: u32) -> Self {
        self.max_level = max_level;
        self
    }

    pub fn singular(mut self, lo: bool, hi: bool) -> Self {
        self.singular_lo = lo;
        self.singular_hi = hi;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return Err(Error::InvalidArgument(format!(
                "quadrature interval [{}, {}] is empty or not finite",
                self.lo, self.hi
            )));
        }
        if !(self.target_tol > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "target tolerance must be positive, got {}",
                self.target_tol
            )));
        }
        if self.max_level > MAX_LEVEL_LIMIT {
            return Err(Error::InvalidArgument(format!(
                "max_level {} exceeds {MAX_LEVEL_LIMIT}",
                self.max_level
            )));
        }
        Ok(())
    }
}

/// A node together with its exact distances to both interval ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abscissa {
    pub x: f64,
    pub lo_gap: f64,
    pub hi_gap: f64,
}

/// Estimate after one refinement level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelEstimate {
    pub level: u32,
    pub estimate: f64,
    /// Difference to the previous level (infinite at level 0).
    pub diff: f64,
    pub evaluations: usize,
}

struct Node {
    abscissa: Abscissa,
    weight: f64,
}

/// Node at `t`, or `None` when it falls beyond the cutoff on its side.
fn node(spec: &QuadratureSpec, t: f64) -> Option<Node> {
    let width = spec.hi - spec.lo;
    let half = 0.5 * width;
    let u = FRAC_PI_2 * t.sinh();
    let q = (-2.0 * u.abs()).exp();
    let near = width * q / (1.0 + q);
    let far = width / (1.0 + q);
    let sech2 = 4.0 * q / ((1.0 + q) * (1.0 + q));
    let weight = half * FRAC_PI_2 * t.cosh() * sech2;

    let (singular, lo_gap, hi_gap) = if t >= 0.0 {
        (spec.singular_hi, far, near)
    } else {
        (spec.singular_lo, near, far)
    };
    let cutoff = if singular { SINGULAR_CUTOFF } else { REGULAR_CUTOFF };
    if near < cutoff * width || weight == 0.0 {
        return None;
    }
    let x = if lo_gap <= hi_gap {
        spec.lo + lo_gap
    } else {
        spec.hi - hi_gap
    };
    Some(Node {
        abscissa: Abscissa { x, lo_gap, hi_gap },
        weight,
    })
}

/// Runs the level loop; `f` returns `None` to skip a node.
fn integrate<F>(mut f: F, spec: &QuadratureSpec, full_trace: bool) -> Result<(EvalResult, Vec<LevelEstimate>)>
where
    F: FnMut(&Abscissa) -> Option<f64>,
{
    spec.validate()?;
    let mut sum = 0.0;
    let mut evaluations = 0usize;
    let mut previous: Option<f64> = None;
    let mut trace = Vec::new();

    let mut eval = |t: f64, sum: &mut f64, evaluations: &mut usize| -> Result<bool> {
        let Some(node) = node(spec, t) else {
            return Ok(false);
        };
        if let Some(v) = f(&node.abscissa) {
            *evaluations += 1;
            if !v.is_finite() {
                return Err(Error::IntegrandFailure {
                    abscissa: node.abscissa.x,
                    value: v,
                });
            }
            *sum += node.weight * v;
        }
        Ok(true)
    };

    for level in 0..=spec.max_level {
        let h = 0.5f64.powi(level as i32);
        if level == 0 {
            eval(0.0, &mut sum, &mut evaluations)?;
            for sign in [1.0, -1.0] {
                let mut k = 1.0;
                while eval(sign * k, &mut sum, &mut evaluations)? {
                    k += 1.0;
                }
            }
        } else {
            for sign in [1.0, -1.0] {
                let mut j = 0.0;
                while eval(sign * (2.0 * j + 1.0) * h, &mut sum, &mut evaluations)? {
                    j += 1.0;
                }
            }
        }
        let estimate = h * sum;
        let diff = previous.map_or(f64::INFINITY, |p| (estimate - p).abs());
        trace.push(LevelEstimate {
            level,
            estimate,
            diff,
            evaluations,
        });
        previous = Some(estimate);
        if !full_trace && level >= MIN_LEVEL && diff <= spec.target_tol {
            let result = EvalResult {
                value: estimate,
                err_estimate: diff,
                effort: evaluations,
                converged: true,
                method: Method::Quadrature,
            };
            return Ok((result, trace));
        }
    }

    let last = trace.last().copied().expect("level 0 always runs");
    let result = EvalResult {
        value: last.estimate,
        err_estimate: last.diff,
        effort: evaluations,
        converged: last.diff <= spec.target_tol,
        method: Method::Quadrature,
    };
    if full_trace || result.converged {
        Ok((result, trace))
    } else {
        Err(Error::NonConvergence { best: result })
    }
}

/// Integrates `f` over `[spec.lo, spec.hi]`.
///
/// Nodes whose abscissa rounds onto an endpoint are skipped, so `f` is never
/// called at `lo` or `hi`.
pub fn tanh_sinh<F>(f: F, spec: &QuadratureSpec) -> Result<EvalResult>
where
    F: Fn(f64) -> f64,
{
    let (lo, hi) = (spec.lo, spec.hi);
    integrate(
        |a| (a.x > lo && a.x < hi).then(|| f(a.x)),
        spec,
        false,
    )
    .map(|(r, _)| r)
}

/// Like [`tanh_sinh`], but the integrand receives the node with its gaps.
pub fn tanh_sinh_gap<F>(f: F, spec: &QuadratureSpec) -> Result<EvalResult>
where
    F: Fn(&Abscissa) -> f64,
{
    integrate(|a| Some(f(a)), spec, false).map(|(r, _)| r)
}

/// Runs every level up to `spec.max_level` and returns all estimates.
pub fn tanh_sinh_trace<F>(f: F, spec: &QuadratureSpec) -> Result<Vec<LevelEstimate>>
where
    F: Fn(&Abscissa) -> f64,
{
    integrate(|a| Some(f(a)), spec, true).map(|(_, t)| t)
}

/// Five-point central difference `f'(s)` with step `h`.
pub fn central_diff<F>(mut f: F, s: f64, h: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {h}")));
    }
    let m2 = f(s - 2.0 * h)?;
    let m1 = f(s - h)?;
    let p1 = f(s + h)?;
    let p2 = f(s + 2.0 * h)?;
    Ok((m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932_384_110_774;

    #[test]
    fn arcsine_kernel() {
        let spec = QuadratureSpec::new(0.0, 1.0).unwrap().singular(false, true);
        let r = tanh_sinh_gap(|a| 1.0 / (a.hi_gap * (1.0 + a.x)).sqrt(), &spec).unwrap();
        assert!((r.value - FRAC_PI_2).abs() <= 1e-12);
        assert_eq!(r.method, Method::Quadrature);
        assert!(r.effort > 0);
    }

    #[test]
    fn log_sine_integral() {
        let spec = QuadratureSpec::new(0.0, FRAC_PI_2).unwrap().singular(true, false);
        let r = tanh_sinh(|x| x.sin().ln(), &spec).unwrap();
        assert!((r.value + FRAC_PI_2 * LN_2).abs() <= 1e-12);
    }

    #[test]
    fn arctan_integral_is_catalan() {
        let spec = QuadratureSpec::new(0.0, 1.0).unwrap();
        let r = tanh_sinh(|x| x.atan() / x, &spec).unwrap();
        assert!((r.value - CATALAN).abs() <= 1e-12);
    }

    #[test]
    fn singular_sanity_set() {
        let spec = QuadratureSpec::new(0.0, 1.0).unwrap().singular(true, false);
        let log = tanh_sinh(f64::ln, &spec).unwrap();
        assert!((log.value + 1.0).abs() <= 1e-12);
        let root = tanh_sinh(|x| 1.0 / x.sqrt(), &spec).unwrap();
        assert!((root.value - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn polynomials_exact_at_level_six() {
        let spec = QuadratureSpec::new(-1.0, 2.0).unwrap().max_level(6);
        for deg in 0..=6 {
            let trace = tanh_sinh_trace(|a| a.x.powi(deg), &spec).unwrap();
            let exact = (2f64.powi(deg + 1) - (-1f64).powi(deg + 1)) / (deg + 1) as f64;
            let last = trace.last().unwrap();
            assert_eq!(last.level, 6);
            assert!((last.estimate - exact).abs() <= 1e-14 * exact.abs().max(1.0), "deg {deg}");
        }
    }

    #[test]
    fn never_evaluates_endpoints() {
        let spec = QuadratureSpec::new(0.0, 1.0).unwrap().singular(true, true);
        let r = tanh_sinh(
            |x| {
                assert!(x > 0.0 && x < 1.0);
                1.0
            },
            &spec,
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn integrand_failure_reports_abscissa() {
        let spec = QuadratureSpec::new(0.0, 1.0).unwrap();
        match tanh_sinh(|x| if x > 0.5 { f64::NAN } else { x }, &spec) {
            Err(Error::IntegrandFailure { abscissa, value }) => {
                assert!(abscissa > 0.5);
                assert!(value.is_nan());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn level_cap_reports_non_convergence() {
        let spec = QuadratureSpec::new(0.0, 1.0).unwrap().max_level(4).tol(1e-15);
        // kink in the interior slows tanh-sinh to algebraic convergence
        match tanh_sinh(|x| (x - 1.0 / PI).abs(), &spec) {
            Err(Error::NonConvergence { best }) => assert!(!best.converged),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(1.0, 1.0).is_err());
        assert!(QuadratureSpec::new(0.0, 1.0).unwrap().max_level(13).validate().is_err());
        assert!(QuadratureSpec::new(0.0, 1.0).unwrap().tol(0.0).validate().is_err());
    }

    #[test]
    fn level_differences_shrink() {
        let spec = QuadratureSpec::new(0.0, FRAC_PI_2).unwrap().singular(true, false).max_level(8);
        let trace = tanh_sinh_trace(|a| a.lo_gap.sin().ln(), &spec).unwrap();
        for pair in trace.windows(2).skip(1) {
            assert!(pair[1].diff <= pair[0].diff + 1e-14);
        }
    }

    #[test]
    fn central_diff_polynomial() {
        let d = central_diff(|s| Ok(s * s), 1.0, 1e-3).unwrap();
        assert!((d - 2.0).abs() <= 1e-10);
        assert!(central_diff(|s| Ok(s), 0.0, 0.0).is_err());
    }
}
