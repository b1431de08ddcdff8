//! The parametric integrals A, B, C, D and several routes to Catalan's
//! constant.
//!
//! ```text
//! A(s) = ∫₀¹ arcsin(sx) / (x√(1−x²)) dx
//! B(s) = ∫₀¹ (arcsin(sx) + sx√(1−s²x²)) / (2x√(1−x²)) dx
//! C(s) = ∫₀¹ log(1 + √(1−s²x²)) / √(1−x²) dx
//! D(s) = ∫₀¹ log(1 − √(1−s²x²)) / √(1−x²) dx
//! ```
//!
//! All four are integrated in `θ` after `x = sin θ`.

use std::f64::consts::{FRAC_PI_2, LN_2};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::accel::{wynn_epsilon, StreamKind, TermStream};
use crate::elliptic::{ellipe_complement, ellipk_complement};
use crate::quadrature::{tanh_sinh_gap, Abscissa, QuadratureSpec};
use crate::{Error, EvalResult, Result, Settings};

/// Below this `sin θ` the ratio `arcsin(s sin θ)/sin θ` is taken from its
/// Taylor series.
pub const SMALL_ARGUMENT: f64 = 1e-6;

/// Parameter of a parametric integral, `|s| ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ParamPoint(f64);

impl ParamPoint {
    pub fn new(s: f64) -> Result<Self> {
        if !s.is_finite() || s.abs() > 1.0 {
            return Err(Error::Domain(format!("parameter must satisfy |s| <= 1, got {s}")));
        }
        Ok(ParamPoint(s))
    }

    pub fn s(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalanMethod {
    BetaSeries,
    KIntegral,
    EIntegral,
    ArctanIntegral,
    ArcsinIntegral,
}

impl CatalanMethod {
    pub const ALL: [CatalanMethod; 5] = [
        CatalanMethod::BetaSeries,
        CatalanMethod::KIntegral,
        CatalanMethod::EIntegral,
        CatalanMethod::ArctanIntegral,
        CatalanMethod::ArcsinIntegral,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CatalanMethod::BetaSeries => "beta_series",
            CatalanMethod::KIntegral => "k_integral",
            CatalanMethod::EIntegral => "e_integral",
            CatalanMethod::ArctanIntegral => "arctan_integral",
            CatalanMethod::ArcsinIntegral => "arcsin_integral",
        }
    }
}

impl fmt::Display for CatalanMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CatalanMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CatalanMethod::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown Catalan method `{s}` (expected one of {})",
                    CatalanMethod::ALL.map(|m| m.as_str()).join(", ")
                ))
            })
    }
}

/// Quantities derived from `θ` without cancellation.
struct Angle {
    sin: f64,
    cos: f64,
}

impl Angle {
    fn of(a: &Abscissa) -> Self {
        Angle {
            sin: a.lo_gap.sin(),
            cos: a.hi_gap.sin(),
        }
    }

    /// `√(1 − s² sin²θ)`
    fn root(&self, s: f64) -> f64 {
        let s = s.abs();
        (self.cos * self.cos + (1.0 - s) * (1.0 + s) * self.sin * self.sin).sqrt()
    }

    /// `arcsin(s sin θ) / sin θ`
    fn arcsin_ratio(&self, s: f64) -> f64 {
        if self.sin < SMALL_ARGUMENT {
            let y2 = (s * self.sin).powi(2);
            s * (1.0 + y2 / 6.0 + 3.0 * y2 * y2 / 40.0)
        } else {
            (s * self.sin).atan2(self.root(s)) / self.sin
        }
    }
}

/// Evaluator for the parametric integrals under fixed numerical settings.
#[derive(Debug, Clone, Copy, Default)]
pub struct Integrals {
    pub settings: Settings,
}

impl Integrals {
    pub fn new(settings: Settings) -> Self {
        Integrals { settings }
    }

    fn spec(&self, singular_lo: bool, singular_hi: bool) -> Result<QuadratureSpec> {
        Ok(QuadratureSpec::new(0.0, FRAC_PI_2)?
            .tol(self.settings.quad_tol)
            .max_level(self.settings.quad_level)
            .singular(singular_lo, singular_hi))
    }

    pub fn a(&self, s: f64) -> Result<EvalResult> {
        let s = ParamPoint::new(s)?.s();
        if s == 0.0 {
            return Ok(EvalResult::closed_form(0.0));
        }
        tanh_sinh_gap(|a| Angle::of(a).arcsin_ratio(s), &self.spec(false, false)?)
    }

    pub fn b(&self, s: f64) -> Result<EvalResult> {
        let s = ParamPoint::new(s)?.s();
        if s == 0.0 {
            return Ok(EvalResult::closed_form(0.0));
        }
        tanh_sinh_gap(
            |a| {
                let t = Angle::of(a);
                0.5 * (t.arcsin_ratio(s) + s * t.root(s))
            },
            &self.spec(false, false)?,
        )
    }

    pub fn c(&self, s: f64) -> Result<EvalResult> {
        let s = ParamPoint::new(s)?.s();
        if s == 0.0 {
            return Ok(EvalResult::closed_form(FRAC_PI_2 * LN_2));
        }
        tanh_sinh_gap(|a| Angle::of(a).root(s).ln_1p(), &self.spec(false, false)?)
    }

    /// `1 − √(1−s²sin²θ) = s² sin²θ / (1 + √(1−s²sin²θ))` keeps the log
    /// accurate where the root is close to 1.
    pub fn d(&self, s: f64) -> Result<EvalResult> {
        let s = ParamPoint::new(s)?.s();
        if s == 0.0 {
            return Err(Error::Domain("D(s) diverges at s = 0".into()));
        }
        let log_s = s.abs().ln();
        tanh_sinh_gap(
            |a| {
                let t = Angle::of(a);
                2.0 * (log_s + t.sin.ln()) - t.root(s).ln_1p()
            },
            &self.spec(true, true)?,
        )
    }

    pub fn catalan(&self, method: CatalanMethod) -> Result<EvalResult> {
        match method {
            CatalanMethod::BetaSeries => {
                let stream = TermStream::from_fn(StreamKind::Alternating, |n| {
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    sign / ((2 * n + 1) as f64).powi(2)
                });
                wynn_epsilon(&stream, self.settings.series_tol, self.settings.accel_cap)
            }
            CatalanMethod::KIntegral => {
                let spec = self.unit_spec(true)?;
                let r = tanh_sinh_gap(|a| k_at_gap(a.hi_gap), &spec)?;
                Ok(EvalResult {
                    value: 0.5 * r.value,
                    err_estimate: 0.5 * r.err_estimate,
                    ..r
                })
            }
            CatalanMethod::EIntegral => {
                let spec = self.unit_spec(true)?;
                let r = tanh_sinh_gap(|a| e_at_gap(a.hi_gap), &spec)?;
                Ok(EvalResult {
                    value: r.value - 0.5,
                    ..r
                })
            }
            CatalanMethod::ArctanIntegral => {
                let spec = self.unit_spec(false)?;
                tanh_sinh_gap(
                    |a| {
                        let x = a.x;
                        if x < SMALL_ARGUMENT {
                            1.0 - x * x / 3.0
                        } else {
                            x.atan() / x
                        }
                    },
                    &spec,
                )
            }
            CatalanMethod::ArcsinIntegral => {
                let r = self.a(1.0)?;
                Ok(EvalResult {
                    value: 0.5 * r.value,
                    err_estimate: 0.5 * r.err_estimate,
                    ..r
                })
            }
        }
    }

    fn unit_spec(&self, singular_hi: bool) -> Result<QuadratureSpec> {
        Ok(QuadratureSpec::new(0.0, 1.0)?
            .tol(self.settings.quad_tol)
            .max_level(self.settings.quad_level)
            .singular(false, singular_hi))
    }
}

/// `s' = √(1−s²)` from the gap `1 − s`.
fn complement_from_gap(gap: f64) -> f64 {
    (gap * (2.0 - gap)).sqrt()
}

fn k_at_gap(gap: f64) -> f64 {
    ellipk_complement(complement_from_gap(gap)).map_or(f64::NAN, |r| r.value)
}

fn e_at_gap(gap: f64) -> f64 {
    ellipe_complement(complement_from_gap(gap)).map_or(f64::NAN, |r| r.value)
}

pub fn integral_a(s: f64) -> Result<EvalResult> {
    Integrals::default().a(s)
}

pub fn integral_b(s: f64) -> Result<EvalResult> {
    Integrals::default().b(s)
}

pub fn integral_c(s: f64) -> Result<EvalResult> {
    Integrals::default().c(s)
}

pub fn integral_d(s: f64) -> Result<EvalResult> {
    Integrals::default().d(s)
}

/// Catalan's constant by the named route, with default settings.
pub fn catalan(method: CatalanMethod) -> Result<EvalResult> {
    Integrals::default().catalan(method)
}
