use std::cell::Cell;
use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use serde::{Deserialize, Serialize};

use super::{Param, Verifier};
use crate::accel::{accelerate, StreamKind, TermStream};
use crate::elliptic::{ellipe_eval, ellipk_eval, Modulus};
use crate::integrals::CatalanMethod;
use crate::quadrature::{central_diff, tanh_sinh_gap, QuadratureSpec};
use crate::sfcore::{gauss_2f1_at_one, lgamma, pfq_with_caps, PfqParams};
use crate::{Error, EvalResult, Method, Result};

const DIRECT_HEADROOM: f64 = 1e-2;

/// Basis constants for closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Constant {
    One,
    G,
    Pi,
    InvPi,
    GOverPi,
    Ln2,
    PiLn2,
    /// `π log(s/2)`, needs an `s` parameter.
    PiLogHalfS,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coef: f64,
    pub constant: Constant,
}

/// Shape of a parametric hypergeometric series evaluated at `x = s²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesForm {
    /// `(π/2)·s·F(s²)`
    HalfPiS,
    /// `(π/2)·F(s²)`
    HalfPi,
    /// `(π/2)log 2 − (π/16)·s²·F(s²)`
    LogTwoMinus,
}

/// Positive series built from central binomial coefficients or from
/// rescaled terms of `4F3(1,1,3/2,3/2; 2,2,2; 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Series {
    /// `(2)_n/(3)_n = 2/(n+2)` times the base term.
    Pow1,
    /// `((2)_n/(3)_n)²` times the base term.
    Pow2,
    /// `(2)_n/(4)_n = 6/((n+2)(n+3))` times the base term.
    Pow3,
    /// `Σ (2n+1)² C(2n,n)² / (16ⁿ (n+1)³)`
    BinomialBridge,
    /// `Σ 4n C(2n,n)² / (16ⁿ (n+1)²)`
    PartialFraction,
    /// `Σ 4 C(2n,n)² / ((n+1) 16ⁿ)`
    FirstSplit,
    /// `Σ 4 C(2n,n)² / ((n+1)² 16ⁿ)`
    SecondSplit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parametric {
    A,
    B,
    C,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EllipticKind {
    K,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EllipticForm {
    Plain,
    /// `(π/2 − K(s))/s`
    HalfPiMinusOverS,
    /// `(π/2 + K(s))/s`
    HalfPiPlusOverS,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Weight {
    S,
    SLogS,
}

/// A named evaluation route with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "route", rename_all = "snake_case")]
pub enum Route {
    /// `Σ coef·constant`.
    ClosedForm { terms: Vec<Term> },
    /// `scale · Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b))`.
    Gauss { a: f64, b: f64, c: f64, scale: f64 },
    /// `scale · pFq(upper; lower; 1)`.
    PfqAtOne { upper: Vec<f64>, lower: Vec<f64>, scale: f64 },
    /// `pFq(upper; lower; s²)` in the given form.
    PfqInS { upper: Vec<f64>, lower: Vec<f64>, form: SeriesForm },
    Series { series: Series },
    /// `(1+x) Σ (−x)ⁿ/(2n+1)²`.
    WhippleSum,
    /// `3F2(1/2,1,1; 3/2,3/2; 4x/(1+x)²)`.
    WhippleHypergeometric,
    /// `√π Γ(n+2)/Γ(n+3/2) · 3F2(1/2,1/2,−n; 1,3/2; 1)`.
    BerndtSeries,
    /// `3F2(1/2,1,n+3/2; 3/2,n+2; 1)` by its Euler integral.
    BerndtIntegral,
    Integral { which: Parametric },
    /// `scale · I(s) + shift` at a fixed `s`.
    IntegralAt { which: Parametric, s: f64, scale: f64, shift: f64 },
    Derivative { which: Parametric },
    Elliptic { kind: EllipticKind, form: EllipticForm },
    /// `C(s) + D(s)`.
    CPlusD,
    /// `∫₀¹ w(s) C(s) ds` by nested quadrature.
    WeightedC { weight: Weight },
    /// `∫₀^{π/2} log(sin t) dt` or the cosine version.
    LogTrig { cosine: bool },
    /// `∫₀^{π/2} log(1 + cos t) dt`.
    LogOnePlusCos,
    /// Catalan's constant by the route named in a method parameter, or by
    /// `method` when given.
    Catalan { method: Option<CatalanMethod> },
}

fn need_s(param: Param) -> Result<f64> {
    match param {
        Param::S(s) => Ok(s),
        other => Err(Error::InvalidArgument(format!("route needs an s parameter, got {other}"))),
    }
}

fn need_x(param: Param) -> Result<f64> {
    match param {
        Param::X(x) => Ok(x),
        other => Err(Error::InvalidArgument(format!("route needs an x parameter, got {other}"))),
    }
}

fn need_n(param: Param) -> Result<f64> {
    match param {
        Param::N(n) if n > -1.5 => Ok(n),
        other => Err(Error::InvalidArgument(format!("route needs n > -3/2, got {other}"))),
    }
}

fn scaled(r: EvalResult, scale: f64) -> EvalResult {
    EvalResult {
        value: scale * r.value,
        err_estimate: scale.abs() * r.err_estimate,
        ..r
    }
}

fn shifted(r: EvalResult, shift: f64) -> EvalResult {
    EvalResult {
        value: r.value + shift,
        ..r
    }
}

/// `C(2n,n)²/16ⁿ` for `n = 0, 1, …`.
pub(crate) fn binomial_squares() -> impl Iterator<Item = f64> {
    (0u32..).scan(1.0f64, |r, n| {
        let current = *r;
        let q = (2.0 * n as f64 + 1.0) / (2.0 * n as f64 + 2.0);
        *r *= q * q;
        Some(current)
    })
}

pub(crate) fn adamchik_params() -> PfqParams {
    PfqParams::new(vec![1.0, 1.0, 1.5, 1.5], vec![2.0, 2.0, 2.0], 1.0).expect("valid parameters")
}

impl Series {
    pub(crate) fn stream(self) -> TermStream<'static> {
        match self {
            Series::Pow1 | Series::Pow2 | Series::Pow3 => TermStream::new(StreamKind::Monotone, move || {
                let base = adamchik_params();
                let terms: Vec<f64> = base.terms().take(crate::accel::MAX_CAP + 2).collect();
                terms.into_iter().enumerate().map(move |(n, t)| {
                    let n = n as f64;
                    t * match self {
                        Series::Pow1 => 2.0 / (n + 2.0),
                        Series::Pow2 => (2.0 / (n + 2.0)).powi(2),
                        _ => 6.0 / ((n + 2.0) * (n + 3.0)),
                    }
                })
            }),
            _ => TermStream::new(StreamKind::Monotone, move || {
                binomial_squares().enumerate().map(move |(n, r)| {
                    let n = n as f64;
                    let m = n + 1.0;
                    match self {
                        Series::BinomialBridge => (2.0 * n + 1.0).powi(2) * r / (m * m * m),
                        Series::PartialFraction => 4.0 * n * r / (m * m),
                        Series::FirstSplit => 4.0 * r / m,
                        _ => 4.0 * r / (m * m),
                    }
                })
            }),
        }
    }
}

impl Route {
    pub fn evaluate(&self, param: Param, v: &Verifier) -> Result<EvalResult> {
        let st = v.settings();
        match self {
            Route::ClosedForm { terms } => {
                let g = v.catalan_value()?;
                let mut value = 0.0;
                for t in terms {
                    let c = match t.constant {
                        Constant::One => 1.0,
                        Constant::G => g,
                        Constant::Pi => PI,
                        Constant::InvPi => 1.0 / PI,
                        Constant::GOverPi => g / PI,
                        Constant::Ln2 => LN_2,
                        Constant::PiLn2 => PI * LN_2,
                        Constant::PiLogHalfS => {
                            let s = need_s(param)?;
                            if s <= 0.0 {
                                return Err(Error::Domain(format!("log(s/2) needs s > 0, got {s}")));
                            }
                            PI * (s / 2.0).ln()
                        }
                    };
                    value += t.coef * c;
                }
                Ok(EvalResult::closed_form(value))
            }
            Route::Gauss { a, b, c, scale } => {
                Ok(EvalResult::closed_form(scale * gauss_2f1_at_one(*a, *b, *c)?))
            }
            Route::PfqAtOne { upper, lower, scale } => {
                let p = PfqParams::new(upper.clone(), lower.clone(), 1.0)?;
                pfq_with_caps(&p, st.series_tol, st.max_terms, st.accel_cap).map(|r| scaled(r, *scale))
            }
            Route::PfqInS { upper, lower, form } => {
                let s = need_s(param)?;
                let p = PfqParams::new(upper.clone(), lower.clone(), s * s)?;
                // Direct sums are cheap; leave headroom for the outer scale factor.
                let tol = (st.series_tol * DIRECT_HEADROOM).max(f64::EPSILON);
                let r = pfq_with_caps(&p, tol, st.max_terms, st.accel_cap)?;
                Ok(match form {
                    SeriesForm::HalfPiS => scaled(r, FRAC_PI_2 * s),
                    SeriesForm::HalfPi => scaled(r, FRAC_PI_2),
                    SeriesForm::LogTwoMinus => shifted(scaled(r, -PI / 16.0 * s * s), FRAC_PI_2 * LN_2),
                })
            }
            Route::Series { series } => accelerate(&series.stream(), st.series_tol, st.accel_cap),
            Route::WhippleSum => {
                let x = need_x(param)?;
                if x.abs() > 1.0 {
                    return Err(Error::Domain(format!("Whipple sum needs |x| <= 1, got {x}")));
                }
                let kind = if x > 0.0 { StreamKind::Alternating } else { StreamKind::Monotone };
                let stream = TermStream::from_fn(kind, move |n| {
                    (-x).powi(n as i32) / ((2 * n + 1) as f64).powi(2)
                });
                accelerate(&stream, st.series_tol, st.accel_cap).map(|r| scaled(r, 1.0 + x))
            }
            Route::WhippleHypergeometric => {
                let x = need_x(param)?;
                if !(x > -1.0 && x <= 1.0) {
                    return Err(Error::Domain(format!("Whipple argument needs -1 < x <= 1, got {x}")));
                }
                let z = 4.0 * x / ((1.0 + x) * (1.0 + x));
                if z < -crate::sfcore::DIRECT_SERIES_RADIUS {
                    whipple_continuation(z, v)
                } else {
                    let p = PfqParams::new(vec![0.5, 1.0, 1.0], vec![1.5, 1.5], z)?;
                    pfq_with_caps(&p, st.series_tol, st.max_terms, st.accel_cap)
                }
            }
            Route::BerndtSeries => {
                let n = need_n(param)?;
                let ratio = (lgamma(n + 2.0)? - lgamma(n + 1.5)?).exp();
                let p = PfqParams::new(vec![0.5, 0.5, -n], vec![1.0, 1.5], 1.0)?;
                pfq_with_caps(&p, st.series_tol, st.max_terms, st.accel_cap)
                    .map(|r| scaled(r, PI.sqrt() * ratio))
            }
            Route::BerndtIntegral => berndt_integral(need_n(param)?, v),
            Route::Integral { which } => integral(*which, need_s(param)?, v),
            Route::IntegralAt { which, s, scale, shift } => {
                integral(*which, *s, v).map(|r| shifted(scaled(r, *scale), *shift))
            }
            Route::Derivative { which } => {
                let s = need_s(param)?;
                let effort = Cell::new(0usize);
                let value = central_diff(
                    |t| {
                        let r = integral(*which, t, v)?;
                        effort.set(effort.get() + r.effort);
                        Ok(r.value)
                    },
                    s,
                    st.fd_step,
                )?;
                Ok(EvalResult {
                    value,
                    err_estimate: st.fd_step.powi(4),
                    effort: effort.get(),
                    converged: true,
                    method: Method::Quadrature,
                })
            }
            Route::Elliptic { kind, form } => {
                let s = need_s(param)?;
                let m = Modulus::new(s)?;
                let r = match kind {
                    EllipticKind::K => ellipk_eval(m)?,
                    EllipticKind::E => ellipe_eval(m)?,
                };
                Ok(match form {
                    EllipticForm::Plain => r,
                    EllipticForm::HalfPiMinusOverS => scaled(shifted(scaled(r, -1.0), FRAC_PI_2), 1.0 / s),
                    EllipticForm::HalfPiPlusOverS => scaled(shifted(r, FRAC_PI_2), 1.0 / s),
                })
            }
            Route::CPlusD => {
                let s = need_s(param)?;
                let c = integral(Parametric::C, s, v)?;
                let d = integral(Parametric::D, s, v)?;
                Ok(EvalResult {
                    value: c.value + d.value,
                    err_estimate: c.err_estimate + d.err_estimate,
                    effort: c.effort + d.effort,
                    converged: true,
                    method: Method::Quadrature,
                })
            }
            Route::WeightedC { weight } => weighted_c(*weight, v),
            Route::LogTrig { cosine } => {
                let spec = half_pi_spec(v)?.singular(!cosine, *cosine);
                if *cosine {
                    tanh_sinh_gap(|a| a.hi_gap.sin().ln(), &spec)
                } else {
                    tanh_sinh_gap(|a| a.lo_gap.sin().ln(), &spec)
                }
            }
            Route::LogOnePlusCos => {
                let spec = half_pi_spec(v)?;
                tanh_sinh_gap(|a| a.hi_gap.sin().ln_1p(), &spec)
            }
            Route::Catalan { method } => {
                let method = match (method, param) {
                    (Some(m), _) => *m,
                    (None, Param::Method(m)) => m,
                    (None, other) => {
                        return Err(Error::InvalidArgument(format!(
                            "route needs a method parameter, got {other}"
                        )))
                    }
                };
                v.integrals().catalan(method)
            }
        }
    }
}

fn half_pi_spec(v: &Verifier) -> Result<QuadratureSpec> {
    Ok(QuadratureSpec::new(0.0, FRAC_PI_2)?
        .tol(v.settings().quad_tol)
        .max_level(v.settings().quad_level))
}

fn integral(which: Parametric, s: f64, v: &Verifier) -> Result<EvalResult> {
    let ig = v.integrals();
    match which {
        Parametric::A => ig.a(s),
        Parametric::B => ig.b(s),
        Parametric::C => ig.c(s),
        Parametric::D => ig.d(s),
    }
}

/// `3F2(1/2,1,1; 3/2,3/2; z)` for `z < 0` as `(1/w)∫₀^w arsinh(u)/(u√(1+u²)) du`
/// with `w = √(−z)`.
fn whipple_continuation(z: f64, v: &Verifier) -> Result<EvalResult> {
    let w = (-z).sqrt();
    let spec = QuadratureSpec::new(0.0, w)?
        .tol(v.settings().quad_tol)
        .max_level(v.settings().quad_level);
    let r = tanh_sinh_gap(
        |a| {
            let u = a.lo_gap;
            let ratio = if u < crate::integrals::SMALL_ARGUMENT {
                1.0 - u * u / 6.0
            } else {
                u.asinh() / u
            };
            ratio / (1.0 + u * u).sqrt()
        },
        &spec,
    )?;
    Ok(scaled(r, 1.0 / w))
}

/// Euler integral of `3F2(1/2,1,n+3/2; 3/2,n+2; 1)` after `t = sin²φ`:
/// `Γ(n+2)/(Γ(n+3/2)√π) ∫₀^{π/2} 2 sin^{2n+1}φ artanh(sin φ) dφ`.
fn berndt_integral(n: f64, v: &Verifier) -> Result<EvalResult> {
    let ratio = (lgamma(n + 2.0)? - lgamma(n + 1.5)?).exp() / PI.sqrt();
    let spec = half_pi_spec(v)?.singular(n < -0.5, true);
    let r = tanh_sinh_gap(
        |a| {
            let sin = a.lo_gap.sin();
            // 1 − sin φ = 2 sin²((π/2 − φ)/2)
            let ln_one_minus = LN_2 + 2.0 * (0.5 * a.hi_gap).sin().ln();
            let artanh = 0.5 * (sin.ln_1p() - ln_one_minus);
            2.0 * sin.powf(2.0 * n + 1.0) * artanh
        },
        &spec,
    )?;
    Ok(scaled(r, ratio))
}

/// `∫₀¹ w(s) C(s) ds` with `C` itself computed by quadrature.
fn weighted_c(weight: Weight, v: &Verifier) -> Result<EvalResult> {
    let ig = v.integrals();
    let spec = QuadratureSpec::new(0.0, 1.0)?
        .tol(v.settings().quad_tol)
        .max_level(v.settings().quad_level)
        .singular(false, true);
    let failure: Cell<Option<Error>> = Cell::new(None);
    let effort = Cell::new(0usize);
    let r = tanh_sinh_gap(
        |a| {
            let s = a.lo_gap;
            match ig.c(s) {
                Ok(c) => {
                    effort.set(effort.get() + c.effort);
                    let w = match weight {
                        Weight::S => s,
                        Weight::SLogS => s * s.ln(),
                    };
                    w * c.value
                }
                Err(e) => {
                    failure.set(Some(e));
                    f64::NAN
                }
            }
        },
        &spec,
    );
    if let Some(e) = failure.take() {
        return Err(e);
    }
    let r = r?;
    Ok(EvalResult {
        effort: r.effort + effort.get(),
        ..r
    })
}
