//! Gamma-function utilities, Pochhammer symbols and generalized
//! hypergeometric series `pFq(a₁..a_p; b₁..b_q; x)`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::accel::{self, StreamKind, TermStream};
use crate::{Error, EvalResult, Method, Result};

/// Term cap for direct summation. Hitting it is an error.
pub const DIRECT_TERM_CAP: usize = 100_000;

/// Below this `|x|` a pFq series is summed directly; at or above it the
/// terms decay too slowly for a geometric tail bound and are accelerated.
pub const DIRECT_SERIES_RADIUS: f64 = 0.95;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

// Lanczos kernel, g = 7, nine terms.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

// B_2, B_4, ..., B_18 divided by (2j)!.
const BERNOULLI_OVER_FACTORIAL: [f64; 9] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
    43_867.0 / 798.0 / 6_402_373_705_728_000.0,
];

const ZETA_TERMS: usize = 64;

/// `ζ(k) − 1` for `k = 0..ZETA_TERMS` (entries 0 and 1 unused), summed
/// directly up to n = 9 with an Euler–Maclaurin tail from n = 10.
fn zeta_minus_one() -> &'static [f64; ZETA_TERMS] {
    static TABLE: OnceLock<[f64; ZETA_TERMS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        const N: f64 = 10.0;
        let mut table = [0.0; ZETA_TERMS];
        for (k, slot) in table.iter_mut().enumerate().skip(2) {
            let kf = k as f64;
            let mut tail = N.powf(1.0 - kf) / (kf - 1.0) + 0.5 * N.powf(-kf);
            // rising factorial (k)_{2j-1}
            let mut rising = kf;
            let mut power = N.powf(-kf - 1.0);
            for (j, b) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
                if j > 0 {
                    let m = (2 * j) as f64;
                    rising *= (kf + m - 1.0) * (kf + m);
                    power /= N * N;
                }
                tail += b * rising * power;
            }
            let mut head = 0.0;
            for n in (2..10).rev() {
                head += (n as f64).powf(-kf);
            }
            *slot = head + tail;
        }
        table
    })
}

/// `log Γ(2 + z)` for `|z| ≤ 1` from its Taylor series about 2.
fn ln_gamma_near_two(z: f64) -> f64 {
    let zeta = zeta_minus_one();
    let mut sum = 0.0;
    let mut power = -z;
    let mut terms = [0.0; ZETA_TERMS];
    for (k, slot) in terms.iter_mut().enumerate().skip(2) {
        power *= -z;
        *slot = zeta[k] * power / k as f64;
        if slot.abs() < 1e-18 * z.abs() {
            break;
        }
    }
    for t in terms.iter().rev() {
        sum += t;
    }
    (1.0 - EULER_GAMMA) * z + sum
}

fn lanczos_ln_gamma(x: f64) -> f64 {
    let xm1 = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (xm1 + i as f64);
    }
    let t = xm1 + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (xm1 + 0.5) * t.ln() - t + acc.ln()
}

/// Natural log of the gamma function for `x > 0`.
///
/// Uses the Taylor series about 2 on `[0.5, 3)` (so the zeros at 1 and 2 keep
/// full relative accuracy), the Lanczos kernel above, and `Γ(x+1) = xΓ(x)`
/// below.
pub fn lgamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("lgamma requires x > 0, got {x}")));
    }
    Ok(ln_gamma_positive(x))
}

fn ln_gamma_positive(x: f64) -> f64 {
    if x < 0.5 {
        ln_gamma_near_two(x) - x.ln() - x.ln_1p()
    } else if x < 1.5 {
        ln_gamma_near_two(x - 1.0) - x.ln()
    } else if x < 3.0 {
        ln_gamma_near_two(x - 2.0)
    } else {
        lanczos_ln_gamma(x)
    }
}

/// `log|Γ(x)|` and the sign of `Γ(x)` for any `x` that is not a pole.
fn ln_gamma_signed(x: f64) -> Option<(f64, f64)> {
    if x > 0.0 {
        return Some((ln_gamma_positive(x), 1.0));
    }
    if x == x.floor() {
        return None;
    }
    // Γ(x)Γ(1−x) = π / sin(πx)
    let s = (PI * x).sin();
    let value = PI.ln() - s.abs().ln() - ln_gamma_positive(1.0 - x);
    Some((value, s.signum()))
}

/// Rising factorial `(a)_k = a(a+1)···(a+k−1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (a + i as f64))
}

/// Central binomial coefficient `C(2n, n)`: exact integer arithmetic for
/// `n ≤ 30`, log-gamma above.
pub fn central_binomial(n: u32) -> f64 {
    if n <= 30 {
        let n = u64::from(n);
        let mut c: u64 = 1;
        for i in 1..=n {
            c = c * (n + i) / i;
        }
        c as f64
    } else {
        let n = f64::from(n);
        (ln_gamma_positive(2.0 * n + 1.0) - 2.0 * ln_gamma_positive(n + 1.0)).exp()
    }
}

/// Gauss's theorem: `₂F₁(a, b; c; 1) = Γ(c)Γ(c−a−b) / (Γ(c−a)Γ(c−b))`.
pub fn gauss_2f1_at_one(a: f64, b: f64, c: f64) -> Result<f64> {
    if c - a - b <= 0.0 {
        return Err(Error::Domain(format!(
            "Gauss summation needs c - a - b > 0, got {}",
            c - a - b
        )));
    }
    if a == 0.0 || b == 0.0 {
        return Ok(1.0);
    }
    let pole = |v: f64| Error::Domain(format!("gamma pole at {v} in Gauss summation"));
    let (lc, sc) = ln_gamma_signed(c).ok_or_else(|| pole(c))?;
    let (lcab, scab) = ln_gamma_signed(c - a - b).ok_or_else(|| pole(c - a - b))?;
    let (lca, sca) = ln_gamma_signed(c - a).ok_or_else(|| pole(c - a))?;
    let (lcb, scb) = ln_gamma_signed(c - b).ok_or_else(|| pole(c - b))?;
    Ok(sc * scab * sca * scb * (lc + lcab - lca - lcb).exp())
}

/// Parameters of `pFq(a₁..a_p; b₁..b_q; x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PfqParams {
    upper: Vec<f64>,
    lower: Vec<f64>,
    x: f64,
}

impl PfqParams {
    pub fn new(upper: impl Into<Vec<f64>>, lower: impl Into<Vec<f64>>, x: f64) -> Result<Self> {
        let upper = upper.into();
        let lower = lower.into();
        if upper.iter().chain(&lower).any(|v| !v.is_finite()) || !x.is_finite() {
            return Err(Error::InvalidArgument("pFq parameters must be finite".into()));
        }
        if let Some(b) = lower.iter().find(|&&b| b <= 0.0 && b == b.floor()) {
            return Err(Error::InvalidArgument(format!(
                "lower parameter {b} is zero or a negative integer"
            )));
        }
        if upper.len() > lower.len() + 1 {
            return Err(Error::InvalidArgument(format!(
                "{}F{} has zero radius of convergence",
                upper.len(),
                lower.len()
            )));
        }
        Ok(PfqParams { upper, lower, x })
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn argument(&self) -> f64 {
        self.x
    }

    /// `Σ lower − Σ upper`; a positive margin makes the series converge at `x = 1`.
    pub fn margin(&self) -> f64 {
        self.lower.iter().sum::<f64>() - self.upper.iter().sum::<f64>()
    }

    /// Number of terms if an upper parameter is zero or a negative integer.
    pub fn terminating_length(&self) -> Option<usize> {
        self.upper
            .iter()
            .filter(|&&a| a <= 0.0 && a == a.floor())
            .map(|&a| (-a) as usize + 1)
            .min()
    }

    /// Series terms `t₀ = 1, t_{k+1} = t_k · Π(aᵢ+k)/Π(bⱼ+k) · x/(k+1)`.
    pub fn terms(&self) -> PfqTerms<'_> {
        PfqTerms {
            params: self,
            k: 0,
            term: 1.0,
        }
    }

    fn ratio(&self, k: usize) -> f64 {
        let kf = k as f64;
        let num: f64 = self.upper.iter().map(|a| a + kf).product();
        let den: f64 = self.lower.iter().map(|b| b + kf).product();
        num / den * self.x / (kf + 1.0)
    }
}

/// Iterator over the terms of a pFq series.
#[derive(Debug, Clone)]
pub struct PfqTerms<'a> {
    params: &'a PfqParams,
    k: usize,
    term: f64,
}

impl Iterator for PfqTerms<'_> {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let current = self.term;
        self.term *= self.params.ratio(self.k);
        self.k += 1;
        Some(current)
    }
}

/// True iff the unit-argument series converges (`Σ lower − Σ upper > 0`).
pub fn pfq_converges_at_one(p: &PfqParams) -> bool {
    p.margin() > 0.0
}

/// Evaluate `pFq` to absolute tolerance `tol` with the default term caps.
pub fn pfq(p: &PfqParams, tol: f64) -> Result<EvalResult> {
    pfq_with_caps(p, tol, DIRECT_TERM_CAP, accel::MAX_CAP)
}

/// Evaluate `pFq` with explicit caps for direct and accelerated summation.
pub fn pfq_with_caps(
    p: &PfqParams,
    tol: f64,
    max_terms: usize,
    accel_cap: usize,
) -> Result<EvalResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let x = p.x;
    if x == 0.0 {
        return Ok(EvalResult {
            value: 1.0,
            err_estimate: 0.0,
            effort: 1,
            converged: true,
            method: Method::DirectSeries,
        });
    }
    if let Some(len) = p.terminating_length() {
        let value = p.terms().take(len).sum();
        return Ok(EvalResult {
            value,
            err_estimate: 0.0,
            effort: len,
            converged: true,
            method: Method::DirectSeries,
        });
    }
    let entire = p.upper.len() <= p.lower.len();
    if !entire {
        if x.abs() > 1.0 {
            return Err(Error::Domain(format!(
                "series diverges for |x| > 1 (x = {x}); analytic continuation is not provided"
            )));
        }
        if x.abs() == 1.0 && !pfq_converges_at_one(p) {
            return Err(Error::Domain(format!(
                "series diverges at |x| = 1 with convergence margin {}",
                p.margin()
            )));
        }
    }
    if entire || x.abs() < DIRECT_SERIES_RADIUS {
        return direct_sum(p, tol, max_terms);
    }

    let kind = if x < 0.0 {
        StreamKind::Alternating
    } else {
        StreamKind::Monotone
    };
    let stream = TermStream::new(kind, || p.terms());
    accel::accelerate(&stream, tol, accel_cap)
}

fn direct_sum(p: &PfqParams, tol: f64, max_terms: usize) -> Result<EvalResult> {
    // Past this index every ratio factor (a+k)/(b+k) has settled.
    let settle = p
        .upper
        .iter()
        .chain(&p.lower)
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .ceil() as usize
        + 1;
    let asymptotic_ratio = if p.upper.len() == p.lower.len() + 1 {
        p.x.abs()
    } else {
        0.0
    };
    let mut sum = 0.0;
    let mut term = 1.0;
    let mut tail = f64::INFINITY;
    for k in 0..max_terms {
        sum += term;
        let ratio = p.ratio(k);
        let next = term * ratio;
        let rho = ratio.abs().max(asymptotic_ratio);
        if k >= settle && rho < 1.0 {
            tail = next.abs() / (1.0 - rho);
            if tail <= tol {
                return Ok(EvalResult {
                    value: sum,
                    err_estimate: tail,
                    effort: k + 1,
                    converged: true,
                    method: Method::DirectSeries,
                });
            }
        }
        if next == 0.0 {
            return Ok(EvalResult {
                value: sum,
                err_estimate: 0.0,
                effort: k + 1,
                converged: true,
                method: Method::DirectSeries,
            });
        }
        term = next;
    }
    Err(Error::NonConvergence {
        best: EvalResult {
            value: sum,
            err_estimate: tail,
            effort: max_terms,
            converged: false,
            method: Method::DirectSeries,
        },
    })
}
