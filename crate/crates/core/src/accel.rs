//! Sequence acceleration for slowly convergent series.
//!
//! Both transforms work on partial sums `S_n = t₀ + … + t_n`. Alternating
//! streams are sampled at every index. Monotone streams whose terms decay
//! like a power of `n` (the unit-argument hypergeometric case) converge
//! logarithmically; consecutive partial sums are then numerically useless
//! beyond ~1e-10, so monotone streams are also sampled at `n = 2^l − 1`,
//! where the error becomes a sum of geometric sequences in `l`.

use std::rc::Rc;

use crate::{Error, EvalResult, Method, Result};

/// Upper bound on the number of terms any accelerator may consume.
pub const MAX_CAP: usize = 4000;

/// Denominators below this magnitude abort the transform.
pub const BREAKDOWN_THRESHOLD: f64 = 1e-300;

// Consecutive epsilon table for monotone streams is only kept this long.
const CONSECUTIVE_WINDOW: usize = 100;

// Term ratios whose gap to 1 shrinks faster than this when `n` doubles mark
// a logarithmic stream.
const LINEAR_GAP_RATIO: f64 = 0.75;

// Estimates before this index are never accepted as converged.
const MIN_ESTIMATES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamKind {
    /// Terms eventually alternate in sign.
    Alternating,
    /// Terms eventually keep one sign and decrease in magnitude.
    Monotone,
}

/// A restartable source of series terms `t₀, t₁, …`.
///
/// Each call to [`TermStream::terms`] starts again from `t₀`, so the same
/// stream can be handed to several accelerators.
pub struct TermStream<'a> {
    kind: StreamKind,
    source: Box<dyn Fn() -> Box<dyn Iterator<Item = f64> + 'a> + 'a>,
}

impl<'a> TermStream<'a> {
    pub fn new<F, I>(kind: StreamKind, make: F) -> Self
    where
        F: Fn() -> I + 'a,
        I: Iterator<Item = f64> + 'a,
    {
        TermStream {
            kind,
            source: Box::new(move || Box::new(make())),
        }
    }

    /// Stream whose `n`-th term is `term(n)`.
    pub fn from_fn<F>(kind: StreamKind, term: F) -> Self
    where
        F: Fn(usize) -> f64 + 'a,
    {
        let term = Rc::new(term);
        TermStream::new(kind, move || {
            let term = Rc::clone(&term);
            (0..).map(move |n| term(n))
        })
    }

    pub fn kind(&self) -> StreamKind {
        self.kind
    }

    pub fn terms(&self) -> Box<dyn Iterator<Item = f64> + 'a> {
        (self.source)()
    }
}

impl std::fmt::Debug for TermStream<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TermStream").field("kind", &self.kind).finish()
    }
}

/// Partial sums with one term of lookahead.
struct PartialSums<'a> {
    terms: Box<dyn Iterator<Item = f64> + 'a>,
    /// index of the last term included in `sum`
    index: usize,
    sum: f64,
    next: f64,
    consumed: usize,
}

impl<'a> PartialSums<'a> {
    fn new(stream: &TermStream<'a>) -> Self {
        let mut terms = stream.terms();
        let first = terms.next().unwrap_or(0.0);
        let next = terms.next().unwrap_or(0.0);
        PartialSums {
            terms,
            index: 0,
            sum: first,
            next,
            consumed: 2,
        }
    }

    /// Advance to `S_n` (n ≥ current index); returns `(S_n, t_{n+1})`.
    fn advance_to(&mut self, n: usize) -> (f64, f64) {
        while self.index < n {
            self.sum += self.next;
            self.next = self.terms.next().unwrap_or(0.0);
            self.index += 1;
            self.consumed += 1;
        }
        (self.sum, self.next)
    }
}

/// Index of the `l`-th sampled partial sum.
fn sample_index(kind: StreamKind, l: usize) -> usize {
    match kind {
        StreamKind::Alternating => l,
        StreamKind::Monotone => (1usize << l.min(62)) - 1,
    }
}

fn check_cap(cap: usize, tol: f64) -> Result<()> {
    if cap > MAX_CAP {
        return Err(Error::InvalidArgument(format!(
            "accelerator cap {cap} exceeds {MAX_CAP}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

/// Tracks successive estimates and the best-settled one.
struct Acceptance {
    last: Option<f64>,
    count: usize,
    best: Option<(f64, f64)>,
}

impl Acceptance {
    fn new() -> Self {
        Acceptance {
            last: None,
            count: 0,
            best: None,
        }
    }

    /// Records an estimate; returns the difference to the previous one.
    fn push(&mut self, estimate: f64) -> Option<f64> {
        let diff = self.last.map(|prev| (estimate - prev).abs());
        self.last = Some(estimate);
        self.count += 1;
        if let Some(d) = diff {
            if d.is_finite() && self.best.is_none_or(|(_, bd)| d < bd) {
                self.best = Some((estimate, d));
            }
        }
        diff
    }

    fn settled(&self, diff: Option<f64>, tol: f64) -> bool {
        self.count > MIN_ESTIMATES && diff.is_some_and(|d| d <= tol)
    }
}

fn accepted(value: f64, err: f64, effort: usize) -> EvalResult {
    EvalResult {
        value,
        err_estimate: err,
        effort,
        converged: true,
        method: Method::Accelerated,
    }
}

fn unconverged(acc: &Acceptance, fallback: f64, effort: usize) -> Error {
    let (value, err_estimate) = acc.best.unwrap_or((fallback, f64::INFINITY));
    Error::NonConvergence {
        best: EvalResult {
            value,
            err_estimate,
            effort,
            converged: false,
            method: Method::Accelerated,
        },
    }
}

/// True when `|t_{n+1}/t_n|` stays below 1 by a margin that does not close
/// as `n` doubles.
fn looks_linear(terms: &[f64], n: usize) -> bool {
    let ratio = |k: usize| (terms[k + 1] / terms[k]).abs();
    if n < 2 || n + 1 >= terms.len() {
        return false;
    }
    let (late, early) = (ratio(n), ratio(n / 2));
    late.is_finite() && early.is_finite() && late < 1.0 && 1.0 - late >= LINEAR_GAP_RATIO * (1.0 - early)
}

/// Wynn's epsilon table kept as a single rolling anti-diagonal.
struct EpsilonTable {
    diagonal: Vec<f64>,
    broken: bool,
}

impl EpsilonTable {
    fn new() -> Self {
        EpsilonTable {
            diagonal: Vec::new(),
            broken: false,
        }
    }

    /// Appends `S_N` and returns the newest even-column estimate.
    fn push(&mut self, s: f64) -> f64 {
        let e = &mut self.diagonal;
        e.push(s);
        let n = e.len() - 1;
        let mut aux2 = 0.0;
        for j in (1..=n).rev() {
            let aux1 = aux2;
            aux2 = e[j - 1];
            let diff = e[j] - aux2;
            if diff.abs() < BREAKDOWN_THRESHOLD || !diff.is_finite() {
                self.broken = true;
                e[j - 1] = f64::MAX;
            } else {
                e[j - 1] = aux1 + 1.0 / diff;
            }
        }
        if n % 2 == 0 {
            e[0]
        } else {
            e[1]
        }
    }
}

/// Wynn epsilon algorithm; the value is read from the even columns.
///
/// Monotone streams run a table over the first consecutive partial sums and
/// a second table over `S_{2^l−1}`; whichever settles first is returned. The
/// consecutive table is trusted only while the terms converge linearly.
pub fn wynn_epsilon(ts: &TermStream<'_>, tol: f64, cap: usize) -> Result<EvalResult> {
    check_cap(cap, tol)?;
    let mut sums = PartialSums::new(ts);

    match ts.kind() {
        StreamKind::Alternating => {
            let mut table = EpsilonTable::new();
            let mut acc = Acceptance::new();
            let mut last = 0.0;
            for n in 0.. {
                if n + 1 >= cap {
                    break;
                }
                let (s, _) = sums.advance_to(n);
                let est = table.push(s);
                last = est;
                let diff = acc.push(est);
                if acc.settled(diff, tol) && est.is_finite() {
                    return Ok(accepted(est, diff.unwrap_or(0.0), sums.consumed));
                }
                if table.broken {
                    return Err(Error::Breakdown {
                        method: "wynn-epsilon",
                        terms: sums.consumed,
                    });
                }
            }
            Err(unconverged(&acc, last, sums.consumed))
        }
        StreamKind::Monotone => {
            let mut consecutive = EpsilonTable::new();
            let mut consecutive_acc = Acceptance::new();
            let mut window: Vec<f64> = Vec::new();
            let mut sampled = EpsilonTable::new();
            let mut sampled_acc = Acceptance::new();
            let mut next_sample = 0usize;
            let mut l = 0usize;
            let mut last = 0.0;
            for n in 0.. {
                if n + 1 >= cap {
                    break;
                }
                let (s, next) = sums.advance_to(n);
                if n < CONSECUTIVE_WINDOW && !consecutive.broken {
                    if n == 0 {
                        window.push(s);
                    }
                    window.push(next);
                    let est = consecutive.push(s);
                    let diff = consecutive_acc.push(est);
                    if consecutive_acc.settled(diff, tol) && est.is_finite() && looks_linear(&window, n) {
                        return Ok(accepted(est, diff.unwrap_or(0.0), sums.consumed));
                    }
                }
                if n == next_sample {
                    let est = sampled.push(s);
                    last = est;
                    let diff = sampled_acc.push(est);
                    if sampled_acc.settled(diff, tol) && est.is_finite() {
                        return Ok(accepted(est, diff.unwrap_or(0.0), sums.consumed));
                    }
                    l += 1;
                    next_sample = sample_index(StreamKind::Monotone, l);
                }
                let consecutive_done = consecutive.broken || n + 1 >= CONSECUTIVE_WINDOW;
                if sampled.broken && consecutive_done {
                    return Err(Error::Breakdown {
                        method: "wynn-epsilon",
                        terms: sums.consumed,
                    });
                }
                if consecutive_done && next_sample + 1 >= cap {
                    break;
                }
            }
            let acc = match (consecutive_acc.best, sampled_acc.best) {
                (Some((_, a)), Some((_, b))) if a < b => consecutive_acc,
                (Some(_), None) => consecutive_acc,
                _ => sampled_acc,
            };
            Err(unconverged(&acc, last, sums.consumed))
        }
    }
}

/// Levin u-transform with remainder estimates `ω_n = (n+1)·t_{n+1}`.
///
/// The model `S_n = S + ω_n Σ_{i<k} c_i/(n+1)^i` is solved by divided
/// differences in `1/(n+1)` over the sampled indices, which reduces to the
/// classical u-transform (β = 1) for consecutive indices.
pub fn levin_u(ts: &TermStream<'_>, tol: f64, cap: usize) -> Result<EvalResult> {
    check_cap(cap, tol)?;
    let kind = ts.kind();
    let mut sums = PartialSums::new(ts);
    let mut nodes: Vec<f64> = Vec::new();
    let mut num_diag: Vec<f64> = Vec::new();
    let mut den_diag: Vec<f64> = Vec::new();
    let mut acc = Acceptance::new();
    let mut last = 0.0;

    for l in 0.. {
        let n = sample_index(kind, l);
        // t_{n+1} must be available within the cap
        if n + 2 > cap {
            break;
        }
        let (s, t_next) = sums.advance_to(n);
        let omega = (n as f64 + 1.0) * t_next;
        if omega.abs() < BREAKDOWN_THRESHOLD || !omega.is_finite() {
            return Err(Error::Breakdown {
                method: "levin-u",
                terms: sums.consumed,
            });
        }
        let node = 1.0 / (n as f64 + 1.0);
        let mut num = Vec::with_capacity(l + 1);
        let mut den = Vec::with_capacity(l + 1);
        num.push(s / omega);
        den.push(1.0 / omega);
        for k in 1..=l {
            let h = node - nodes[l - k];
            num.push((num[k - 1] - num_diag[k - 1]) / h);
            den.push((den[k - 1] - den_diag[k - 1]) / h);
        }
        nodes.push(node);
        let denominator = den[l];
        if denominator.abs() < BREAKDOWN_THRESHOLD || !denominator.is_finite() {
            return Err(Error::Breakdown {
                method: "levin-u",
                terms: sums.consumed,
            });
        }
        let est = num[l] / denominator;
        num_diag = num;
        den_diag = den;
        last = est;
        let diff = acc.push(est);
        if acc.settled(diff, tol) && est.is_finite() {
            return Ok(accepted(est, diff.unwrap_or(0.0), sums.consumed));
        }
    }
    Err(unconverged(&acc, last, sums.consumed))
}

/// Routes monotone streams to [`levin_u`] and alternating streams to
/// [`wynn_epsilon`]; on a breakdown the other transform is tried once.
pub fn accelerate(ts: &TermStream<'_>, tol: f64, cap: usize) -> Result<EvalResult> {
    let (first, second): (fn(&TermStream<'_>, f64, usize) -> Result<EvalResult>, _) =
        match ts.kind() {
            StreamKind::Monotone => (levin_u as fn(&TermStream<'_>, f64, usize) -> _, wynn_epsilon as fn(&TermStream<'_>, f64, usize) -> _),
            StreamKind::Alternating => (wynn_epsilon as fn(&TermStream<'_>, f64, usize) -> _, levin_u as fn(&TermStream<'_>, f64, usize) -> _),
        };
    match first(ts, tol, cap) {
        Err(Error::Breakdown { .. }) => second(ts, tol, cap),
        other => other,
    }
}
