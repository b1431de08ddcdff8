//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines always reach stdout.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use catalan_hyperlab::elliptic::{ellipe, ellipk, Modulus};
use catalan_hyperlab::identities::{verify, VerificationResult};
use catalan_hyperlab::integrals::{catalan, integral_a, integral_b, integral_c, integral_d, CatalanMethod};
use catalan_hyperlab::quadrature::{central_diff, tanh_sinh, QuadratureSpec, DEFAULT_FD_STEP};
use catalan_hyperlab::report::Report;
use catalan_hyperlab::sfcore::{gauss_2f1_at_one, pfq, pochhammer, PfqParams};
use catalan_hyperlab::{Method, Result};

const G_PRINTED: f64 = 0.915965594177;
const G_ROUTE_TOL: f64 = 1e-11;
const IDENTITY_TOL: f64 = 1e-10;
const FAMILY_TOL: f64 = 1e-9;
const DOUBLE_QUAD_TOL: f64 = 1e-8;
const STENCIL_TOL: f64 = 1e-6;
const GAUSS_TOL: f64 = 1e-9;
const ELLIPTIC_TOL: f64 = 1e-11;
const SINGULAR_TOL: f64 = 1e-12;
const S_GRID: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

type Outcome = std::result::Result<String, String>;

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn within_budget(elapsed: Duration, budget: Duration) -> Outcome {
    ensure(elapsed < budget, format!("{elapsed:.2?} against {budget:.0?}"))
}

/// Every point of `id` passes and its absolute residual is at most `tol`.
fn identity_abs(id: &str, tol: f64) -> Outcome {
    let results = verify(id, Some(tol)).map_err(fail)?;
    check_abs(id, &results, tol)
}

fn check_abs(id: &str, results: &[VerificationResult], tol: f64) -> Outcome {
    let worst = results.iter().map(|r| r.abs_residual).fold(0.0, f64::max);
    let ok = results.iter().all(|r| r.pass && r.abs_residual <= tol);
    ensure(ok, format!("{id}: {} points, worst {worst:.2e}", results.len()))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let values: Vec<f64> = CatalanMethod::ALL
        .iter()
        .map(|&m| catalan(m).map(|r| r.value))
        .collect::<Result<_>>()
        .map_err(fail)?;
    let elapsed = start.elapsed();
    let mut spread = 0.0f64;
    for a in &values {
        for b in &values {
            spread = spread.max((a - b).abs());
        }
    }
    let printed = values.iter().all(|g| (g - G_PRINTED).abs() < 5e-13);
    ensure(
        spread <= G_ROUTE_TOL && printed,
        format!("pairwise spread {spread:.2e}, digits match {printed}"),
    )?;
    within_budget(elapsed, Duration::from_secs(1))
        .map(|t| format!("spread {spread:.2e}, {t}"))
}

fn criterion_2() -> Outcome {
    let results = verify("ramanujan_3f2", None).map_err(fail)?;
    check_abs("ramanujan_3f2", &results, IDENTITY_TOL)?;
    let p = PfqParams::new([0.5, 0.5, 0.5], [1.0, 1.5], 1.0).map_err(fail)?;
    let series = pfq(&p, 1e-12).map_err(fail)?;
    let quad = integral_a(1.0).map_err(fail)?.value * 2.0 / PI;
    let residual = (series.value - quad).abs();
    ensure(
        series.method == Method::Accelerated && residual <= IDENTITY_TOL,
        format!("4G/π residual {:.2e}, A(1)·2/π residual {residual:.2e}", results[0].abs_residual),
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut lines = Vec::new();
    for id in ["e1_parametric", "eics_parametric", "e2_parametric"] {
        let results = verify(id, None).map_err(fail)?;
        let grid: Vec<f64> = results
            .iter()
            .filter_map(|r| match r.param {
                catalan_hyperlab::identities::Param::S(s) => Some(s),
                _ => None,
            })
            .collect();
        ensure(grid == S_GRID, format!("{id}: grid {grid:?}"))?;
        ensure(
            results.iter().all(|r| r.lhs_method != r.rhs_method),
            format!("{id}: shared method"),
        )?;
        lines.push(check_abs(id, &results, IDENTITY_TOL)?);
    }
    let t = within_budget(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("{}; {t}", lines.join("; ")))
}

fn criterion_4() -> Outcome {
    let family = [
        "adamchik_4f3",
        "campbell_4f3",
        "pow1",
        "pow2",
        "pow3",
        "first_split_series",
        "second_split_series",
        "partial_fraction_split",
    ];
    let mut worst = 0.0f64;
    for id in family {
        let results = verify(id, Some(FAMILY_TOL)).map_err(fail)?;
        check_abs(id, &results, FAMILY_TOL)?;
        ensure(
            results.iter().all(|r| r.rhs_method == Some(Method::ClosedForm)),
            format!("{id}: right side is not a closed form"),
        )?;
        worst = worst.max(results[0].abs_residual);
    }
    let mut inner = Vec::new();
    for id in ["ls23_inner", "ls23b_inner"] {
        inner.push(identity_abs(id, DOUBLE_QUAD_TOL)?);
    }
    Ok(format!("family worst {worst:.2e}; {}", inner.join("; ")))
}

fn criterion_5() -> Outcome {
    let mut worst = 0.0f64;
    for s in [0.3, 0.5, 0.7] {
        let m = Modulus::new(s).map_err(fail)?;
        let k = ellipk(m).map_err(fail)?;
        let e = ellipe(m).map_err(fail)?;
        let pairs: [(fn(f64) -> Result<catalan_hyperlab::EvalResult>, f64); 4] = [
            (integral_a, k),
            (integral_b, e),
            (integral_c, (FRAC_PI_2 - k) / s),
            (integral_d, (FRAC_PI_2 + k) / s),
        ];
        for (f, expected) in pairs {
            let d = central_diff(|x| f(x).map(|r| r.value), s, DEFAULT_FD_STEP).map_err(fail)?;
            worst = worst.max((d - expected).abs());
        }
    }
    for id in ["a_derivative", "b_derivative", "eics1_derivative", "eids1_derivative"] {
        identity_abs(id, STENCIL_TOL)?;
    }
    ensure(worst <= STENCIL_TOL, format!("worst stencil residual {worst:.2e}"))
}

fn criterion_6() -> Outcome {
    let transform = identity_abs("berndt_transform", FAMILY_TOL)?;
    let results = verify("entry_prodigiii", Some(IDENTITY_TOL)).map_err(fail)?;
    check_abs("entry_prodigiii", &results, IDENTITY_TOL)?;
    let g = catalan(CatalanMethod::BetaSeries).map_err(fail)?.value;
    let common = results[0].lhs.unwrap_or(f64::NAN);
    let gap = (common - 2.0 * g).abs();
    ensure(gap <= IDENTITY_TOL, format!("{transform}; |value − 2G| {gap:.2e}"))
}

fn criterion_7() -> Outcome {
    let results = verify("whipple_quadratic", None).map_err(fail)?;
    let xs: Vec<String> = results.iter().map(|r| r.param.to_string()).collect();
    ensure(
        xs == ["x=-0.9", "x=-0.5", "x=-0.1", "x=0.1", "x=0.3", "x=0.5"],
        format!("grid {xs:?}"),
    )?;
    check_abs("whipple_quadratic", &results, IDENTITY_TOL)
}

fn ulps(a: f64, b: f64) -> u64 {
    (a.to_bits() as i64 - b.to_bits() as i64).unsigned_abs()
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let a = rng.gen_range(-3.0..5.0);
        for k in 0..40 {
            let lhs = pochhammer(a, k + 1);
            let rhs = pochhammer(a, k) * (a + k as f64);
            let scale = lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
            ensure((lhs - rhs).abs() / scale <= 1e-13, format!("recurrence a={a} k={k}"))?;
        }
    }
    for m in 0..=60 {
        let ratio = pochhammer(0.5, m) / pochhammer(1.5, m);
        let exact = 1.0 / (2 * m + 1) as f64;
        ensure(ulps(ratio, exact) <= 4, format!("ratio m={m} off by {} ulp", ulps(ratio, exact)))?;
    }

    let mut gauss_worst = 0.0f64;
    for _ in 0..50 {
        let a = rng.gen_range(0.1..2.0);
        let b = rng.gen_range(0.1..2.0);
        let c = a + b + rng.gen_range(0.5..3.0);
        let closed = gauss_2f1_at_one(a, b, c).map_err(fail)?;
        let p = PfqParams::new([a, b], [c], 1.0).map_err(fail)?;
        let series = pfq(&p, 1e-12).map_err(fail)?.value;
        gauss_worst = gauss_worst.max((closed - series).abs());
    }
    ensure(gauss_worst <= GAUSS_TOL, format!("Gauss worst {gauss_worst:.2e}"))?;

    let mut elliptic_worst = 0.0f64;
    for s in S_GRID {
        let m = Modulus::new(s).map_err(fail)?;
        let (k, e) = (ellipk(m).map_err(fail)?, ellipe(m).map_err(fail)?);
        let mc = Modulus::new(m.complement()).map_err(fail)?;
        let (kc, ec) = (ellipk(mc).map_err(fail)?, ellipe(mc).map_err(fail)?);
        let legendre = e * kc + ec * k - k * kc;
        elliptic_worst = elliptic_worst.max((legendre - FRAC_PI_2).abs());
        for (upper, value) in [([0.5, 0.5], k), ([-0.5, 0.5], e)] {
            let p = PfqParams::new(upper, [1.0], s * s).map_err(fail)?;
            let series = FRAC_PI_2 * pfq(&p, 1e-15).map_err(fail)?.value;
            elliptic_worst = elliptic_worst.max((series - value).abs());
        }
    }
    ensure(elliptic_worst <= ELLIPTIC_TOL, format!("elliptic worst {elliptic_worst:.2e}"))?;

    let unit = QuadratureSpec::new(0.0, 1.0).map_err(fail)?.tol(1e-14).max_level(12);
    let log = tanh_sinh(f64::ln, &unit.singular(true, false)).map_err(fail)?.value;
    let root = tanh_sinh(|x| 1.0 / x.sqrt(), &unit.singular(true, false)).map_err(fail)?.value;
    let singular_worst = (log + 1.0).abs().max((root - 2.0).abs());
    ensure(singular_worst <= SINGULAR_TOL, format!("singular worst {singular_worst:.2e}"))?;

    Ok(format!(
        "Gauss {gauss_worst:.2e}, elliptic {elliptic_worst:.2e}, singular {singular_worst:.2e}"
    ))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let output = Command::new(env!("CARGO_BIN_EXE_catalan-hyperlab"))
        .args(["verify", "--all", "--json"])
        .output()
        .map_err(fail)?;
    let elapsed = start.elapsed();
    ensure(output.status.code() == Some(0), format!("exit status {:?}", output.status.code()))?;
    let raw: serde_json::Value = serde_json::from_slice(&output.stdout).map_err(fail)?;
    for key in ["version", "timestamp", "records", "summary"] {
        ensure(raw.get(key).is_some(), format!("missing `{key}`"))?;
    }
    for key in [
        "id",
        "citation",
        "param",
        "lhs",
        "rhs",
        "abs_residual",
        "rel_residual",
        "tol",
        "pass",
        "lhs_method",
        "rhs_method",
        "effort",
    ] {
        ensure(raw["records"][0].get(key).is_some(), format!("record missing `{key}`"))?;
    }
    let report: Report = serde_json::from_value(raw).map_err(fail)?;
    let s = &report.summary;
    ensure(
        s.total >= 24
            && s.passed == s.total
            && s.failed == 0
            && s.records == report.records.len()
            && s.records_passed == report.records.iter().filter(|r| r.pass).count(),
        format!("summary {} identities, {} passed", s.total, s.passed),
    )?;
    let t = within_budget(elapsed, Duration::from_secs(60))?;
    Ok(format!("{} identities, {} points, {t}", s.total, s.records))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("Catalan cross-route", criterion_1),
        ("Ramanujan 3F2 and A(1)", criterion_2),
        ("parametric sweeps", criterion_3),
        ("Adamchik family and inner integrals", criterion_4),
        ("derivative contracts", criterion_5),
        ("Berndt transform", criterion_6),
        ("Whipple identity", criterion_7),
        ("property suites", criterion_8),
        ("end-to-end verify --all", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS  {}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {}. {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
