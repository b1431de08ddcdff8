use super::routes::{
    Constant::{self, *},
    EllipticForm, EllipticKind, Parametric, Route, Series, SeriesForm, Term, Weight,
};
use super::{Budget, Identity, Param};
use crate::integrals::CatalanMethod;

const SERIES_TOL: f64 = 1e-10;
const FAMILY_TOL: f64 = 1e-9;
const NESTED_TOL: f64 = 1e-8;
const STENCIL_TOL: f64 = 1e-6;
const ROUTES_TOL: f64 = 1e-11;
const ELLIPTIC_TOL: f64 = 1e-12;

fn s_grid() -> Vec<Param> {
    (1..=9).map(|i| Param::S(i as f64 / 10.0)).collect()
}

fn stencil_grid() -> Vec<Param> {
    [0.3, 0.5, 0.7].into_iter().map(Param::S).collect()
}

fn closed(terms: &[(f64, Constant)]) -> Route {
    Route::ClosedForm {
        terms: terms
            .iter()
            .map(|&(coef, constant)| Term { coef, constant })
            .collect(),
    }
}

fn at_one(upper: &[f64], lower: &[f64], scale: f64) -> Route {
    Route::PfqAtOne {
        upper: upper.to_vec(),
        lower: lower.to_vec(),
        scale,
    }
}

fn in_s(upper: &[f64], lower: &[f64], form: SeriesForm) -> Route {
    Route::PfqInS {
        upper: upper.to_vec(),
        lower: lower.to_vec(),
        form,
    }
}

fn elliptic(kind: EllipticKind, form: EllipticForm) -> Route {
    Route::Elliptic { kind, form }
}

struct Entry {
    id: &'static str,
    description: &'static str,
    citation: &'static str,
    points: Vec<Param>,
    lhs: Route,
    rhs: Route,
    tol: f64,
}

impl From<Entry> for Identity {
    fn from(e: Entry) -> Self {
        let stencil = matches!(e.lhs, Route::Derivative { .. }) || matches!(e.rhs, Route::Derivative { .. });
        let sweep = e.points.len() > 1 && e.points.iter().all(|p| matches!(p, Param::S(_)));
        Identity {
            id: e.id.to_string(),
            description: e.description.to_string(),
            citation: e.citation.to_string(),
            points: e.points,
            sweep,
            lhs: e.lhs,
            rhs: e.rhs,
            tol: e.tol,
            budget: if stencil { Budget::StencilLimited } else { Budget::Exact },
        }
    }
}

const HALF3: [f64; 3] = [0.5, 0.5, 0.5];
const E_UPPER: [f64; 3] = [-0.5, 0.5, 0.5];
const ONE_THREE_HALVES: [f64; 2] = [1.0, 1.5];
const ADAMCHIK_UPPER: [f64; 4] = [1.0, 1.0, 1.5, 1.5];

/// All identities, in a fixed order.
pub fn registry() -> Vec<Identity> {
    let pi = std::f64::consts::PI;
    let entries = vec![
        Entry {
            id: "ramanujan_3f2",
            description: "4G/π = 3F2(1/2,1/2,1/2; 1,3/2; 1)",
            citation: "Ramanujan's 3F2 evaluation of Catalan's constant",
            points: vec![Param::Point],
            lhs: closed(&[(4.0, GOverPi)]),
            rhs: at_one(&HALF3, &ONE_THREE_HALVES, 1.0),
            tol: SERIES_TOL,
        },
        Entry {
            id: "berndt_transform",
            description: "3F2(1/2,1,n+3/2; 3/2,n+2; 1) = √π Γ(n+2)/Γ(n+3/2) · 3F2(1/2,1/2,−n; 1,3/2; 1), n > −3/2",
            citation: "Ramanujan's notebook 3F2 transformation with parameter n",
            points: [-0.5, 0.0, 0.5, 1.0, 2.0].into_iter().map(Param::N).collect(),
            lhs: Route::BerndtIntegral,
            rhs: Route::BerndtSeries,
            tol: FAMILY_TOL,
        },
        Entry {
            id: "entry_prodigiii",
            description: "3F2(1/2,1,1; 3/2,3/2; 1) = (π/2) · 3F2(1/2,1/2,1/2; 1,3/2; 1) = 2G",
            citation: "n = −1/2 case of the notebook 3F2 transformation",
            points: vec![Param::N(-0.5)],
            lhs: Route::BerndtIntegral,
            rhs: at_one(&HALF3, &ONE_THREE_HALVES, pi / 2.0),
            tol: SERIES_TOL,
        },
        Entry {
            id: "whipple_quadratic",
            description: "3F2(1/2,1,1; 3/2,3/2; 4x/(1+x)²) = (1+x) Σ (−x)ⁿ/(2n+1)²",
            citation: "Whipple-type quadratic transformation",
            points: [-0.9, -0.5, -0.1, 0.1, 0.3, 0.5].into_iter().map(Param::X).collect(),
            lhs: Route::WhippleHypergeometric,
            rhs: Route::WhippleSum,
            tol: SERIES_TOL,
        },
        Entry {
            id: "e1_parametric",
            description: "A(s) = (π/2) s · 3F2(1/2,1/2,1/2; 1,3/2; s²)",
            citation: "A(s) = ∫₀¹ arcsin(sx)/(x√(1−x²)) dx as a 3F2",
            points: s_grid(),
            lhs: Route::Integral { which: Parametric::A },
            rhs: in_s(&HALF3, &ONE_THREE_HALVES, SeriesForm::HalfPiS),
            tol: SERIES_TOL,
        },
        Entry {
            id: "a1_value",
            description: "A(1) = (π/2) · 3F2(1/2,1/2,1/2; 1,3/2; 1)",
            citation: "A(1) from the limit s → 1 of the A(s) series",
            points: vec![Param::S(1.0)],
            lhs: Route::Integral { which: Parametric::A },
            rhs: at_one(&HALF3, &ONE_THREE_HALVES, pi / 2.0),
            tol: SERIES_TOL,
        },
        Entry {
            id: "a1_catalan",
            description: "A(1) = ∫₀¹ arcsin x/(x√(1−x²)) dx = 2G",
            citation: "A(1) = 2G, arcsine integral for Catalan's constant",
            points: vec![Param::S(1.0)],
            lhs: Route::Integral { which: Parametric::A },
            rhs: closed(&[(2.0, G)]),
            tol: SERIES_TOL,
        },
        Entry {
            id: "a_derivative",
            description: "A'(s) = K(s)",
            citation: "differentiation of A(s) under the integral sign",
            points: stencil_grid(),
            lhs: Route::Derivative { which: Parametric::A },
            rhs: elliptic(EllipticKind::K, EllipticForm::Plain),
            tol: STENCIL_TOL,
        },
        Entry {
            id: "eics_parametric",
            description: "C(s) = (π/2) log 2 − (π/16) s² · 4F3(1,1,3/2,3/2; 2,2,2; s²)",
            citation: "C(s) = ∫₀¹ log(1+√(1−s²x²))/√(1−x²) dx as a 4F3",
            points: s_grid(),
            lhs: Route::Integral { which: Parametric::C },
            rhs: in_s(&ADAMCHIK_UPPER, &[2.0, 2.0, 2.0], SeriesForm::LogTwoMinus),
            tol: SERIES_TOL,
        },
        Entry {
            id: "eics1_derivative",
            description: "C'(s) = (π/2 − K(s))/s",
            citation: "differentiation of C(s) under the integral sign",
            points: stencil_grid(),
            lhs: Route::Derivative { which: Parametric::C },
            rhs: elliptic(EllipticKind::K, EllipticForm::HalfPiMinusOverS),
            tol: STENCIL_TOL,
        },
        Entry {
            id: "nick_value",
            description: "C(1) = 2G − (π/2) log 2",
            citation: "value of C at s = 1",
            points: vec![Param::S(1.0)],
            lhs: Route::Integral { which: Parametric::C },
            rhs: closed(&[(2.0, G), (-0.5, PiLn2)]),
            tol: SERIES_TOL,
        },
        Entry {
            id: "nick1_variant",
            description: "∫₀^{π/2} log(1 + cos t) dt = 2G − (π/2) log 2",
            citation: "C(1) after the substitution x = sin t",
            points: vec![Param::Point],
            lhs: Route::LogOnePlusCos,
            rhs: closed(&[(2.0, G), (-0.5, PiLn2)]),
            tol: SERIES_TOL,
        },
        Entry {
            id: "adamchik_4f3",
            description: "4F3(1,1,3/2,3/2; 2,2,2; 1) = 16 log 2 − 32G/π",
            citation: "Adamchik's 4F3 family, n = 1",
            points: vec![Param::Point],
            lhs: at_one(&ADAMCHIK_UPPER, &[2.0, 2.0, 2.0], 1.0),
            rhs: closed(&[(16.0, Ln2), (-32.0, GOverPi)]),
            tol: FAMILY_TOL,
        },
        Entry {
            id: "campbell_4f3",
            description: "4F3(1/2,1/2,1,1; 2,2,2; 1) = Σ C(2n,n)²/(16ⁿ(n+1)³) = 16 log 2 + 48/π − 32G/π − 16",
            citation: "Campbell's 4F3 series in Ramanujan-like series for 1/π",
            points: vec![Param::Point],
            lhs: at_one(&[0.5, 0.5, 1.0, 1.0], &[2.0, 2.0, 2.0], 1.0),
            rhs: closed(&[(16.0, Ln2), (48.0, InvPi), (-32.0, GOverPi), (-16.0, One)]),
            tol: FAMILY_TOL,
        },
        Entry {
            id: "binom_bridge",
            description: "Σ (2n+1)² C(2n,n)²/(16ⁿ(n+1)³) = (16/π)((π/2) log 2 − C(1))",
            citation: "central-binomial form of the Adamchik 4F3 value",
            points: vec![Param::Point],
            lhs: Route::Series { series: Series::BinomialBridge },
            rhs: Route::IntegralAt {
                which: Parametric::C,
                s: 1.0,
                scale: -16.0 / pi,
                shift: 8.0 * std::f64::consts::LN_2,
            },
            tol: FAMILY_TOL,
        },
        Entry {
            id: "partial_fraction_split",
            description: "Σ 4n C(2n,n)²/(16ⁿ(n+1)²) = 16 − 48/π",
            citation: "partial-fraction step towards Campbell's series",
            points: vec![Param::Point],
            lhs: Route::Series { series: Series::PartialFraction },
            rhs: closed(&[(16.0, One), (-48.0, InvPi)]),
            tol: FAMILY_TOL,
        },
        Entry {
            id: "first_split_series",
            description: "Σ 4 C(2n,n)²/((n+1)16ⁿ) = 4 · 2F1(1/2,1/2; 2; 1) = 16/π",
            citation: "Gauss summation of 2F1(1/2,1/2; 2; 1)",
            points: vec![Param::Point],
            lhs: Route::Series { series: Series::FirstSplit },
            rhs: Route::Gauss { a: 0.5, b: 0.5, c: 2.0, scale: 4.0 },
            tol: FAMILY_TOL,
        },
        Entry {
            id: "second_split_series",
            description: "Σ 4 C(2n,n)²/((n+1)² 16ⁿ) = 64/π − 16",
            citation: "second partial-fraction series",
            points: vec![Param::Point],
            lhs: Route::Series { series: Series::SecondSplit },
            rhs: closed(&[(64.0, InvPi), (-16.0, One)]),
            tol: FAMILY_TOL,
        },
        Entry {
            id: "pow1",
            description: "4F3(1,1,3/2,3/2; 2,2,3; 1) = 8 + 32 log 2 − 64G/π − 32/π",
            citation: "C(s) integrated against s",
            points: vec![Param::Point],
            lhs: Route::Series { series: Series::Pow1 },
            rhs: closed(&[(8.0, One), (32.0, Ln2), (-64.0, GOverPi), (-32.0, InvPi)]),
            tol: FAMILY_TOL,
        },
        Entry {
            id: "pow2",
            description: "4F3(1,1,3/2,3/2; 2,3,3; 1) = 96 + 64 log 2 − 128G/π − 320/π",
            citation: "C(s) integrated against s log s",
            points: vec![Param::Point],
            lhs: Route::Series { series: Series::Pow2 },
            rhs: closed(&[(96.0, One), (64.0, Ln2), (-128.0, GOverPi), (-320.0, InvPi)]),
            tol: FAMILY_TOL,
        },
        Entry {
            id: "pow3",
            description: "4F3(1,1,3/2,3/2; 2,2,4; 1) = 18 + 48 log 2 − 96G/π − 208/(3π)",
            citation: "C(s) integrated against s³",
            points: vec![Param::Point],
            lhs: Route::Series { series: Series::Pow3 },
            rhs: closed(&[(18.0, One), (48.0, Ln2), (-96.0, GOverPi), (-208.0 / 3.0, InvPi)]),
            tol: FAMILY_TOL,
        },
        Entry {
            id: "ls23_inner",
            description: "∫₀¹ s C(s) ds = 1/2 − π/8 + G − (π/4) log 2",
            citation: "order-swapped double integral for the s-weighted C",
            points: vec![Param::Point],
            lhs: Route::WeightedC { weight: Weight::S },
            rhs: closed(&[(0.5, One), (-0.125, Pi), (1.0, G), (-0.25, PiLn2)]),
            tol: NESTED_TOL,
        },
        Entry {
            id: "ls23b_inner",
            description: "∫₀¹ s log s · C(s) ds = 3π/8 + (π/8) log 2 − G/2 − 5/4",
            citation: "order-swapped double integral for the s log s weighted C",
            points: vec![Param::Point],
            lhs: Route::WeightedC { weight: Weight::SLogS },
            rhs: closed(&[(0.375, Pi), (0.125, PiLn2), (-0.5, G), (-1.25, One)]),
            tol: NESTED_TOL,
        },
        Entry {
            id: "e2_parametric",
            description: "B(s) = (π/2) s · 3F2(−1/2,1/2,1/2; 1,3/2; s²)",
            citation: "B(s) = ∫₀¹ (arcsin(sx) + sx√(1−s²x²))/(2x√(1−x²)) dx as a 3F2",
            points: s_grid(),
            lhs: Route::Integral { which: Parametric::B },
            rhs: in_s(&E_UPPER, &ONE_THREE_HALVES, SeriesForm::HalfPiS),
            tol: SERIES_TOL,
        },
        Entry {
            id: "b_derivative",
            description: "B'(s) = E(s)",
            citation: "differentiation of B(s) under the integral sign",
            points: stencil_grid(),
            lhs: Route::Derivative { which: Parametric::B },
            rhs: elliptic(EllipticKind::E, EllipticForm::Plain),
            tol: STENCIL_TOL,
        },
        Entry {
            id: "b1_value",
            description: "B(1) = 1/2 + G",
            citation: "B(1) from the second-kind elliptic integral",
            points: vec![Param::S(1.0)],
            lhs: Route::Integral { which: Parametric::B },
            rhs: closed(&[(0.5, One), (1.0, G)]),
            tol: SERIES_TOL,
        },
        Entry {
            id: "corollary_3f2",
            description: "1/2 + G = (π/2) · 3F2(−1/2,1/2,1/2; 1,3/2; 1)",
            citation: "3F2 value of 1/2 + G, also in Adamchik",
            points: vec![Param::Point],
            lhs: closed(&[(0.5, One), (1.0, G)]),
            rhs: at_one(&E_UPPER, &ONE_THREE_HALVES, pi / 2.0),
            tol: SERIES_TOL,
        },
        Entry {
            id: "summa_relation",
            description: "C(s) + D(s) = π log(s/2)",
            citation: "sum of the log(1 ± √(1−s²x²)) integrals",
            points: [0.2, 0.5, 0.8, 1.0].into_iter().map(Param::S).collect(),
            lhs: Route::CPlusD,
            rhs: closed(&[(1.0, PiLogHalfS)]),
            tol: FAMILY_TOL,
        },
        Entry {
            id: "eids1_derivative",
            description: "D'(s) = (π/2 + K(s))/s",
            citation: "differentiation of D(s) under the integral sign",
            points: stencil_grid(),
            lhs: Route::Derivative { which: Parametric::D },
            rhs: elliptic(EllipticKind::K, EllipticForm::HalfPiPlusOverS),
            tol: STENCIL_TOL,
        },
        Entry {
            id: "logsine",
            description: "∫₀^{π/2} log(sin x) dx = −(π/2) log 2",
            citation: "Euler's log-sine integral",
            points: vec![Param::Point],
            lhs: Route::LogTrig { cosine: false },
            rhs: closed(&[(-0.5, PiLn2)]),
            tol: SERIES_TOL,
        },
        Entry {
            id: "logcosine",
            description: "∫₀^{π/2} log(cos x) dx = −(π/2) log 2",
            citation: "Euler's log-cosine integral",
            points: vec![Param::Point],
            lhs: Route::LogTrig { cosine: true },
            rhs: closed(&[(-0.5, PiLn2)]),
            tol: SERIES_TOL,
        },
        Entry {
            id: "g_routes",
            description: "G by K, E, arctan and arcsine integrals equals G by Σ (−1)ⁿ/(2n+1)²",
            citation: "integral and series representations of Catalan's constant",
            points: CatalanMethod::ALL
                .into_iter()
                .filter(|m| *m != CatalanMethod::BetaSeries)
                .map(Param::Method)
                .collect(),
            lhs: Route::Catalan { method: None },
            rhs: Route::Catalan {
                method: Some(CatalanMethod::BetaSeries),
            },
            tol: ROUTES_TOL,
        },
        Entry {
            id: "repre_elliptic",
            description: "E(s) = (π/2) · 2F1(−1/2,1/2; 1; s²)",
            citation: "hypergeometric representation of E",
            points: s_grid(),
            lhs: elliptic(EllipticKind::E, EllipticForm::Plain),
            rhs: in_s(&[-0.5, 0.5], &[1.0], SeriesForm::HalfPi),
            tol: ELLIPTIC_TOL,
        },
        Entry {
            id: "k_hypergeometric",
            description: "K(s) = (π/2) · 2F1(1/2,1/2; 1; s²)",
            citation: "hypergeometric representation of K",
            points: s_grid(),
            lhs: elliptic(EllipticKind::K, EllipticForm::Plain),
            rhs: in_s(&[0.5, 0.5], &[1.0], SeriesForm::HalfPi),
            tol: ELLIPTIC_TOL,
        },
    ];
    entries.into_iter().map(Identity::from).collect()
}
