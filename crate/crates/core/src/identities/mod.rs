//! Identity registry and verification engine.
//!
//! Every identity is data: a parameter domain plus a left and right
//! [`Route`]. The two routes of one identity never share a [`Method`], so
//! each check compares independent computations.

mod registry;
mod routes;

use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::integrals::{CatalanMethod, Integrals};
use crate::{Error, Method, Result, Settings};

pub use registry::registry;
pub use routes::{Constant, EllipticForm, EllipticKind, Parametric, Route, Series, SeriesForm, Term, Weight};

/// A parameter value at which an identity is checked.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", content = "value", rename_all = "snake_case")]
pub enum Param {
    Point,
    S(f64),
    X(f64),
    N(f64),
    Method(CatalanMethod),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Point => f.write_str("point"),
            Param::S(v) => write!(f, "s={v}"),
            Param::X(v) => write!(f, "x={v}"),
            Param::N(v) => write!(f, "n={v}"),
            Param::Method(m) => write!(f, "method={m}"),
        }
    }
}

/// How the tolerance of an identity is budgeted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Budget {
    /// Limited only by series and quadrature accuracy.
    Exact,
    /// Involves the five-point difference stencil.
    StencilLimited,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Identity {
    pub id: String,
    pub description: String,
    pub citation: String,
    pub points: Vec<Param>,
    /// Points form an `s`-grid that `--grid` may replace.
    pub sweep: bool,
    pub lhs: Route,
    pub rhs: Route,
    pub tol: f64,
    pub budget: Budget,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationResult {
    pub id: String,
    pub param: Param,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tol: f64,
    pub pass: bool,
    pub lhs_method: Option<Method>,
    pub rhs_method: Option<Method>,
    pub effort: usize,
    pub diagnostics: Option<String>,
}

/// Results of one identity.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityOutcome {
    pub identity: Identity,
    pub results: Vec<VerificationResult>,
}

impl IdentityOutcome {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn worst_residual(&self) -> f64 {
        self.results
            .iter()
            .map(|r| if r.pass { r.abs_residual.min(r.rel_residual) } else { r.abs_residual })
            .fold(0.0, f64::max)
    }

    pub fn effort(&self) -> usize {
        self.results.iter().map(|r| r.effort).sum()
    }
}

/// Evaluates identities under fixed settings; `G` is computed once by the
/// beta series and shared by all closed forms.
#[derive(Debug, Default)]
pub struct Verifier {
    settings: Settings,
    catalan: OnceLock<Result<f64>>,
}

impl Verifier {
    pub fn new(settings: Settings) -> Self {
        Verifier {
            settings,
            catalan: OnceLock::new(),
        }
    }

    pub fn settings(&self) -> &Settings {
        &self.settings
    }

    pub(crate) fn integrals(&self) -> Integrals {
        Integrals::new(self.settings)
    }

    pub(crate) fn catalan_value(&self) -> Result<f64> {
        self.catalan
            .get_or_init(|| self.integrals().catalan(CatalanMethod::BetaSeries).map(|r| r.value))
            .clone()
    }

    /// Checks `identity` at each point with tolerance `tol`.
    pub fn check(&self, identity: &Identity, points: &[Param], tol: f64) -> Vec<VerificationResult> {
        points
            .iter()
            .map(|&param| self.check_point(identity, param, tol))
            .collect()
    }

    fn check_point(&self, identity: &Identity, param: Param, tol: f64) -> VerificationResult {
        let lhs = identity.lhs.evaluate(param, self);
        let rhs = identity.rhs.evaluate(param, self);
        let mut result = VerificationResult {
            id: identity.id.clone(),
            param,
            lhs: None,
            rhs: None,
            abs_residual: f64::INFINITY,
            rel_residual: f64::INFINITY,
            tol,
            pass: false,
            lhs_method: lhs.as_ref().ok().map(|r| r.method),
            rhs_method: rhs.as_ref().ok().map(|r| r.method),
            effort: 0,
            diagnostics: None,
        };
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => {
                let abs = (l.value - r.value).abs();
                let scale = l.value.abs().max(r.value.abs());
                let rel = if scale > 0.0 { abs / scale } else { 0.0 };
                result.lhs = Some(l.value);
                result.rhs = Some(r.value);
                result.abs_residual = abs;
                result.rel_residual = rel;
                result.effort = l.effort + r.effort;
                result.pass = abs <= tol || rel <= tol;
                if l.method == r.method {
                    result.pass = false;
                    result.diagnostics = Some(format!("both sides use {}", l.method));
                }
            }
            (l, r) => {
                let messages: Vec<String> = [("lhs", l.err()), ("rhs", r.err())]
                    .into_iter()
                    .filter_map(|(side, e)| e.map(|e| format!("{side}: {e}")))
                    .collect();
                result.diagnostics = Some(messages.join("; "));
            }
        }
        result
    }

    /// Verifies one identity; `tol_override` replaces its tolerance.
    pub fn verify(&self, id: &str, tol_override: Option<f64>) -> Result<Vec<VerificationResult>> {
        let identity = lookup(id)?;
        let tol = tol_override.unwrap_or(identity.tol);
        Ok(self.check(&identity, &identity.points, tol))
    }

    /// Runs the given identities concurrently; results keep input order.
    pub fn run(&self, plan: &[(Identity, Vec<Param>, f64)]) -> Vec<IdentityOutcome> {
        plan.par_iter()
            .map(|(identity, points, tol)| IdentityOutcome {
                identity: identity.clone(),
                results: self.check(identity, points, *tol),
            })
            .collect()
    }

    /// Every registry entry, sorted by id, with its tolerance multiplied by
    /// `tol_scale`.
    pub fn verify_all(&self, tol_scale: f64) -> Result<Vec<IdentityOutcome>> {
        if !(tol_scale > 0.0 && tol_scale.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "tolerance scale must be positive, got {tol_scale}"
            )));
        }
        let plan: Vec<_> = registry_by_id()
            .into_iter()
            .map(|identity| {
                let points = identity.points.clone();
                let tol = identity.tol * tol_scale;
                (identity, points, tol)
            })
            .collect();
        Ok(self.run(&plan))
    }
}

/// The registry sorted by id, the order used for full runs.
pub fn registry_by_id() -> Vec<Identity> {
    let mut reg = registry();
    reg.sort_by(|a, b| a.id.cmp(&b.id));
    reg
}

/// Registry entry by id.
pub fn lookup(id: &str) -> Result<Identity> {
    registry()
        .into_iter()
        .find(|i| i.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// Verifies one identity with default settings.
pub fn verify(id: &str, tol_override: Option<f64>) -> Result<Vec<VerificationResult>> {
    Verifier::default().verify(id, tol_override)
}

/// Verifies the whole registry with default settings.
pub fn verify_all(tol_scale: f64) -> Result<Vec<IdentityOutcome>> {
    Verifier::default().verify_all(tol_scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn registry_contract() {
        let reg = registry();
        assert!(reg.len() >= 24);
        assert!(reg.iter().any(|i| i.id == "ramanujan_3f2"));
        let ids: HashSet<_> = reg.iter().map(|i| i.id.as_str()).collect();
        assert_eq!(ids.len(), reg.len());
        for i in &reg {
            assert!(!i.citation.is_empty(), "{}", i.id);
            assert!(i.tol > 0.0);
            assert!(!i.points.is_empty());
        }
        assert_eq!(registry(), reg);
    }

    #[test]
    fn derivative_identities_are_labelled() {
        for i in registry() {
            let uses_stencil = matches!(i.lhs, Route::Derivative { .. })
                || matches!(i.rhs, Route::Derivative { .. });
            assert_eq!(uses_stencil, i.budget == Budget::StencilLimited, "{}", i.id);
            if uses_stencil {
                assert!(i.tol <= 1e-6);
            } else {
                assert!(i.tol <= 1e-8, "{}", i.id);
            }
        }
    }

    #[test]
    fn routes_serialize_as_data() {
        for i in registry() {
            let json = serde_json::to_string(&i).unwrap();
            let back: Identity = serde_json::from_str(&json).unwrap();
            assert_eq!(back, i);
        }
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(verify("bogus_id", None), Err(Error::UnknownIdentity(_))));
    }

    #[test]
    fn ramanujan_single_point() {
        let r = verify("ramanujan_3f2", None).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].pass);
        assert!(r[0].abs_residual <= 1e-10);
        assert_eq!(r[0].lhs_method, Some(Method::ClosedForm));
        assert_eq!(r[0].rhs_method, Some(Method::Accelerated));
    }

    #[test]
    fn tolerance_override_applies() {
        let r = verify("logsine", Some(1e-30)).unwrap();
        assert_eq!(r[0].tol, 1e-30);
    }

    #[test]
    fn failures_are_recorded() {
        let verifier = Verifier::default();
        let summa = lookup("summa_relation").unwrap();
        let r = verifier.check(&summa, &[Param::S(0.0)], 1e-9);
        assert!(!r[0].pass);
        assert!(r[0].diagnostics.as_deref().unwrap().contains("diverges"));
        assert!(r[0].lhs.is_none());
    }
}
