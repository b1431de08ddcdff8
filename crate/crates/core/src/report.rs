//! Machine-readable verification report.
//!
//! Numbers are written as decimal strings with 15 significant digits. A
//! [`Num`] is rounded to that precision when it is created, so a report
//! survives a JSON round trip unchanged.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::identities::{registry, Budget, Identity, IdentityOutcome, Route, VerificationResult};
use crate::{Method, VERSION};

pub const SIGNIFICANT_DIGITS: usize = 15;

/// Formats `x` like C's `%.15g`.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exponent) = sci.split_once('e').expect("exponent present");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if exponent < -5 || exponent >= SIGNIFICANT_DIGITS as i32 {
        let mantissa = trim_zeros(mantissa);
        format!("{mantissa}e{}{:02}", if exponent < 0 { '-' } else { '+' }, exponent.abs())
    } else {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exponent).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// A real number held at report precision.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Num(f64);

impl Num {
    pub fn new(x: f64) -> Self {
        Num(format_number(x).parse().unwrap_or(f64::NAN))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_number(self.0))
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_number(self.0))
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse::<f64>()
            .map(Num::new)
            .map_err(|e| serde::de::Error::custom(format!("bad number `{s}`: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    pub citation: String,
    pub param: String,
    pub lhs: Option<Num>,
    pub rhs: Option<Num>,
    pub abs_residual: Num,
    pub rel_residual: Num,
    pub tol: Num,
    pub pass: bool,
    pub lhs_method: Option<Method>,
    pub rhs_method: Option<Method>,
    pub effort: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<String>,
}

impl Record {
    pub fn new(citation: &str, r: &VerificationResult) -> Self {
        Record {
            id: r.id.clone(),
            citation: citation.to_string(),
            param: r.param.to_string(),
            lhs: r.lhs.map(Num::new),
            rhs: r.rhs.map(Num::new),
            abs_residual: Num::new(r.abs_residual),
            rel_residual: Num::new(r.rel_residual),
            tol: Num::new(r.tol),
            pass: r.pass,
            lhs_method: r.lhs_method,
            rhs_method: r.rhs_method,
            effort: r.effort,
            diagnostics: r.diagnostics.clone(),
        }
    }

    /// The residual that decided `pass`.
    pub fn residual(&self) -> f64 {
        self.abs_residual.get().min(self.rel_residual.get())
    }
}

/// Registry entry as printed by `catalog`; the verification fields are
/// filled in reports only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityEntry {
    pub id: String,
    pub description: String,
    pub citation: String,
    pub points: Vec<String>,
    pub tol: Num,
    pub budget: Budget,
    pub lhs: Route,
    pub rhs: Route,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worst_residual: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub effort: Option<usize>,
}

impl IdentityEntry {
    pub fn from_identity(identity: &Identity) -> Self {
        IdentityEntry {
            id: identity.id.clone(),
            description: identity.description.clone(),
            citation: identity.citation.clone(),
            points: identity.points.iter().map(|p| p.to_string()).collect(),
            tol: Num::new(identity.tol),
            budget: identity.budget,
            lhs: identity.lhs.clone(),
            rhs: identity.rhs.clone(),
            passed: None,
            worst_residual: None,
            effort: None,
        }
    }

    fn from_outcome(outcome: &IdentityOutcome) -> Self {
        let mut entry = IdentityEntry::from_identity(&outcome.identity);
        entry.points = outcome.results.iter().map(|r| r.param.to_string()).collect();
        if let Some(first) = outcome.results.first() {
            entry.tol = Num::new(first.tol);
        }
        entry.passed = Some(outcome.passed());
        entry.worst_residual = Some(Num::new(outcome.worst_residual()));
        entry.effort = Some(outcome.effort());
        entry
    }
}

/// `total`, `passed` and `failed` count identities; the `records_*` fields
/// count individual parameter points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub records: usize,
    pub records_passed: usize,
    pub records_failed: usize,
    pub worst_residual: Num,
    pub total_effort: usize,
    pub wallclock: Num,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub timestamp: String,
    pub records: Vec<Record>,
    pub identities: Vec<IdentityEntry>,
    pub summary: Summary,
}

impl Report {
    pub fn new(outcomes: &[IdentityOutcome], wallclock_seconds: f64) -> Self {
        let records: Vec<Record> = outcomes
            .iter()
            .flat_map(|o| o.results.iter().map(|r| Record::new(&o.identity.citation, r)))
            .collect();
        let identities: Vec<IdentityEntry> = outcomes.iter().map(IdentityEntry::from_outcome).collect();
        let passed = outcomes.iter().filter(|o| o.passed()).count();
        let records_passed = records.iter().filter(|r| r.pass).count();
        let worst = records.iter().map(Record::residual).fold(0.0, f64::max);
        Report {
            version: VERSION.to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            summary: Summary {
                total: outcomes.len(),
                passed,
                failed: outcomes.len() - passed,
                records: records.len(),
                records_passed,
                records_failed: records.len() - records_passed,
                worst_residual: Num::new(worst),
                total_effort: records.iter().map(|r| r.effort).sum(),
                wallclock: Num::new(wallclock_seconds),
            },
            records,
            identities,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0 && self.summary.records_failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Every registry entry in registry order.
pub fn catalog() -> Vec<IdentityEntry> {
    registry().iter().map(IdentityEntry::from_identity).collect()
}

pub fn catalog_json() -> String {
    serde_json::to_string_pretty(&catalog()).expect("catalog serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::Verifier;

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(format_number(std::f64::consts::PI), "3.14159265358979");
        assert_eq!(format_number(0.915965594177219), "0.915965594177219");
        assert_eq!(format_number(1e-12), "1e-12");
        assert_eq!(format_number(2.5e-7), "2.5e-07");
        assert_eq!(format_number(-16.0), "-16");
        assert_eq!(format_number(1.0e20), "1e+20");
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(f64::INFINITY), "inf");
    }

    #[test]
    fn num_is_idempotent() {
        for x in [1.0 / 3.0, 1.166243616123275, 7.1e-13, 123456.789012345678] {
            let n = Num::new(x);
            assert_eq!(Num::new(n.get()), n);
            assert_eq!(format_number(n.get()), format_number(x));
        }
    }

    #[test]
    fn report_round_trips() {
        let verifier = Verifier::default();
        let plan: Vec<_> = registry()
            .into_iter()
            .filter(|i| ["ramanujan_3f2", "logsine", "summa_relation"].contains(&i.id.as_str()))
            .map(|i| {
                let p = i.points.clone();
                let t = i.tol;
                (i, p, t)
            })
            .collect();
        let report = Report::new(&verifier.run(&plan), 0.25);
        let json = report.to_json();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert_eq!(report.summary.total, 3);
        assert_eq!(report.summary.records, 6);
        assert_eq!(
            report.summary.records_passed + report.summary.records_failed,
            report.records.len()
        );
    }

    #[test]
    fn catalog_entries_round_trip() {
        let entries: Vec<IdentityEntry> = registry().iter().map(IdentityEntry::from_identity).collect();
        let json = serde_json::to_string(&entries).unwrap();
        let back: Vec<IdentityEntry> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, entries);
    }
}
