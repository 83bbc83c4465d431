//! Verification records.
//!
//! Each [`Check`] is keyed by the equation label of the identity it tests
//! (`"macf_b"`, `"fujio"`, `"genhol2"`, …). Labels are frozen strings so
//! report files stay greppable across versions.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Default pass threshold for identity residuals.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

pub type Params = BTreeMap<String, Value>;

/// Round to 15 significant digits, the precision residuals are reported with.
pub fn round_sig15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

pub fn complex_value(z: Complex64) -> Value {
    serde_json::json!({ "re": z.re, "im": z.im })
}

/// One identity residual with its verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub identity: String,
    #[serde(default)]
    pub params: Params,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl Check {
    pub fn new(identity: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        let residual = if residual.is_finite() { round_sig15(residual) } else { f64::MAX };
        Self {
            identity: identity.into(),
            params: Params::new(),
            residual,
            tolerance,
            pass: residual < tolerance,
            notes: Vec::new(),
        }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

/// A batch of checks produced by one verifier call.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    #[serde(default)]
    pub params: Params,
    pub checks: Vec<Check>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn param_complex(&mut self, key: &str, z: Complex64) -> &mut Self {
        self.params.insert(key.to_string(), complex_value(z));
        self
    }

    /// Append a check; the report-level parameters are echoed into it.
    pub fn push(&mut self, mut check: Check) {
        for (k, v) in &self.params {
            check.params.entry(k.clone()).or_insert_with(|| v.clone());
        }
        self.checks.push(check);
    }

    pub fn record(&mut self, identity: &str, residual: f64, tolerance: f64) -> &mut Check {
        self.push(Check::new(identity, residual, tolerance));
        self.checks.last_mut().expect("just pushed")
    }

    pub fn extend(&mut self, other: VerificationReport) {
        for c in other.checks {
            self.push(c);
        }
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, identity: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.identity == identity)
    }

    /// Residual of a named check. Panics if absent; meant for tests and drivers.
    pub fn residual(&self, identity: &str) -> f64 {
        self.get(identity)
            .unwrap_or_else(|| panic!("no check named {identity}"))
            .residual
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_below_tolerance() {
        assert!(Check::new("x", 1e-11, 1e-10).pass);
        assert!(!Check::new("x", 1e-10, 1e-10).pass);
        assert!(!Check::new("x", f64::NAN, 1e-10).pass);
    }

    #[test]
    fn residuals_keep_fifteen_digits() {
        let r = round_sig15(1.234_567_890_123_456_7e-11);
        assert_eq!(format!("{r:e}"), "1.23456789012346e-11");
    }

    #[test]
    fn report_params_echo_into_checks() {
        let mut rep = VerificationReport::new();
        rep.param("dim", 8).param_complex("q", Complex64::new(1.3, 0.0));
        rep.record("macf_b", 0.0, 1e-10);
        let c = rep.get("macf_b").unwrap();
        assert_eq!(c.params["dim"], serde_json::json!(8));
        assert_eq!(c.params["q"], serde_json::json!({"re": 1.3, "im": 0.0}));
    }

    #[test]
    fn json_round_trip() {
        let mut rep = VerificationReport::new();
        rep.param("kind", "HY");
        rep.record("hyo_a", 3.141592653589793e-13, 1e-10).notes.push("n".into());
        rep.record("hyo_b", 2.0, 1e-10);
        let text = serde_json::to_string(&rep).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rep);
        assert!(!back.passed());
    }
}
