//! Verification reports and their JSON form.
//!
//! Reports are deterministic: checks are stored in the order they were declared,
//! floats are printed by `serde_json` in shortest round-trip form, and the
//! wall-clock duration is only recorded on request.

use serde::Serialize;
use serde_json::Value;

use crate::algebra::Tolerances;

/// Version of the JSON layout below.
pub const SCHEMA_VERSION: u32 = 1;

/// One named check inside a suite.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// Short statement of the property the check exercises.
    pub anchor: String,
    pub passed: bool,
    /// Worst numerical residual, when the check measures one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    /// Witnesses, counts and the error message of a check that could not run.
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub suite: String,
    pub algebra: String,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub samples: usize,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(
        suite: &str,
        algebra: &str,
        seed: u64,
        tolerances: Tolerances,
        samples: usize,
    ) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            suite: suite.to_string(),
            algebra: algebra.to_string(),
            seed,
            tolerances,
            samples,
            passed: true,
            checks: Vec::new(),
            duration_ms: None,
        }
    }

    pub fn push(&mut self, check: CheckRecord) {
        self.passed &= check.passed;
        self.checks.push(check);
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Largest recorded residual.
    pub fn max_residual(&self) -> Option<f64> {
        self.checks
            .iter()
            .filter_map(|c| c.residual)
            .reduce(f64::max)
    }

    /// Process exit code: 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut text =
            serde_json::to_string_pretty(self).expect("report serialization is infallible");
        text.push('\n');
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn check(name: &str, passed: bool, residual: Option<f64>) -> CheckRecord {
        CheckRecord {
            name: name.into(),
            anchor: "anchor".into(),
            passed,
            residual,
            detail: json!({}),
        }
    }

    #[test]
    fn aggregation_and_exit_code() {
        let mut r = VerificationReport::new("axioms", "mat:2", 1, Tolerances::default(), 4);
        r.push(check("a", true, Some(1e-15)));
        assert_eq!(r.exit_code(), 0);
        r.push(check("b", false, Some(0.5)));
        r.push(check("c", true, None));
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.failures().count(), 1);
        assert_eq!(r.max_residual(), Some(0.5));
    }

    #[test]
    fn json_layout_is_stable() {
        let mut r = VerificationReport::new("axioms", "mat:2", 1, Tolerances::default(), 4);
        r.push(check("a", true, Some(0.1)));
        let text = r.to_json();
        assert_eq!(text, r.clone().to_json());
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["checks"][0]["residual"], 0.1);
        assert!(v.get("duration_ms").is_none());
        assert!(v["checks"][0].get("anchor").is_some());
    }
}
