//! Structured pass/fail record for identity and ladder checks.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub type Params = BTreeMap<String, Value>;

/// Builds a parameter map from `(name, value)` pairs.
pub fn params<const N: usize>(pairs: [(&str, Value); N]) -> Params {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub check_name: String,
    pub parameters: Params,
    pub measured_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub entries: Vec<ReportEntry>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records one check. A NaN error never passes.
    pub fn record(&mut self, check_name: impl Into<String>, parameters: Params, measured_error: f64, tolerance: f64) {
        let passed = measured_error <= tolerance;
        self.entries.push(ReportEntry {
            check_name: check_name.into(),
            parameters,
            measured_error,
            tolerance,
            passed,
        });
    }

    /// Records a check whose computation itself failed.
    pub fn record_failure(&mut self, check_name: impl Into<String>, mut parameters: Params, tolerance: f64, reason: &str) {
        parameters.insert("error".into(), Value::String(reason.to_string()));
        self.entries.push(ReportEntry {
            check_name: check_name.into(),
            parameters,
            measured_error: f64::INFINITY,
            tolerance,
            passed: false,
        });
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.entries.extend(other.entries);
    }

    /// Largest measured error among entries whose name starts with `prefix`.
    pub fn max_error(&self, prefix: &str) -> f64 {
        self.entries
            .iter()
            .filter(|e| e.check_name.starts_with(prefix))
            .map(|e| e.measured_error)
            .fold(0.0, f64::max)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
