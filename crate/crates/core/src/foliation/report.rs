use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one verification: pass iff `max_residual <= tolerance`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub status: Status,
    pub max_residual: f64,
    pub tolerance: f64,
    pub points: usize,
    pub details: Value,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, max_residual: f64, tolerance: f64, points: usize, details: Value) -> Self {
        let status = if max_residual <= tolerance { Status::Pass } else { Status::Fail };
        Self { check: check.into(), status, max_residual, tolerance, points, details }
    }

    /// A report whose status is decided by an extra condition besides the residual.
    pub fn with_condition(mut self, ok: bool) -> Self {
        if !ok {
            self.status = Status::Fail;
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn detail_f64(&self, key: &str) -> Option<f64> {
        self.details.get(key).and_then(Value::as_f64)
    }
}
