//! The machine-readable report wrapper shared by every subcommand.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Status {
    pub check: String,
    pub outcome: Outcome,
    pub detail: String,
}

impl Status {
    pub fn new(check: impl Into<String>, outcome: Outcome, detail: impl Into<String>) -> Self {
        Status { check: check.into(), outcome, detail: detail.into() }
    }

    pub fn pass_if(check: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Self::new(check, if ok { Outcome::Pass } else { Outcome::Fail }, detail)
    }
}

/// Fields serialize in declaration order; object keys inside `payload` are sorted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub command: String,
    pub input: BTreeMap<String, String>,
    pub payload: Value,
    pub statuses: Vec<Status>,
    pub version: String,
}

impl ReportEnvelope {
    /// 1 if any check failed, else 3 if any is inconclusive, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.statuses.iter().any(|s| s.outcome == Outcome::Fail) {
            1
        } else if self.statuses.iter().any(|s| s.outcome == Outcome::Inconclusive) {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("envelope values are plain JSON");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
