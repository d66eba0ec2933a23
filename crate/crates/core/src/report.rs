//! Verdicts of the verification suites.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

/// How many failing instances a check keeps verbatim.
pub const FAILURE_SAMPLE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// One verified claim: how many instances were tested and which failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// The mathematical statement under test, in words.
    pub claim: String,
    pub status: Status,
    pub instances: u64,
    pub failed: u64,
    pub failures: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, String>,
}

impl Check {
    pub fn new(name: impl Into<String>, claim: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            claim: claim.into(),
            status: Status::Pass,
            instances: 0,
            failed: 0,
            failures: Vec::new(),
            data: BTreeMap::new(),
        }
    }

    /// Count one instance; `detail` is only built on failure.
    pub fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failed += 1;
            self.status = Status::Fail;
            if self.failures.len() < FAILURE_SAMPLE {
                self.failures.push(detail());
            }
        }
    }

    pub fn skip(mut self, reason: impl Into<String>) -> Self {
        self.status = Status::Skip;
        self.data.insert("reason".into(), reason.into());
        self
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.data.insert(key.into(), value.into());
    }

    pub fn with(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.note(key, value);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}
