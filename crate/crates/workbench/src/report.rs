//! JSON reports. Everything except `timings` is a function of the scenario
//! and the tool version, so two runs serialize to the same bytes once the
//! timings are dropped.

use std::collections::BTreeMap;

use hecke_core::bkiso::MoritaSummand;
use hecke_core::params::Params;
use hecke_core::report::{Check, Status};
use serde::Serialize;

use crate::config::{Expect, Scenario};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    /// The check met its expectation (pass, or fail where fail is expected).
    Ok,
    Unexpected,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub id: String,
    pub suite: String,
    #[serde(flatten)]
    pub check: Check,
    pub expect: Expect,
    pub outcome: Outcome,
}

impl Entry {
    pub fn new(id: String, suite: &str, check: Check, expect: Expect) -> Self {
        let outcome = match (check.status, expect) {
            (Status::Skip, _) => Outcome::Skipped,
            (Status::Pass, Expect::Pass) | (Status::Fail, Expect::Fail) => Outcome::Ok,
            _ => Outcome::Unexpected,
        };
        Entry {
            id,
            suite: suite.to_string(),
            check,
            expect,
            outcome,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub expected_failures: usize,
    pub unexpected: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: Tool,
    pub seed: u64,
    pub config: Scenario,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<Params>,
    pub dims: BTreeMap<String, u64>,
    pub graded: BTreeMap<String, BTreeMap<i64, u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub morita: Option<Vec<MoritaSummand>>,
    pub checks: Vec<Entry>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl Report {
    pub fn new(config: Scenario) -> Self {
        Report {
            schema: SCHEMA,
            tool: Tool {
                name: "workbench",
                version: env!("CARGO_PKG_VERSION"),
            },
            seed: config.seed,
            config,
            params: None,
            dims: BTreeMap::new(),
            graded: BTreeMap::new(),
            morita: None,
            checks: Vec::new(),
            summary: Summary::default(),
            timings: Some(BTreeMap::new()),
        }
    }

    /// Add a check under `suite` (and `family`, if any) with the verdict the
    /// scenario expects for it.
    pub fn push(&mut self, suite: &str, family: Option<&str>, check: Check) {
        let id = match family {
            Some(fam) => format!("{suite}/{fam}/{}", check.name),
            None => format!("{suite}/{}", check.name),
        };
        let expect = self.config.expect.get(&id).copied().unwrap_or(Expect::Pass);
        self.checks.push(Entry::new(id, suite, check, expect));
    }

    pub fn finish(&mut self) {
        let mut s = Summary {
            total: self.checks.len(),
            ..Summary::default()
        };
        for e in &self.checks {
            match e.check.status {
                Status::Pass => s.passed += 1,
                Status::Fail => s.failed += 1,
                Status::Skip => s.skipped += 1,
            }
            if e.check.status == Status::Fail && e.outcome == Outcome::Ok {
                s.expected_failures += 1;
            }
            if e.outcome == Outcome::Unexpected {
                s.unexpected += 1;
            }
        }
        self.summary = s;
    }

    pub fn entry(&self, id: &str) -> Option<&Entry> {
        self.checks.iter().find(|e| e.id == id)
    }

    /// 0 when every non-skipped check met its expectation, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.summary.unexpected == 0 {
            0
        } else {
            1
        }
    }

    /// The deterministic part: the report without timings.
    pub fn canonical_json(&self) -> String {
        let mut copy = self.clone();
        copy.timings = None;
        serde_json::to_string_pretty(&copy).expect("reports serialize")
    }

    pub fn json(&self, with_timings: bool) -> String {
        if with_timings {
            serde_json::to_string_pretty(self).expect("reports serialize")
        } else {
            self.canonical_json()
        }
    }

    /// One line per check, for terminals.
    pub fn text(&self) -> String {
        let mut out = String::new();
        for e in &self.checks {
            let verdict = match (e.outcome, e.check.status) {
                (Outcome::Skipped, _) => "SKIP".to_string(),
                (Outcome::Ok, Status::Fail) => "FAIL (expected)".to_string(),
                (Outcome::Ok, _) => "PASS".to_string(),
                (Outcome::Unexpected, Status::Pass) => "PASS (expected fail)".to_string(),
                (Outcome::Unexpected, _) => "FAIL".to_string(),
            };
            out.push_str(&format!("{verdict:<20} {} [{}/{} failed]\n", e.id, e.check.failed, e.check.instances));
            for f in &e.check.failures {
                out.push_str(&format!("    {f}\n"));
            }
            if let Some(r) = e.check.data.get("reason") {
                out.push_str(&format!("    reason: {r}\n"));
            }
        }
        let s = &self.summary;
        out.push_str(&format!(
            "{} checks: {} passed, {} failed ({} expected), {} skipped\n",
            s.total, s.passed, s.failed, s.expected_failures, s.skipped
        ));
        out
    }
}
