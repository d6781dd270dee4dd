//! Machine-readable certificate reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Version of the report layout; bumped on any incompatible change.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub detail: Value,
}

/// A named collection of checks: check name -> `{pass, detail}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub name: String,
    pub pass: bool,
    pub checks: BTreeMap<String, CheckResult>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Self { schema_version: SCHEMA_VERSION, name: name.into(), pass: true, checks: BTreeMap::new() }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: Value) -> bool {
        self.pass &= pass;
        self.checks.insert(name.into(), CheckResult { pass, detail });
        pass
    }

    /// Records an error as a failed check.
    pub fn fail(&mut self, name: impl Into<String>, err: impl std::fmt::Display) {
        self.check(name, false, Value::String(err.to_string()));
    }

    /// Copies the checks of `other` under `prefix.`.
    pub fn absorb(&mut self, prefix: &str, other: &Report) {
        for (k, c) in &other.checks {
            self.check(format!("{prefix}.{k}"), c.pass, c.detail.clone());
        }
        self.pass &= other.pass;
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, c)| !c.pass).map(|(k, _)| k.as_str()).collect()
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
