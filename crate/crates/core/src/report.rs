//! Pass/fail records produced by the verification routines.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::Value;

/// Witnesses kept per check.
pub const MAX_WITNESSES: usize = 5;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Number of individual instances tested.
    pub cases: usize,
    pub failures: usize,
    pub witnesses: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), passed: true, cases: 0, failures: 0, witnesses: Vec::new() }
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(witness());
        }
    }

    pub fn fail(&mut self, witness: String) {
        self.passed = false;
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness);
        }
    }

    pub fn merge(&mut self, other: Check) {
        self.cases += other.cases;
        self.failures += other.failures;
        self.passed &= other.passed;
        for w in other.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w);
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub passed: bool,
    pub params: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    /// Informational output that is not a pass/fail criterion.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Self { suite: suite.into(), passed: true, params: BTreeMap::new(), checks: Vec::new(), notes: Vec::new() }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Checks ordered by name.
    pub fn sorted(mut self) -> Self {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        self
    }

    pub fn push(&mut self, c: Check) {
        self.passed &= c.passed;
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        for c in other.checks {
            self.push(c);
        }
        self.notes.extend(other.notes);
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "suite {}", self.suite)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        writeln!(f, ": {}", if self.passed { "PASS" } else { "FAIL" })?;
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {} ({} cases, {} failures)",
                if c.passed { "ok" } else { "FAIL" },
                c.name,
                c.cases,
                c.failures
            )?;
            for w in &c.witnesses {
                writeln!(f, "      witness: {w}")?;
            }
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
