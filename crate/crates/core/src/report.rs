//! Pass/fail reports shared by every condition suite.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

/// The inputs and the two unequal sides of a failed identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn new(input: impl Into<String>, lhs: impl ToString, rhs: impl ToString) -> Self {
        Witness { input: input.into(), lhs: lhs.to_string(), rhs: rhs.to_string() }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} lhs={} rhs={}", self.input, self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub label: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct CheckReport {
    pub title: String,
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new(title: impl Into<String>) -> Self {
        CheckReport { title: title.into(), entries: Vec::new() }
    }

    /// Records `label` as passed when `outcome` is `None`.
    pub fn record(&mut self, label: impl Into<String>, outcome: Option<Witness>) {
        self.entries.push(CheckEntry { label: label.into(), passed: outcome.is_none(), witness: outcome, note: None });
    }

    pub fn record_note(&mut self, label: impl Into<String>, passed: bool, note: impl Into<String>) {
        self.entries.push(CheckEntry { label: label.into(), passed, witness: None, note: Some(note.into()) });
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn entry(&self, label: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    /// `Some(true)` if present and passing.
    pub fn status(&self, label: &str) -> Option<bool> {
        self.entry(label).map(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.entries.extend(other.entries);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.title.is_empty() {
            writeln!(f, "# {}", self.title)?;
        }
        for e in &self.entries {
            write!(f, "{}: {}", e.label, if e.passed { "PASS" } else { "FAIL" })?;
            if let Some(w) = &e.witness {
                write!(f, " witness={w}")?;
            }
            if let Some(n) = &e.note {
                write!(f, " ({n})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// First failure in input order; parallel, but deterministic.
pub fn first_failure<T: Sync>(items: &[T], check: impl Fn(&T) -> Option<Witness> + Sync + Send) -> Option<Witness> {
    items.par_iter().find_map_first(check)
}
