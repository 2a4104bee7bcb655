//! Verifier reports.
//!
//! Every verifier in the crate returns a [`Report`]. Verifiers push only
//! failing records, so a report is empty exactly when every check passed.
//! Batteries run from the command line add one passing record per item so
//! the serialized document lists the full run.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub witness: String,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Report {
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fail(&mut self, check: impl Into<String>, witness: impl Into<String>, residual: f64) {
        self.records.push(CheckRecord {
            check: check.into(),
            witness: witness.into(),
            residual,
            pass: false,
        });
    }

    pub fn pass(&mut self, check: impl Into<String>, witness: impl Into<String>, residual: f64) {
        self.records.push(CheckRecord {
            check: check.into(),
            witness: witness.into(),
            residual,
            pass: true,
        });
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// True when no record failed.
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }
}
