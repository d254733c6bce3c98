//! Pass/fail records for identity checks.
//!
//! Verifiers never throw on an identity mismatch; they return a report whose
//! records carry witness values, so batches of instances can be checked and
//! summarized uniformly.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail => write!(f, "fail"),
            Verdict::Skipped => write!(f, "skipped"),
        }
    }
}

/// One identity check: a stable id, the verdict, and witness values
/// (label/value pairs, populated on failure or skip).
#[derive(Debug, Clone)]
pub struct CheckRecord {
    pub id: String,
    pub verdict: Verdict,
    pub witness: Vec<(String, String)>,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new() -> Self {
        Report { records: Vec::new() }
    }

    pub fn push_pass(&mut self, id: &str) {
        self.records.push(CheckRecord {
            id: id.to_string(),
            verdict: Verdict::Pass,
            witness: Vec::new(),
        });
    }

    pub fn push_fail(&mut self, id: &str, witness: Vec<(String, String)>) {
        self.records.push(CheckRecord {
            id: id.to_string(),
            verdict: Verdict::Fail,
            witness,
        });
    }

    pub fn push_skipped(&mut self, id: &str, reason: &str) {
        self.records.push(CheckRecord {
            id: id.to_string(),
            verdict: Verdict::Skipped,
            witness: alloc::vec![("reason".to_string(), reason.to_string())],
        });
    }

    /// Record an equality check, storing both sides as witnesses on mismatch.
    pub fn push_eq<V: fmt::Display + PartialEq>(&mut self, id: &str, lhs: &V, rhs: &V) {
        if lhs == rhs {
            self.push_pass(id);
        } else {
            self.push_fail(
                id,
                alloc::vec![
                    ("lhs".to_string(), lhs.to_string()),
                    ("rhs".to_string(), rhs.to_string()),
                ],
            );
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    /// Aggregate verdict: pass iff no record failed (skips do not fail).
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.verdict != Verdict::Fail)
    }

    pub fn failed_records(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.verdict == Verdict::Fail)
    }

    /// The (id, verdict) sequence, used to compare runs across fields.
    pub fn verdicts(&self) -> Vec<(String, Verdict)> {
        self.records
            .iter()
            .map(|r| (r.id.clone(), r.verdict))
            .collect()
    }
}
