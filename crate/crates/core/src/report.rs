//! Per-index verification records.

use alloc::string::String;
use alloc::vec::Vec;

/// Both sides of a failed check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// What the claim predicts.
    pub expected: String,
    /// What the exact computation produced.
    pub computed: String,
}

/// One checked index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckEntry {
    /// The index (`n` or `k`) that was checked.
    pub index: u64,
    /// Whether the claim held.
    pub passed: bool,
    /// Present exactly when `passed` is false.
    pub counterexample: Option<Counterexample>,
}

/// Outcome of checking a claim over a range of indices.
///
/// Failures are data: a report with failing entries is still a successful
/// computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    /// Short name of the claim.
    pub claim: String,
    /// One entry per index, in increasing index order.
    pub entries: Vec<CheckEntry>,
    /// Notes that are worth surfacing but are not failures.
    pub findings: Vec<String>,
}

impl VerificationReport {
    /// An empty report for `claim`.
    pub fn new(claim: impl Into<String>) -> Self {
        VerificationReport {
            claim: claim.into(),
            entries: Vec::new(),
            findings: Vec::new(),
        }
    }

    /// Records a passing index.
    pub fn pass(&mut self, index: u64) {
        self.entries.push(CheckEntry {
            index,
            passed: true,
            counterexample: None,
        });
    }

    /// Records a failing index together with both values.
    pub fn fail(&mut self, index: u64, expected: String, computed: String) {
        self.entries.push(CheckEntry {
            index,
            passed: false,
            counterexample: Some(Counterexample { expected, computed }),
        });
    }

    /// Records `index` as passing when `ok`, failing with the lazily built
    /// values otherwise.
    pub fn record(&mut self, index: u64, ok: bool, values: impl FnOnce() -> (String, String)) {
        if ok {
            self.pass(index);
        } else {
            let (expected, computed) = values();
            self.fail(index, expected, computed);
        }
    }

    /// True when there is at least one entry and none failed.
    pub fn all_passed(&self) -> bool {
        !self.entries.is_empty() && self.entries.iter().all(|e| e.passed)
    }

    /// The failing entries.
    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }
}
