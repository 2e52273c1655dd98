//! Check outcomes as plain data.

use serde::{Deserialize, Serialize};

/// Three-valued outcome. `Unknown` is reserved for checks that can neither
/// prove nor falsify on the lattice (currently only semicontinuity).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

/// Where and how badly a check was violated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    /// Point (or parameter vector) exhibiting the worst violation.
    pub point: Vec<f64>,
    pub detail: String,
}

/// Result of one verification sweep.
///
/// The invariant tying the fields together: `verdict` is `Fail` exactly when
/// `max_violation > tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub verdict: Verdict,
    pub max_violation: f64,
    pub tolerance: f64,
    pub witness: Option<Witness>,
    pub notes: Vec<String>,
}

impl CheckReport {
    /// Builds a report from a measured violation, deciding the verdict
    /// against `tolerance`. A non-finite violation is a failure.
    pub fn from_violation(
        name: impl Into<String>,
        max_violation: f64,
        tolerance: f64,
        witness: Option<Witness>,
    ) -> Self {
        let verdict = if max_violation.is_finite() && max_violation <= tolerance {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        CheckReport {
            name: name.into(),
            verdict,
            max_violation,
            tolerance,
            witness,
            notes: Vec::new(),
        }
    }

    pub fn pass(name: impl Into<String>) -> Self {
        CheckReport::from_violation(name, 0.0, 0.0, None)
    }

    pub fn unknown(name: impl Into<String>, note: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            verdict: Verdict::Unknown,
            max_violation: 0.0,
            tolerance: 0.0,
            witness: None,
            notes: vec![note.into()],
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// A report counts as passing unless it was positively falsified.
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}
