//! Pass/fail reports shared by all verification routines.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    /// Human-readable descriptions of failing instances; capped at [`MAX_WITNESSES`].
    pub witnesses: Vec<String>,
    pub notes: Vec<String>,
}

pub const MAX_WITNESSES: usize = 20;

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), passed: true, witnesses: Vec::new(), notes: Vec::new() }
    }

    /// Records a failure.
    pub fn fail(&mut self, witness: impl Into<String>) {
        self.passed = false;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness.into());
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if !ok {
            self.fail(witness());
        }
    }

    /// Merges another report's outcome into this one.
    pub fn absorb(&mut self, other: CheckReport) {
        if !other.passed {
            self.passed = false;
        }
        for w in other.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(format!("{}: {w}", other.name));
            }
        }
        self.notes.extend(other.notes.into_iter().map(|n| format!("{}: {n}", other.name)));
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", if self.passed { "PASS" } else { "FAIL" }, self.name)?;
        for w in &self.witnesses {
            write!(f, "\n  witness: {w}")?;
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}
