//! Verification reports shared by the checks and the command line.

use serde::Serialize;

use crate::fock::Comparison;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub identity: String,
    pub parameters: Vec<(String, String)>,
    pub status: Status,
    pub blocks_compared: usize,
    pub cells_compared: usize,
    pub mismatch_count: usize,
    /// First few differing cells, empty on success.
    pub residual_support: Vec<crate::fock::Mismatch>,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Report {
    pub fn new(identity: impl Into<String>) -> Self {
        Report {
            identity: identity.into(),
            parameters: Vec::new(),
            status: Status::Fail,
            blocks_compared: 0,
            cells_compared: 0,
            mismatch_count: 0,
            residual_support: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.push((key.to_string(), value.to_string()));
        self
    }

    pub fn note(mut self, text: impl Into<String>) -> Self {
        self.notes.push(text.into());
        self
    }

    pub fn with_comparison(mut self, cmp: Comparison) -> Self {
        self.status = if cmp.passed() { Status::Pass } else { Status::Fail };
        self.blocks_compared = cmp.blocks_compared;
        self.cells_compared = cmp.cells_compared;
        self.mismatch_count = cmp.mismatch_count;
        self.residual_support = cmp.mismatches;
        self
    }

    /// For checks that are not matrix comparisons.
    pub fn with_outcome(mut self, ok: bool, cells: usize) -> Self {
        self.status = if ok { Status::Pass } else { Status::Fail };
        self.cells_compared = cells;
        self.mismatch_count = usize::from(!ok);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}
