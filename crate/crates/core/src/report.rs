//! Axiom-by-axiom report records shared by the recognizers and amalgamation checkers.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Holds for every finite input; evaluated anyway where cheap.
    Trivial,
    NotEvaluated,
}

impl Status {
    pub fn ok(self) -> bool {
        matches!(self, Status::Pass | Status::Trivial)
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomStatus {
    pub axiom: String,
    pub status: Status,
    pub detail: String,
    /// Element or morphism indices backing the verdict (counterexample on failure).
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witness: Vec<usize>,
}

impl AxiomStatus {
    pub fn new(axiom: &str, status: Status, detail: impl Into<String>) -> Self {
        AxiomStatus { axiom: axiom.to_string(), status, detail: detail.into(), witness: Vec::new() }
    }

    pub fn with_witness(mut self, witness: Vec<usize>) -> Self {
        self.witness = witness;
        self
    }

    pub fn not_evaluated(axiom: &str) -> Self {
        Self::new(axiom, Status::NotEvaluated, "skipped after an earlier failure")
    }
}

/// First failing axiom in report order.
pub fn first_failure(axioms: &[AxiomStatus]) -> Option<&AxiomStatus> {
    axioms.iter().find(|a| a.status == Status::Fail)
}
