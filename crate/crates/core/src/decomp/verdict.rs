use serde::Serialize;

use crate::cmlat::{EndoQ, HypothesisCheck};

use super::{Candidate, Rule, Usability};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Indecomposable,
    SurvivingCandidate,
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DecideMode {
    Exhaustive,
    Prooftrace,
}

/// One recorded inference.
#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub probe: Option<usize>,
    pub rule: Rule,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integral: Option<bool>,
    #[serde(serialize_with = "crate::json::serialize_endo", skip_serializing_if = "Option::is_none")]
    pub query: Option<EndoQ>,
    pub note: String,
}

impl Step {
    pub fn note(rule: Rule, note: impl Into<String>) -> Self {
        Step { probe: None, rule, integral: None, query: None, note: note.into() }
    }

    pub fn on_probe(probe: usize, rule: Rule, note: impl Into<String>) -> Self {
        Step { probe: Some(probe), rule, integral: None, query: None, note: note.into() }
    }

    pub fn with_query(mut self, q: EndoQ, integral: bool) -> Self {
        self.query = Some(q);
        self.integral = Some(integral);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeInfo {
    pub id: usize,
    pub label: String,
    pub usability: Usability,
}

/// Counts from an exhaustive run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Assignments of the `g` diagonal cells, `8^g`.
    pub diagonal_assignments: u64,
    /// Diagonal assignments passing the identity probe.
    pub diagonal_passing: u64,
    /// Nontrivial candidates, ignoring the B-type summands.
    pub nontrivial_candidates: u128,
    /// Nontrivial candidates passing every usable probe.
    pub survivors: u128,
    /// Survivors up to exchanging Λ and Ξ.
    pub survivor_orbits: u128,
    /// Distinct integrality queries evaluated.
    pub queries: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub mode: DecideMode,
    pub g: usize,
    pub hypothesis: HypothesisCheck,
    pub probes: Vec<ProbeInfo>,
    pub steps: Vec<Step>,
    pub witness: Option<Candidate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<SearchStats>,
}
