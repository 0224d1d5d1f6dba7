//! Decision procedure for essential indecomposability of `M²_tr(C×C)`.
//!
//! A candidate splitting assigns every cell of the three grids to Λ or Ξ.
//! Convolving both sides with permutation probes gives endomorphisms that
//! must be integral; a candidate failing any probe is refuted.

mod candidate;
mod exhaustive;
mod probe;
mod prooftrace;
mod verdict;

pub use candidate::{Candidate, B_SLOTS};
pub use probe::{
    eval_probe, judge_side, lambda_coeff2, probe_coeffs, probe_images, probe_usability, probes_for, xi_coeff2,
    Judgement, Probe, Rule, Usability,
};
pub use verdict::{DecideMode, ProbeInfo, SearchStats, Status, Step, Verdict};

use serde::Serialize;

use crate::cmlat::AbelianModel;
use crate::error::{Error, Result};

/// Heading recorded at the top of every trace.
pub const TRUSTED_REDUCTION: &str = "trusted reduction: semisimplicity of numerical motives forces any \
     integral splitting of the diagonal into the grid shape; candidates range over grid-shaped splittings only";

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Refutation {
    Refuted { steps: Vec<Step> },
    Passes { steps: Vec<Step> },
}

impl Refutation {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Refutation::Refuted { .. })
    }
}

/// Runs every usable probe on one nontrivial candidate.
pub fn refute(c: &Candidate, m: &AbelianModel) -> Result<Refutation> {
    m.theorem_hypothesis()?;
    c.validate(m.g())?;
    if !c.is_nontrivial() {
        return Err(Error::Candidate("trivial candidate: one side of the Θ grid is empty".into()));
    }
    let mut steps = Vec::new();
    for p in probes_for(m) {
        let usability = probe_usability(m, &p)?;
        if !usability.usable() {
            steps.push(Step::on_probe(p.id, Rule::Usability, format!("probe {} skipped: not integral", p.label())));
            continue;
        }
        let (lambda, xi) = probe_images(c, &p, m)?;
        let c2 = probe_coeffs(c, &p);
        let xi2: Vec<i8> = c2.iter().map(|x| 2 - x).collect();
        for (side, image, coeffs) in [("lambda", lambda, c2), ("xi", xi, xi2)] {
            let j = judge_side(m, &p, &coeffs)?;
            let step = Step::on_probe(p.id, j.rule, format!("probe {} on the {side} side", p.label()))
                .with_query(image, j.integral);
            steps.push(step);
            if !j.integral {
                return Ok(Refutation::Refuted { steps });
            }
        }
    }
    Ok(Refutation::Passes { steps })
}

/// Decides indecomposability by search (`g ≤ 4`) or by replaying the proof.
pub fn decide(m: &AbelianModel, mode: DecideMode) -> Result<Verdict> {
    match mode {
        DecideMode::Exhaustive => exhaustive::run(m),
        DecideMode::Prooftrace => prooftrace::run(m),
    }
}
