use serde::Serialize;

use crate::error::Result;
use crate::exact::{QuadInt, Rat};

use super::{AbelianModel, Subset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LiverpoolOutcome {
    Consistent,
    Violates,
}

/// Tests whether `2e_A + e_B` is a counterexample to the subsets lemma:
/// integral while `A` or `B` is a proper nonempty subset.
pub fn liverpool_check(m: &AbelianModel, a: Subset, b: Subset) -> Result<LiverpoolOutcome> {
    m.theorem_hypothesis()?;
    liverpool_unchecked(m, a, b)
}

fn liverpool_unchecked(m: &AbelianModel, a: Subset, b: Subset) -> Result<LiverpoolOutcome> {
    let g = m.g();
    let x = &m.idempotent(a).scale(&QuadInt::from_rat(Rat::from_integer(2.into()), m.d())) + &m.idempotent(b);
    let trivial = |k: Subset| k.is_empty() || k.is_full(g);
    if m.is_integral(&x)? && !(trivial(a) && trivial(b)) {
        Ok(LiverpoolOutcome::Violates)
    } else {
        Ok(LiverpoolOutcome::Consistent)
    }
}

/// Every pair `(A, B)` violating the subsets lemma, in lexicographic bitmask order.
pub fn liverpool_scan(m: &AbelianModel) -> Result<Vec<(Subset, Subset)>> {
    m.theorem_hypothesis()?;
    let mut out = Vec::new();
    for a in Subset::all(m.g()) {
        for b in Subset::all(m.g()) {
            if liverpool_unchecked(m, a, b)? == LiverpoolOutcome::Violates {
                out.push((a, b));
            }
        }
    }
    Ok(out)
}
