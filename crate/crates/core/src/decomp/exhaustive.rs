use rayon::prelude::*;

use crate::cmlat::{AbelianModel, CellSet};
use crate::error::{Error, Result};

use super::{
    judge_side, lambda_coeff2, probe_usability, probes_for, refute, Candidate, DecideMode, Probe, ProbeInfo,
    Refutation, Rule, SearchStats, Status, Step, Verdict, TRUSTED_REDUCTION,
};

/// Largest `g` the search accepts.
pub const MAX_G: usize = 4;

fn key(c2: &[i8]) -> usize {
    c2.iter().enumerate().map(|(i, &c)| ((c + 2) as usize) << (3 * i)).sum()
}

fn w_bit(code: u8) -> bool {
    code & 4 == 4
}

/// Per-probe integrality table over all doubled coefficient vectors.
fn probe_table(m: &AbelianModel, p: &Probe) -> Result<Vec<bool>> {
    let g = m.g();
    let values: Vec<i8> = {
        let mut v: Vec<i8> = (0..8).map(lambda_coeff2).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let total = values.len().pow(g as u32);
    let results: Vec<Result<(usize, bool)>> = (0..total)
        .into_par_iter()
        .map(|mut code| {
            let mut c2 = Vec::with_capacity(g);
            for _ in 0..g {
                c2.push(values[code % values.len()]);
                code /= values.len();
            }
            let xi: Vec<i8> = c2.iter().map(|x| 2 - x).collect();
            let ok = judge_side(m, p, &c2)?.integral && judge_side(m, p, &xi)?.integral;
            Ok((key(&c2), ok))
        })
        .collect();
    let mut table = vec![false; 1 << (3 * g)];
    for r in results {
        let (k, ok) = r?;
        table[k] = ok;
    }
    Ok(table)
}

struct PairChoices {
    all: u128,
    all_lambda: u128,
    all_xi: u128,
    first: Option<(u8, u8)>,
    /// First choice that puts a Θ cell on the Λ side, resp. the Ξ side.
    with_lambda: Option<(u8, u8)>,
    with_xi: Option<(u8, u8)>,
}

fn pair_choices(table: Option<&[bool]>, diag: &[u8], a: usize, b: usize) -> PairChoices {
    let mut out = PairChoices { all: 0, all_lambda: 0, all_xi: 0, first: None, with_lambda: None, with_xi: None };
    let mut c2: Vec<i8> = diag.iter().map(|&d| lambda_coeff2(d)).collect();
    for x in 0..8u8 {
        for y in 0..8u8 {
            let ok = match table {
                None => true,
                Some(t) => {
                    c2[a] = lambda_coeff2(x);
                    c2[b] = lambda_coeff2(y);
                    t[key(&c2)]
                }
            };
            if !ok {
                continue;
            }
            out.all += 1;
            out.first.get_or_insert((x, y));
            if w_bit(x) && w_bit(y) {
                out.all_lambda += 1;
            }
            if !w_bit(x) && !w_bit(y) {
                out.all_xi += 1;
            }
            if w_bit(x) || w_bit(y) {
                out.with_lambda.get_or_insert((x, y));
            }
            if !w_bit(x) || !w_bit(y) {
                out.with_xi.get_or_insert((x, y));
            }
        }
    }
    out
}

pub(super) fn run(m: &AbelianModel) -> Result<Verdict> {
    let g = m.g();
    if g > MAX_G {
        return Err(Error::InvalidInput(format!("exhaustive search supports g <= {MAX_G}, got {g}")));
    }
    let hypothesis = m.theorem_hypothesis()?;
    let probes = probes_for(m);
    let mut steps = vec![Step::note(Rule::Reduction, TRUSTED_REDUCTION)];
    steps.push(Step::note(
        Rule::Hypothesis,
        format!(
            "exponent hypothesis: {} proper subsets checked, minimum exponent {:?}",
            hypothesis.checked, hypothesis.min_exponent
        ),
    ));
    let mut infos = Vec::new();
    let mut tables: Vec<Option<Vec<bool>>> = Vec::new();
    for p in &probes {
        let usability = probe_usability(m, p)?;
        infos.push(ProbeInfo { id: p.id, label: p.label(), usability });
        steps.push(Step::on_probe(p.id, Rule::Usability, format!("probe {}: {usability:?}", p.label())));
        tables.push(if usability.usable() { Some(probe_table(m, p)?) } else { None });
    }
    let queries = tables.iter().flatten().count() * 6usize.pow(g as u32);

    let pairs: Vec<(usize, usize)> = probes[1..]
        .iter()
        .map(|p| {
            let moved: Vec<usize> = (0..g).filter(|&i| p.sigma[i] != i).collect();
            (moved[0], moved[1])
        })
        .collect();

    let n_diag = 1usize << (3 * g);
    let id_table = tables[0].as_ref().expect("identity probe is always usable");
    let per_diag: Vec<(u128, usize)> = (0..n_diag)
        .into_par_iter()
        .map(|code| {
            let diag: Vec<u8> = (0..g).map(|i| (code >> (3 * i) & 7) as u8).collect();
            let c2: Vec<i8> = diag.iter().map(|&d| lambda_coeff2(d)).collect();
            if !id_table[key(&c2)] {
                return (0, 0);
            }
            let (mut all, mut lam, mut xi) = (1u128, 1u128, 1u128);
            let mut blocked = usize::MAX;
            for (k, &(a, b)) in pairs.iter().enumerate() {
                let ch = pair_choices(tables[k + 1].as_deref(), &diag, a, b);
                if ch.all == 0 && blocked == usize::MAX {
                    blocked = k + 1;
                }
                all *= ch.all;
                lam *= ch.all_lambda;
                xi *= ch.all_xi;
            }
            if !diag.iter().all(|&d| w_bit(d)) {
                lam = 0;
            }
            if !diag.iter().all(|&d| !w_bit(d)) {
                xi = 0;
            }
            (all - lam - xi, blocked)
        })
        .collect();

    let passing = (0..n_diag)
        .filter(|&code| {
            let c2: Vec<i8> = (0..g).map(|i| lambda_coeff2((code >> (3 * i) & 7) as u8)).collect();
            id_table[key(&c2)]
        })
        .count() as u64;
    steps.push(Step::on_probe(
        0,
        Rule::Search,
        format!("identity probe: {passing} of {n_diag} diagonal assignments integral on both sides"),
    ));
    for (k, _) in pairs.iter().enumerate() {
        let killed = per_diag.iter().filter(|(_, blk)| *blk == k + 1).count();
        steps.push(Step::on_probe(
            k + 1,
            Rule::Search,
            format!(
                "probe {}: first to leave no admissible off-diagonal pair for {killed} passing diagonal assignments",
                probes[k + 1].label()
            ),
        ));
    }

    let survivors: u128 = per_diag.iter().map(|(s, _)| s).sum();
    let cells = (g * g) as u32;
    let nontrivial = 8u128.pow(cells) - 2 * 4u128.pow(cells);
    let stats = SearchStats {
        diagonal_assignments: n_diag as u64,
        diagonal_passing: passing,
        nontrivial_candidates: nontrivial,
        survivors,
        survivor_orbits: survivors / 2,
        queries,
    };

    let witness = per_diag.iter().position(|(s, _)| *s > 0).map(|code| build_witness(g, code, &pairs, &tables));
    if let Some(w) = &witness {
        match refute(w, m)? {
            Refutation::Passes { .. } => steps.push(Step::note(Rule::Search, "witness re-checked probe by probe: passes")),
            Refutation::Refuted { .. } => {
                return Err(Error::Candidate("internal inconsistency: constructed witness is refuted".into()))
            }
        }
    }
    steps.push(Step::note(
        Rule::Search,
        format!("{survivors} of {nontrivial} nontrivial candidates pass every usable probe"),
    ));
    let status = if survivors == 0 { Status::Indecomposable } else { Status::SurvivingCandidate };
    Ok(Verdict {
        status,
        mode: DecideMode::Exhaustive,
        g,
        hypothesis,
        probes: infos,
        steps,
        witness,
        stats: Some(stats),
    })
}

fn build_witness(g: usize, code: usize, pairs: &[(usize, usize)], tables: &[Option<Vec<bool>>]) -> Candidate {
    let diag: Vec<u8> = (0..g).map(|i| (code >> (3 * i) & 7) as u8).collect();
    let mut c = Candidate::new(CellSet::empty(g), CellSet::empty(g), CellSet::empty(g));
    for (i, &d) in diag.iter().enumerate() {
        c.set_cell_code(i, i, d);
    }
    let choices: Vec<_> =
        pairs.iter().enumerate().map(|(k, &(a, b))| pair_choices(tables[k + 1].as_deref(), &diag, a, b)).collect();
    for (ch, &(a, b)) in choices.iter().zip(pairs) {
        let (x, y) = ch.first.expect("surviving diagonal admits every pair");
        c.set_cell_code(a, b, x);
        c.set_cell_code(b, a, y);
    }
    if !c.is_nontrivial() {
        // Flip one pair to the side the diagonal does not use.
        let want_lambda = !w_bit(diag[0]);
        for (ch, &(a, b)) in choices.iter().zip(pairs) {
            let pick = if want_lambda { ch.with_lambda } else { ch.with_xi };
            if let Some((x, y)) = pick {
                c.set_cell_code(a, b, x);
                c.set_cell_code(b, a, y);
                break;
            }
        }
    }
    c
}
