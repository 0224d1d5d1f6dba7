
use crate::cmlat::{
    invert_perm, liverpool_scan, perm_endo, rosati, twisted_idempotent, AbelianModel, CellSet, EndoQ, Mode,
    PermEndoSpec, Subset,
};
use crate::corr::{conv_rosati, Corr2, GridProjectors};
use crate::error::Result;
use crate::exact::Rat;

use super::{
    lambda_coeff2, probe_usability, probes_for, xi_coeff2, DecideMode, Probe, ProbeInfo, Rule, Status, Step, Verdict,
    TRUSTED_REDUCTION,
};

/// Largest `g` for which the subsets lemma is cross-checked by brute force in lattice mode.
const SCAN_LIMIT: usize = 6;

/// Checks the convolution values of every grid class against the closed forms
/// `2·R_{ji}E_{ji}` (Θ) and `−½·R_{ji}E_{ji}` (𝔄¹, 𝔄²), with `R = rosati(σ_J)`.
fn check_table(m: &AbelianModel, grids: &GridProjectors, p: &Probe) -> Result<bool> {
    let g = m.g();
    let r = rosati(&p.endo, m);
    let zero = EndoQ::zeros(&m.zero(), g, g);
    let two = Rat::from_integer(2.into());
    let minus_half = Rat::new((-1).into(), 2.into());
    for i in 0..g {
        for j in 0..g {
            let mut theta = zero.clone();
            theta[(j, i)] = r[(j, i)].scale(&two);
            let mut atom = zero.clone();
            atom[(j, i)] = r[(j, i)].scale(&minus_half);
            if conv_rosati(&r, grids.theta(i, j)) != theta
                || conv_rosati(&r, grids.a1(i, j)) != atom
                || conv_rosati(&r, grids.a2(i, j)) != atom
            {
                return Ok(false);
            }
        }
    }
    Ok(conv_rosati(&r, &Corr2::identity(grids.context())) == r)
}

/// The twisting identity `rosati(σ_U)·rosati(σ_J⁻¹) = e_{σ,U}` on single cells.
fn check_twist(m: &AbelianModel, p: &Probe) -> Result<bool> {
    let g = m.g();
    let inv = perm_endo(m, &PermEndoSpec::full(invert_perm(&p.sigma)))?;
    let rinv = rosati(&inv, m);
    for i in 0..g {
        let cell = CellSet::from_cells(g, [(i, p.sigma[i])]);
        let su = perm_endo(m, &PermEndoSpec { sigma: p.sigma.clone(), region: cell.clone() })?;
        let lhs = &rosati(&su, m) * &rinv;
        if lhs != twisted_idempotent(m, &p.sigma, &cell)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(super) fn run(m: &AbelianModel) -> Result<Verdict> {
    let g = m.g();
    let hypothesis = m.theorem_hypothesis()?;
    let mut steps = vec![Step::note(Rule::Reduction, TRUSTED_REDUCTION)];
    steps.push(Step::note(
        Rule::Hypothesis,
        match m.mode() {
            Mode::Lattice => format!(
                "n_K >= 4 verified on all {} proper nonempty subsets (minimum {:?})",
                hypothesis.checked, hypothesis.min_exponent
            ),
            Mode::Axiomatic => format!(
                "n_K >= 4 verified on {} atoms (minimum {:?}){}",
                hypothesis.checked,
                hypothesis.min_exponent,
                if hypothesis.trusted_remainder { "; other proper subsets assumed" } else { "" }
            ),
        },
    ));

    let probes = probes_for(m);
    let grids = GridProjectors::build(m);
    let mut infos = Vec::new();
    let mut gaps = Vec::new();
    for p in &probes {
        let usability = probe_usability(m, p)?;
        infos.push(ProbeInfo { id: p.id, label: p.label(), usability });
        let mut step = Step::on_probe(p.id, Rule::Usability, format!("probe {}: {usability:?}", p.label()));
        step.integral = Some(usability.usable());
        steps.push(step);
        if !usability.usable() {
            continue;
        }
        let table_ok = check_table(m, &grids, p)?;
        let twist_ok = check_twist(m, p)?;
        steps.push(Step::on_probe(
            p.id,
            Rule::Table,
            format!(
                "convolution table on {} grid classes: {}; twisting identity: {}",
                3 * g * g,
                if table_ok { "verified" } else { "MISMATCH" },
                if twist_ok { "verified" } else { "MISMATCH" }
            ),
        ));
        if !table_ok || !twist_ok {
            gaps.push(format!("closed forms fail on probe {}", p.label()));
        }
    }

    // Norm step: per-cell coefficients are integers exactly when u = v.
    let mut norm_ok = true;
    let mut rows = Vec::new();
    for code in 0..8u8 {
        let (u, v) = (code & 1, code >> 1 & 1);
        let integer = lambda_coeff2(code) % 2 == 0 && xi_coeff2(code) % 2 == 0;
        norm_ok &= integer == (u == v);
        rows.push(format!("{code:03b}:{}/2", lambda_coeff2(code)));
    }
    steps.push(Step::note(
        Rule::Norm,
        format!(
            "cell coefficients (wvu: 2c) [{}]; integral rational diagonals have integer entries, so U = V on every probed cell: {}",
            rows.join(" "),
            if norm_ok { "verified" } else { "FAILED" }
        ),
    ));

    // Subsets lemma: eigenvalues of 3e_S + 2e_T + e_R under x ↦ 3x − x².
    let squares: Vec<i64> = (0..4).map(|c| 3 * c - c * c).collect();
    let lemma_ok = squares == [0, 2, 2, 0];
    let mut lemma_note = format!(
        "3c - c^2 on c = 0..3 gives {squares:?}, so 2e_(T u R) is integral; n_K | 2 or n_K | 3 contradicts n_K >= 4"
    );
    if m.mode() == Mode::Lattice && g <= SCAN_LIMIT {
        let violations = liverpool_scan(m)?;
        lemma_note.push_str(&format!("; brute-force scan of all (A,B): {} violations", violations.len()));
        if !violations.is_empty() {
            gaps.push("subsets lemma fails on this lattice".into());
        }
    }
    if !lemma_ok {
        gaps.push("eigenvalue table of the subsets lemma".into());
    }
    steps.push(Step::note(Rule::Liverpool, lemma_note));

    // Case 1: the diagonal of W splits.
    let mut case1_ok = true;
    for (u, w) in [(0i64, 0i64), (0, 1), (1, 0), (1, 1)] {
        let lam = 2 * w - u;
        let xi = 2 * (1 - w) - (1 - u);
        case1_ok &= lam + xi == 1 && (2 * w + (1 - u)) + (2 * (1 - w) + u) == 3;
    }
    steps.push(Step::on_probe(
        0,
        Rule::Case1,
        if g < 2 {
            "g = 1: the diagonal of W cannot split".to_string()
        } else {
            format!(
                "identity probe: conv(Lambda) + id = 2e_(W_Lambda) + e_(U_Xi), both brackets of 3 id integral; \
                 subsets lemma forces I_(W_Lambda) in {{empty, I}}: {}",
                if case1_ok { "verified" } else { "FAILED" }
            )
        },
    ));
    if !case1_ok {
        gaps.push("rearrangement identity".into());
    }

    // Case 2: W contains the whole diagonal on one side, an off-diagonal cell on the other.
    if g >= 2 {
        for p in probes.iter().skip(1) {
            let moved: Vec<usize> = (0..g).filter(|&i| p.sigma[i] != i).collect();
            let usable = infos[p.id].usability.usable();
            for (i0, j0) in [(moved[0], moved[1]), (moved[1], moved[0])] {
                let fixed = Subset::from_indices((0..g).filter(|&k| p.sigma[k] == k));
                // I_{σ,W_Λ} contains every fixed point because W_Λ holds the diagonal;
                // it misses j0 because (σ(j0), j0) = (i0, j0) lies in W_Ξ.
                let twisted = twisted_idempotent(m, &p.sigma, &CellSet::diagonal(g))?;
                let covers_fixed = twisted == m.idempotent(fixed);
                let ok = usable && !fixed.is_empty() && covers_fixed;
                let note = if !usable {
                    format!("cell ({},{}): probe {} is not usable", i0 + 1, j0 + 1, p.label())
                } else if fixed.is_empty() {
                    format!(
                        "cell ({},{}): {} has no fixed point, so e_(sigma,W_Lambda) may vanish and the subsets lemma does not apply",
                        i0 + 1,
                        j0 + 1,
                        p.label()
                    )
                } else {
                    format!(
                        "cell ({},{}): probe {}: e_(sigma,W_Lambda) >= e_{} != 0 and e_(sigma,W_Xi) >= e_{} != 0; subsets lemma contradiction",
                        i0 + 1,
                        j0 + 1,
                        p.label(),
                        fixed,
                        j0 + 1
                    )
                };
                let mut step = Step::on_probe(p.id, Rule::Case2, note);
                step.integral = Some(ok);
                steps.push(step);
                if !ok {
                    gaps.push(format!("case 2 at cell ({},{})", i0 + 1, j0 + 1));
                }
            }
        }
        steps.push(Step::note(Rule::Case2, "the case with W_Lambda off the diagonal follows by exchanging Lambda and Xi"));
    }

    let status = if gaps.is_empty() { Status::Indecomposable } else { Status::Undecided };
    if !gaps.is_empty() {
        steps.push(Step::note(Rule::Reduction, format!("proof does not close: {}", gaps.join("; "))));
    }
    Ok(Verdict { status, mode: DecideMode::Prooftrace, g, hypothesis, probes: infos, steps, witness: None, stats: None })
}
