use serde::Serialize;

use crate::cmlat::{perm_endo, rosati, transposition, AbelianModel, EndoQ, Mode, PermEndoSpec};
use crate::corr::{conv, GridProjectors};
use crate::error::{Error, Result};
use crate::exact::{QuadInt, Rat};

use super::Candidate;

/// A permutation endomorphism used to read integrality constraints off a candidate.
#[derive(Clone, Debug)]
pub struct Probe {
    pub id: usize,
    /// One-line notation, 0-based.
    pub sigma: Vec<usize>,
    /// `σ_J`.
    pub endo: EndoQ,
}

impl Probe {
    pub fn is_identity(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &s)| i == s)
    }

    /// `id` or `(a b)` with 1-based indices.
    pub fn label(&self) -> String {
        let moved: Vec<usize> = (0..self.sigma.len()).filter(|&i| self.sigma[i] != i).collect();
        if moved.is_empty() {
            "id".into()
        } else {
            let parts: Vec<String> = moved.iter().map(|i| (i + 1).to_string()).collect();
            format!("({})", parts.join(" "))
        }
    }
}

/// The identity followed by every transposition `(a b)`, `a < b`, in lexicographic order.
pub fn probes_for(m: &AbelianModel) -> Vec<Probe> {
    let g = m.g();
    let mut sigmas = vec![(0..g).collect::<Vec<_>>()];
    for a in 0..g {
        for b in a + 1..g {
            sigmas.push(transposition(g, a, b));
        }
    }
    sigmas
        .into_iter()
        .enumerate()
        .map(|(id, sigma)| {
            let endo = perm_endo(m, &PermEndoSpec::full(sigma.clone())).expect("valid permutation");
            Probe { id, sigma, endo }
        })
        .collect()
}

/// Whether a probe may be used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Usability {
    /// `σ_J` and its Rosati transpose were checked integral on the lattice.
    Verified,
    /// Axiomatic mode: the coordinate permutation is assumed to be an automorphism.
    Asserted,
    /// `σ_J` or its transpose does not preserve the lattice.
    NotIntegral,
}

impl Usability {
    pub fn usable(self) -> bool {
        self != Usability::NotIntegral
    }
}

pub fn probe_usability(m: &AbelianModel, p: &Probe) -> Result<Usability> {
    if p.is_identity() {
        return Ok(if m.mode() == Mode::Lattice { Usability::Verified } else { Usability::Asserted });
    }
    match m.mode() {
        Mode::Axiomatic => Ok(Usability::Asserted),
        Mode::Lattice => {
            let ok = m.is_integral(&p.endo)? && m.is_integral(&rosati(&p.endo, m))?;
            Ok(if ok { Usability::Verified } else { Usability::NotIntegral })
        }
    }
}

/// Twice the Λ-side coefficient of a cell with code `u | v<<1 | w<<2`: `−u − v + 4w`.
pub fn lambda_coeff2(code: u8) -> i8 {
    -((code & 1) as i8) - ((code >> 1 & 1) as i8) + 4 * ((code >> 2 & 1) as i8)
}

/// Twice the Ξ-side coefficient; `lambda_coeff2 + xi_coeff2 = 2`.
pub fn xi_coeff2(code: u8) -> i8 {
    2 - lambda_coeff2(code)
}

/// `Σ_i (c2_i / 2)·E_{σ(i), i}`.
pub fn twisted_diagonal(m: &AbelianModel, sigma: &[usize], c2: &[i8]) -> EndoQ {
    let g = m.g();
    let mut out = EndoQ::zeros(&m.zero(), g, g);
    for i in 0..g {
        out[(sigma[i], i)] = QuadInt::from_rat(Rat::new(c2[i].into(), 2.into()), m.d());
    }
    out
}

/// Λ-side coefficient vector (doubled) read from the cells `(i, σ(i))`.
pub fn probe_coeffs(c: &Candidate, p: &Probe) -> Vec<i8> {
    (0..p.sigma.len()).map(|i| lambda_coeff2(c.cell_code(i, p.sigma[i]))).collect()
}

/// `(conv_Σ(Λ), conv_Σ(Ξ))` in closed form: `−½σ^⊤_U − ½σ^⊤_V + 2σ^⊤_W` on each side.
pub fn probe_images(c: &Candidate, p: &Probe, m: &AbelianModel) -> Result<(EndoQ, EndoQ)> {
    c.validate(m.g())?;
    let c2 = probe_coeffs(c, p);
    let xi: Vec<i8> = c2.iter().map(|x| 2 - x).collect();
    Ok((twisted_diagonal(m, &p.sigma, &c2), twisted_diagonal(m, &p.sigma, &xi)))
}

/// `(conv_Σ(Λ), conv_Σ(Ξ))` computed by convolving the grid classes of each side.
pub fn eval_probe(c: &Candidate, p: &Probe, m: &AbelianModel, grids: &GridProjectors) -> Result<(EndoQ, EndoQ)> {
    c.validate(m.g())?;
    if grids.g() != m.g() {
        return Err(Error::Shape("grids built for a different model".into()));
    }
    let lambda = grids.side_class(&c.u, &c.v, &c.w);
    let xi = grids.side_class(&c.u.complement(), &c.v.complement(), &c.w.complement());
    Ok((conv(&p.endo, &lambda, m)?, conv(&p.endo, &xi, m)?))
}

/// Which rule produced a verdict on a probe image.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Reduction,
    Hypothesis,
    Usability,
    Table,
    Norm,
    Liverpool,
    Case1,
    Case2,
    Search,
}

/// Outcome of testing one side's image for integrality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Judgement {
    pub integral: bool,
    pub rule: Rule,
}

/// Decides whether `Σ_i (c2_i/2)·E_{σ(i),i}` is integral.
///
/// Lattice mode asks the lattice. Axiomatic mode strips the permutation
/// (an asserted automorphism), applies the divisibility rules to the
/// diagonal, and falls back to the subsets lemma where those are silent.
pub fn judge_side(m: &AbelianModel, p: &Probe, c2: &[i8]) -> Result<Judgement> {
    let rule = if c2.iter().any(|x| x % 2 != 0) { Rule::Norm } else { Rule::Liverpool };
    let integral = match m.mode() {
        Mode::Lattice => m.is_integral(&twisted_diagonal(m, &p.sigma, c2))?,
        Mode::Axiomatic => {
            if rule == Rule::Norm {
                false
            } else {
                let identity: Vec<usize> = (0..m.g()).collect();
                match m.is_integral(&twisted_diagonal(m, &identity, c2)) {
                    Ok(b) => b,
                    // c + 1 = 2e_W + e_B with W, B not both trivial, so the
                    // subsets lemma rules it out under the exponent hypothesis.
                    Err(Error::UnsupportedQuery(_)) => false,
                    Err(e) => return Err(e),
                }
            }
        }
    };
    Ok(Judgement { integral, rule })
}
