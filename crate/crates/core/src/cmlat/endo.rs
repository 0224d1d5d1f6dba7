use crate::error::Result;
use crate::exact::{Matrix, QuadInt, Rat};

use super::{validate_perm, AbelianModel, CellSet, Subset};

/// An element of `End(J) ⊗ ℚ` in the coordinates of `J ~ E^g`.
pub type EndoQ = Matrix<QuadInt>;

/// `c·E_{ij}` in `g×g` matrices over `ℚ(√−d)`.
pub fn elementary(d: u64, g: usize, i: usize, j: usize, c: Rat) -> EndoQ {
    let mut m = EndoQ::zeros(&QuadInt::zero(d), g, g);
    m[(i, j)] = QuadInt::from_rat(c, d);
    m
}

/// A permutation of `I` restricted to a region of the grid `I × I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermEndoSpec {
    /// One-line notation, 0-based: `sigma[i] = σ(i)`.
    pub sigma: Vec<usize>,
    pub region: CellSet,
}

impl PermEndoSpec {
    pub fn full(sigma: Vec<usize>) -> Self {
        let g = sigma.len();
        PermEndoSpec { sigma, region: CellSet::full(g) }
    }
}

/// `σ_U = Σ_{i : (i,σ(i)) ∈ U} (n_{σ(i)}/n_i)·E_{i,σ(i)}`; with `U = I²` this is `σ_J`.
pub fn perm_endo(m: &AbelianModel, spec: &PermEndoSpec) -> Result<EndoQ> {
    let g = m.g();
    validate_perm(&spec.sigma, g)?;
    if spec.region.g() != g {
        return Err(crate::Error::Shape(format!("region on a {}-grid for g = {g}", spec.region.g())));
    }
    let n = m.atom_exponents();
    let mut out = EndoQ::zeros(&m.zero(), g, g);
    for (i, &s) in spec.sigma.iter().enumerate() {
        if spec.region.contains(i, s) {
            out[(i, s)] = QuadInt::from_rat(Rat::new(n[s].into(), n[i].into()), m.d());
        }
    }
    Ok(out)
}

/// `x ↦ D⁻¹·conj(x)^⊤·D` with `D = diag(n₁, …, n_g)`.
pub fn rosati(x: &EndoQ, m: &AbelianModel) -> EndoQ {
    let g = x.rows();
    let n = m.atom_exponents();
    let mut out = EndoQ::zeros(&m.zero(), g, g);
    for a in 0..g {
        for b in 0..g {
            let e = &x[(b, a)];
            if !crate::exact::Field::is_nil(e) {
                out[(a, b)] = e.conj().scale(&Rat::new(n[b].into(), n[a].into()));
            }
        }
    }
    out
}

/// `e_{σ,U} = e_{K'}` with `K' = {i : (σ(i), i) ∈ U}`.
pub fn twisted_idempotent(m: &AbelianModel, sigma: &[usize], region: &CellSet) -> Result<EndoQ> {
    validate_perm(sigma, m.g())?;
    let k = Subset::from_indices((0..m.g()).filter(|&i| region.contains(sigma[i], i)));
    Ok(m.idempotent(k))
}
