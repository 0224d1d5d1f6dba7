use std::sync::Arc;

use num_traits::One;

use crate::cmlat::{AbelianModel, CellSet, EndoQ};
use crate::decomp::Candidate;
use crate::error::{Error, Result};
use crate::exact::{QuadInt, Rat};

use super::{AtomKind, Corr2, CorrContext};

/// The three `g×g` grids of classes whose sum is the middle of `Δ_{C×C}`.
///
/// `theta[i][j]` is the lift `eᵢ⊗eⱼ − 𝔄¹ᵢⱼ − 𝔄²ᵢⱼ`; modulo balanced
/// classes it is `eᵢ⊗eⱼ`.
#[derive(Clone, Debug)]
pub struct GridProjectors {
    ctx: Arc<CorrContext>,
    theta: Vec<Vec<Corr2>>,
    a1: Vec<Vec<Corr2>>,
    a2: Vec<Vec<Corr2>>,
}

impl GridProjectors {
    pub fn build(m: &AbelianModel) -> Self {
        let ctx = CorrContext::from_model(m);
        let g = ctx.g;
        let grid = |f: &dyn Fn(usize, usize) -> Corr2| -> Vec<Vec<Corr2>> {
            (0..g).map(|i| (0..g).map(|j| f(i, j)).collect()).collect()
        };
        let a1 = grid(&|i, j| Corr2::atom(&ctx, AtomKind::A1, i, j));
        let a2 = grid(&|i, j| Corr2::atom(&ctx, AtomKind::A2, i, j));
        let theta = grid(&|i, j| {
            let ei = m.idempotent(crate::cmlat::Subset::singleton(i));
            let ej = m.idempotent(crate::cmlat::Subset::singleton(j));
            Corr2::tensor(&ctx, &ei, &ej, &Rat::one())
                .and_then(|t| t.sub(&a1[i][j]))
                .and_then(|t| t.sub(&a2[i][j]))
                .expect("grid shapes match")
        });
        let out = GridProjectors { ctx, theta, a1, a2 };
        let sum = out.theta_sum(&CellSet::full(g));
        assert!(
            sum.eq_mod_balanced(&Corr2::identity(&out.ctx)),
            "theta grid must sum to the unit modulo balanced classes"
        );
        out
    }

    pub fn context(&self) -> &Arc<CorrContext> {
        &self.ctx
    }

    pub fn g(&self) -> usize {
        self.ctx.g
    }

    pub fn theta(&self, i: usize, j: usize) -> &Corr2 {
        &self.theta[i][j]
    }

    pub fn a1(&self, i: usize, j: usize) -> &Corr2 {
        &self.a1[i][j]
    }

    pub fn a2(&self, i: usize, j: usize) -> &Corr2 {
        &self.a2[i][j]
    }

    fn sum(&self, grid: &[Vec<Corr2>], cells: &CellSet) -> Corr2 {
        cells
            .iter()
            .fold(Corr2::zero(&self.ctx), |acc, (i, j)| acc.add(&grid[i][j]).expect("same context"))
    }

    /// `Θ_U = Σ_{(i,j) ∈ U} Θᵢⱼ`.
    pub fn theta_sum(&self, cells: &CellSet) -> Corr2 {
        self.sum(&self.theta, cells)
    }

    pub fn a1_sum(&self, cells: &CellSet) -> Corr2 {
        self.sum(&self.a1, cells)
    }

    pub fn a2_sum(&self, cells: &CellSet) -> Corr2 {
        self.sum(&self.a2, cells)
    }

    /// `𝔄¹_U + 𝔄²_V + Θ_W`.
    pub fn side_class(&self, u: &CellSet, v: &CellSet, w: &CellSet) -> Corr2 {
        self.a1_sum(u)
            .add(&self.a2_sum(v))
            .and_then(|x| x.add(&self.theta_sum(w)))
            .expect("same context")
    }

    /// The summand `B^{s,t}` for `(s,t) ≠ (1,1)` in `{0,1,2}²`: one of its
    /// factors is balanced, so its class is zero.
    pub fn b_class(&self, s: u8, t: u8) -> Result<Corr2> {
        if s > 2 || t > 2 || (s, t) == (1, 1) {
            return Err(Error::InvalidInput(format!("no B-type summand at ({s},{t})")));
        }
        Ok(Corr2::zero(&self.ctx))
    }
}

/// `conv_Δ` of the Λ-side of a candidate: `−½e_{I_U} − ½e_{I_V} + 2e_{I_W}`.
pub fn conv_delta_of_candidate(c: &Candidate, m: &AbelianModel) -> Result<EndoQ> {
    c.validate(m.g())?;
    let d = m.d();
    let term = |cells: &CellSet, coeff: Rat| m.idempotent(cells.diagonal_part()).scale(&QuadInt::from_rat(coeff, d));
    let half = Rat::new((-1).into(), 2.into());
    let out = &(&term(&c.u, half.clone()) + &term(&c.v, half)) + &term(&c.w, Rat::from_integer(2.into()));
    Ok(out)
}
