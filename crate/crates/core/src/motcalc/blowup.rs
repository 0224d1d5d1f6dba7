use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::accounting::{ck_curve, ck_surface};
use super::expr::MotiveExpr;

/// A smooth blow-up centre.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Center {
    Point,
    Curve { g: u64 },
    Surface { b2: u64, rho: u64, q: u64 },
}

impl Center {
    fn dim(self) -> u32 {
        match self {
            Center::Point => 0,
            Center::Curve { .. } => 1,
            Center::Surface { .. } => 2,
        }
    }

    fn motive(self) -> Result<MotiveExpr> {
        match self {
            Center::Point => Ok(MotiveExpr::Unit),
            Center::Curve { g } => Ok(ck_curve(g)),
            Center::Surface { b2, rho, q } => ck_surface(b2, rho, q),
        }
    }
}

/// `M(ℙⁿ) = 𝟙 ⊕ 𝕃 ⊕ … ⊕ 𝕃ⁿ`.
pub fn projective_space(n: u32) -> MotiveExpr {
    MotiveExpr::sum((0..=n).map(MotiveExpr::lefschetz).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupReport {
    pub ambient_dim: u32,
    pub expr: MotiveExpr,
    pub dims: Vec<u64>,
    pub start_dims: Vec<u64>,
    /// Added summands grouped by centre dimension, with their dimension rows.
    pub added: Vec<AddedPart>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AddedPart {
    pub center_dim: u32,
    pub count: usize,
    pub expr: MotiveExpr,
    pub dims: Vec<u64>,
}

fn pad(mut v: Vec<u64>, len: usize) -> Vec<u64> {
    v.resize(len.max(v.len()), 0);
    v
}

/// Blowing up a centre of codimension `c` adds `M(Z)⊗(𝕃 ⊕ … ⊕ 𝕃^{c−1})`.
pub fn blowup_chain(start: &MotiveExpr, ambient_dim: u32, centers: &[Center]) -> Result<BlowupReport> {
    let width = 2 * ambient_dim as usize + 1;
    let mut groups: Vec<AddedPart> = Vec::new();
    for &c in centers {
        if c.dim() + 2 > ambient_dim {
            return Err(Error::InvalidInput(format!(
                "a centre of dimension {} has codimension below 2 in dimension {ambient_dim}",
                c.dim()
            )));
        }
        let codim = ambient_dim - c.dim();
        let twist = MotiveExpr::sum((1..codim).map(MotiveExpr::lefschetz).collect());
        let part = MotiveExpr::tensor(c.motive()?, twist);
        match groups.iter_mut().find(|g| g.center_dim == c.dim()) {
            Some(g) => {
                g.count += 1;
                if let MotiveExpr::DirectSum { parts } = &mut g.expr {
                    parts.push(part);
                }
            }
            None => groups.push(AddedPart {
                center_dim: c.dim(),
                count: 1,
                expr: MotiveExpr::sum(vec![part]),
                dims: Vec::new(),
            }),
        }
    }
    groups.sort_by_key(|g| g.center_dim);
    for g in &mut groups {
        g.dims = pad(g.expr.dims(), width);
    }
    let mut parts = vec![start.clone()];
    parts.extend(groups.iter().map(|g| g.expr.clone()));
    let expr = MotiveExpr::sum(parts);
    Ok(BlowupReport {
        ambient_dim,
        dims: pad(expr.dims(), width),
        start_dims: pad(start.dims(), width),
        expr,
        added: groups,
    })
}
