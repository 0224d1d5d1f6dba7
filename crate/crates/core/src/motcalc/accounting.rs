use serde::Serialize;

use crate::error::Result;

use super::expr::{MotiveExpr, SurfaceTag};

/// `M(C) = 𝟙 ⊕ M¹(C) ⊕ 𝕃`.
pub fn ck_curve(g: u64) -> MotiveExpr {
    MotiveExpr::sum(vec![MotiveExpr::Unit, MotiveExpr::CurveH1 { g }, MotiveExpr::lefschetz(1)])
}

/// `M(S) = 𝟙 ⊕ M¹ ⊕ 𝕃^{⊕ρ} ⊕ M²_tr ⊕ M³ ⊕ 𝕃²`.
pub fn ck_surface(b2: u64, rho: u64, q: u64) -> Result<MotiveExpr> {
    Ok(MotiveExpr::sum(vec![
        MotiveExpr::Unit,
        MotiveExpr::surface_part(SurfaceTag::M1, b2, rho, q)?,
        MotiveExpr::LefschetzSum { k: 1, count: rho },
        MotiveExpr::surface_part(SurfaceTag::M2tr, b2, rho, q)?,
        MotiveExpr::surface_part(SurfaceTag::M3, b2, rho, q)?,
        MotiveExpr::lefschetz(2),
    ]))
}

/// Weight-two bookkeeping of a surface that is a product of curves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductReport {
    pub expr: MotiveExpr,
    pub dims: Vec<u64>,
    pub total: u64,
    pub b2: u64,
    pub ns_rank: u64,
    pub dim_m2_alg: u64,
    pub dim_m2_tr: u64,
    /// Number of `Tᵢⱼ` blocks when the Jacobian is elliptically split.
    pub grid_blocks: Option<u64>,
}

/// Accounting for `M(C×C)` with `C` of genus `g` whose Jacobian is isogenous
/// to `E^g` for a CM elliptic curve `E`.
///
/// Each `h¹(E)⊗h¹(E)` block contributes two algebraic and two transcendental
/// classes, so `M²_tr = 2g²` and `NS = 2 + 2g²`. With `split` the middle is
/// refined into the grid of `Tᵢⱼ`; otherwise `M¹⊗M¹` is kept whole.
pub fn product_of_curves(g: u64, split: bool) -> ProductReport {
    let curve = ck_curve(g);
    let h1 = MotiveExpr::CurveH1 { g };
    let middle = if split {
        MotiveExpr::sum(vec![
            MotiveExpr::LefschetzSum { k: 1, count: 2 * g * g },
            MotiveExpr::TranscendentalGrid { g },
        ])
    } else {
        MotiveExpr::tensor(h1.clone(), h1.clone())
    };
    let expr = MotiveExpr::sum(vec![
        MotiveExpr::Unit,
        MotiveExpr::tensor(h1.clone(), MotiveExpr::Unit),
        MotiveExpr::tensor(MotiveExpr::Unit, h1.clone()),
        MotiveExpr::LefschetzSum { k: 1, count: 2 },
        middle,
        MotiveExpr::tensor(h1.clone(), MotiveExpr::lefschetz(1)),
        MotiveExpr::tensor(MotiveExpr::lefschetz(1), h1),
        MotiveExpr::lefschetz(2),
    ]);
    let dims = expr.dims();
    debug_assert_eq!(dims, MotiveExpr::tensor(curve.clone(), curve).dims());
    let b2 = dims.get(2).copied().unwrap_or(0);
    let dim_m2_tr = 2 * g * g;
    ProductReport {
        total: dims.iter().sum(),
        dims,
        b2,
        ns_rank: b2 - dim_m2_tr,
        dim_m2_alg: b2 - dim_m2_tr,
        dim_m2_tr,
        grid_blocks: split.then_some(g * g),
        expr,
    }
}

/// Accounting for `E×C` with `E` the CM curve and `J(C) ~ E^g`: `M²_tr = 2g`.
pub fn elliptic_times_curve(g: u64) -> ProductReport {
    let e = ck_curve(1);
    let c = ck_curve(g);
    let expr = MotiveExpr::tensor(e, c);
    let dims = expr.dims();
    let b2 = dims.get(2).copied().unwrap_or(0);
    let dim_m2_tr = 2 * g;
    ProductReport {
        total: dims.iter().sum(),
        dims,
        b2,
        ns_rank: b2 - dim_m2_tr,
        dim_m2_alg: b2 - dim_m2_tr,
        dim_m2_tr,
        grid_blocks: None,
        expr,
    }
}
