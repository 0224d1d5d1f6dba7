use serde::Serialize;

use crate::error::Result;

use super::accounting::ck_surface;

/// Middle Betti number of a smooth cubic fourfold.
pub const CUBIC_B4: u64 = 23;
/// Rank of algebraic middle classes of a very general cubic fourfold.
pub const CUBIC_RHO2: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum HostVerdict {
    CannotHost,
    ForcesEquality,
    CouldHost,
}

impl HostVerdict {
    pub fn message(self) -> &'static str {
        match self {
            HostVerdict::CannotHost => "cannot host",
            HostVerdict::ForcesEquality => "hosting forces equality, violating nontriviality of both summands",
            HostVerdict::CouldHost => "could host",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceEntry {
    pub b2: u64,
    pub rho: u64,
    pub q: u64,
    pub dim_tr: u64,
    pub verdict: HostVerdict,
    pub message: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubicLedger {
    pub b4: u64,
    pub rho2: u64,
    pub dim_prim: u64,
    pub surfaces: Vec<SurfaceEntry>,
    /// Curves contribute only odd weights after twisting and cannot host.
    pub curve_weight3_dims: Vec<u64>,
    pub points: u64,
    pub hosts: Vec<usize>,
    pub summary: String,
}

/// Checks which surfaces of a resolution of `ℙ⁴ ⇢ X` could carry the
/// transcendental middle motive of a very general cubic fourfold `X`.
///
/// A host needs `dim M²_tr(S) ≥ dim M⁴_tr(X)`; the splitting it must satisfy
/// has two nonzero summands, so equality is also ruled out.
pub fn cubic_rationality_ledger(surfaces: &[(u64, u64, u64)], curves: &[u64], points: u64) -> Result<CubicLedger> {
    let dim_prim = CUBIC_B4 - CUBIC_RHO2;
    let mut entries = Vec::new();
    for &(b2, rho, q) in surfaces {
        let dim_tr = ck_surface(b2, rho, q)?.transcendental_dim();
        let verdict = match dim_tr.cmp(&dim_prim) {
            std::cmp::Ordering::Less => HostVerdict::CannotHost,
            std::cmp::Ordering::Equal => HostVerdict::ForcesEquality,
            std::cmp::Ordering::Greater => HostVerdict::CouldHost,
        };
        entries.push(SurfaceEntry { b2, rho, q, dim_tr, verdict, message: verdict.message() });
    }
    let hosts: Vec<usize> =
        entries.iter().enumerate().filter(|(_, e)| e.verdict == HostVerdict::CouldHost).map(|(k, _)| k).collect();
    let summary = if hosts.is_empty() {
        "no host available".to_string()
    } else {
        format!("{} surface(s) could host the transcendental part", hosts.len())
    };
    Ok(CubicLedger {
        b4: CUBIC_B4,
        rho2: CUBIC_RHO2,
        dim_prim,
        surfaces: entries,
        curve_weight3_dims: curves.iter().map(|g| 2 * g).collect(),
        points,
        hosts,
        summary,
    })
}
