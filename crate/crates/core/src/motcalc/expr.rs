use serde::Serialize;

use crate::error::{Error, Result};

/// Which summand of a surface motive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SurfaceTag {
    M1,
    M2alg,
    M2tr,
    M3,
}

/// A formal Chow–Künneth motive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "node", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MotiveExpr {
    Unit,
    LefschetzPow { k: u32 },
    /// `𝕃^k` repeated `count` times.
    LefschetzSum { k: u32, count: u64 },
    CurveH1 { g: u64 },
    SurfacePart { tag: SurfaceTag, b2: u64, rho: u64, q: u64 },
    /// The `g × g` grid of two-dimensional transcendental blocks of `M¹(C)⊗M¹(C)`.
    TranscendentalGrid { g: u64 },
    /// The middle summand of a degree-`d` hypersurface of dimension `n`, with
    /// `rho_mid` algebraic classes in the middle degree.
    HypersurfaceMiddle { n: u32, d: u64, rho_mid: u64 },
    DirectSum { parts: Vec<MotiveExpr> },
    Tensor { left: Box<MotiveExpr>, right: Box<MotiveExpr> },
}

/// Middle Betti number of a smooth degree-`d` hypersurface of dimension `n`.
pub fn hypersurface_middle_betti(n: u32, d: u64) -> u64 {
    let (n_i, d_i) = (n as i128, d as i128);
    let chi = ((1 - d_i).pow(n + 2) - 1) / d_i + n_i + 2;
    let even = n.is_multiple_of(2) as i128;
    let b = if n.is_multiple_of(2) { chi - (n_i + 1 - even) } else { (n_i + 1 - even) - chi };
    b as u64
}

fn add_into(acc: &mut Vec<u64>, w: usize, n: u64) {
    if acc.len() <= w {
        acc.resize(w + 1, 0);
    }
    acc[w] += n;
}

impl MotiveExpr {
    pub fn sum(parts: Vec<MotiveExpr>) -> Self {
        MotiveExpr::DirectSum { parts }
    }

    pub fn tensor(a: MotiveExpr, b: MotiveExpr) -> Self {
        MotiveExpr::Tensor { left: Box::new(a), right: Box::new(b) }
    }

    pub fn lefschetz(k: u32) -> Self {
        if k == 0 {
            MotiveExpr::Unit
        } else {
            MotiveExpr::LefschetzPow { k }
        }
    }

    pub fn surface_part(tag: SurfaceTag, b2: u64, rho: u64, q: u64) -> Result<Self> {
        if rho > b2 {
            return Err(Error::InvalidInput(format!("Picard rank {rho} exceeds b2 = {b2}")));
        }
        Ok(MotiveExpr::SurfacePart { tag, b2, rho, q })
    }

    /// Dimension per cohomological weight, index = weight.
    pub fn dims(&self) -> Vec<u64> {
        let mut out = Vec::new();
        match self {
            MotiveExpr::Unit => add_into(&mut out, 0, 1),
            MotiveExpr::LefschetzPow { k } => add_into(&mut out, 2 * *k as usize, 1),
            MotiveExpr::LefschetzSum { k, count } => add_into(&mut out, 2 * *k as usize, *count),
            MotiveExpr::CurveH1 { g } => add_into(&mut out, 1, 2 * g),
            MotiveExpr::SurfacePart { tag, b2, rho, q } => match tag {
                SurfaceTag::M1 => add_into(&mut out, 1, 2 * q),
                SurfaceTag::M2alg => add_into(&mut out, 2, *rho),
                SurfaceTag::M2tr => add_into(&mut out, 2, b2 - rho),
                SurfaceTag::M3 => add_into(&mut out, 3, 2 * q),
            },
            MotiveExpr::TranscendentalGrid { g } => add_into(&mut out, 2, 2 * g * g),
            MotiveExpr::HypersurfaceMiddle { n, d, .. } => {
                add_into(&mut out, *n as usize, hypersurface_middle_betti(*n, *d))
            }
            MotiveExpr::DirectSum { parts } => {
                for p in parts {
                    for (w, n) in p.dims().into_iter().enumerate() {
                        add_into(&mut out, w, n);
                    }
                }
            }
            MotiveExpr::Tensor { left, right } => {
                let (a, b) = (left.dims(), right.dims());
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in b.iter().enumerate() {
                        add_into(&mut out, i + j, x * y);
                    }
                }
            }
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    pub fn total_dim(&self) -> u64 {
        self.dims().iter().sum()
    }

    /// Dimension of the transcendental summands.
    pub fn transcendental_dim(&self) -> u64 {
        match self {
            MotiveExpr::SurfacePart { tag: SurfaceTag::M2tr, b2, rho, .. } => b2 - rho,
            MotiveExpr::TranscendentalGrid { g } => 2 * g * g,
            MotiveExpr::HypersurfaceMiddle { n, d, rho_mid } => {
                hypersurface_middle_betti(*n, *d).saturating_sub(*rho_mid)
            }
            MotiveExpr::DirectSum { parts } => parts.iter().map(MotiveExpr::transcendental_dim).sum(),
            MotiveExpr::Tensor { left, right } => {
                // twisting by Lefschetz motives keeps transcendence
                match (left.as_lefschetz(), right.as_lefschetz()) {
                    (Some(_), _) => right.transcendental_dim() * left.total_dim(),
                    (_, Some(_)) => left.transcendental_dim() * right.total_dim(),
                    _ => 0,
                }
            }
            _ => 0,
        }
    }

    /// `Some(k)` for `𝟙 = 𝕃⁰` and `𝕃^k`.
    fn as_lefschetz(&self) -> Option<u32> {
        match self {
            MotiveExpr::Unit => Some(0),
            MotiveExpr::LefschetzPow { k } => Some(*k),
            _ => None,
        }
    }

    /// Flattened direct sum of tensor monomials; `⊗` distributed over `⊕`,
    /// units dropped and Lefschetz powers merged.
    pub fn canonical(&self) -> MotiveExpr {
        let terms = self.monomials();
        if terms.len() == 1 {
            return terms.into_iter().next().unwrap();
        }
        MotiveExpr::sum(terms)
    }

    fn monomials(&self) -> Vec<MotiveExpr> {
        match self {
            MotiveExpr::DirectSum { parts } => parts.iter().flat_map(MotiveExpr::monomials).collect(),
            MotiveExpr::LefschetzSum { k, count } => (0..*count).map(|_| MotiveExpr::lefschetz(*k)).collect(),
            MotiveExpr::Tensor { left, right } => {
                let (a, b) = (left.monomials(), right.monomials());
                let mut out = Vec::with_capacity(a.len() * b.len());
                for x in &a {
                    for y in &b {
                        out.push(match (x.as_lefschetz(), y.as_lefschetz()) {
                            (Some(i), Some(j)) => MotiveExpr::lefschetz(i + j),
                            (Some(0), None) => y.clone(),
                            (None, Some(0)) => x.clone(),
                            _ => MotiveExpr::tensor(x.clone(), y.clone()),
                        });
                    }
                }
                out
            }
            other => vec![other.clone()],
        }
    }
}
