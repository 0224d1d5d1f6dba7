use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{rat_to_string, Rat};

use super::expr::hypersurface_middle_betti;

/// A correspondence on `X×X` for a hypersurface `X` of dimension `n`:
/// `Σ c_{ab}·γ^a×γ^b` plus a multiple of the primitive middle projector `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CkElem {
    n: usize,
    d: u64,
    grid: Vec<Rat>,
    prim: Rat,
}

impl CkElem {
    pub fn zero(n: usize, d: u64) -> Self {
        CkElem { n, d, grid: vec![Rat::zero(); (n + 1) * (n + 1)], prim: Rat::zero() }
    }

    /// `c·γ^a×γ^b`.
    pub fn monomial(n: usize, d: u64, a: usize, b: usize, c: Rat) -> Self {
        let mut out = Self::zero(n, d);
        out.grid[a * (n + 1) + b] = c;
        out
    }

    pub fn coeff(&self, a: usize, b: usize) -> &Rat {
        &self.grid[a * (self.n + 1) + b]
    }

    pub fn prim(&self) -> &Rat {
        &self.prim
    }

    pub fn is_zero(&self) -> bool {
        self.prim.is_zero() && self.grid.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        CkElem {
            n: self.n,
            d: self.d,
            grid: self.grid.iter().zip(&o.grid).map(|(a, b)| a + b).collect(),
            prim: &self.prim + &o.prim,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        CkElem {
            n: self.n,
            d: self.d,
            grid: self.grid.iter().zip(&o.grid).map(|(a, b)| a - b).collect(),
            prim: &self.prim - &o.prim,
        }
    }

    /// `(A×B)∘(C×D) = ⟨B·C⟩·(A×D)` with `⟨γ^n⟩ = d`; `P` is idempotent and
    /// annihilates the classes of the `γ^a×γ^b`.
    pub fn compose(&self, o: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n, self.d);
        let d = Rat::from_integer(self.d.into());
        for a in 0..=n {
            for b in 0..=n {
                let x = self.coeff(a, b);
                if x.is_zero() {
                    continue;
                }
                let c = n - b;
                for e in 0..=n {
                    let y = o.coeff(c, e);
                    if !y.is_zero() {
                        out.grid[a * (n + 1) + e] += x * y * &d;
                    }
                }
            }
        }
        out.prim = &self.prim * &o.prim;
        out
    }
}

impl fmt::Display for CkElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for a in 0..=self.n {
            for b in 0..=self.n {
                let c = self.coeff(a, b);
                if !c.is_zero() {
                    let coef = if c.is_one() { String::new() } else { format!("{}*", rat_to_string(c)) };
                    parts.push(format!("{coef}g^{a}xg^{b}"));
                }
            }
        }
        if !self.prim.is_zero() {
            let coef = if self.prim.is_one() { String::new() } else { format!("{}*", rat_to_string(&self.prim)) };
            parts.push(format!("{coef}P"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Chow–Künneth projectors of a smooth hypersurface in the truncated model
/// `ℚ[γ]/(γ^{n+1})` with `⟨γ^n⟩ = d`.
#[derive(Clone, Debug)]
pub struct HypersurfaceCk {
    pub n: usize,
    pub d: u64,
    pub middle_betti: u64,
    /// `(weight 2j, π_{2j})` for `j ≠ n/2`.
    pub projectors: Vec<(usize, CkElem)>,
    /// `π_n = Δ − Σ π_{2j}`.
    pub middle: CkElem,
    pub diagonal: CkElem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CkVerification {
    pub idempotent: bool,
    pub orthogonal: bool,
    pub sums_to_diagonal: bool,
    pub middle_dim: u64,
}

impl CkVerification {
    pub fn all(&self) -> bool {
        self.idempotent && self.orthogonal && self.sums_to_diagonal
    }
}

pub fn hypersurface_ck(n: usize, d: u64) -> Result<HypersurfaceCk> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidInput("hypersurface needs n >= 1 and d >= 1".into()));
    }
    let middle_betti = hypersurface_middle_betti(n as u32, d);
    let inv_d = Rat::new(1.into(), d.into());
    let pi = |j: usize| CkElem::monomial(n, d, n - j, j, inv_d.clone());
    let mut diagonal = (0..=n).fold(CkElem::zero(n, d), |acc, j| acc.add(&pi(j)));
    let prim_dim = middle_betti - n.is_multiple_of(2) as u64;
    if prim_dim > 0 {
        diagonal.prim = Rat::one();
    }
    let projectors: Vec<(usize, CkElem)> = (0..=n).filter(|&j| 2 * j != n).map(|j| (2 * j, pi(j))).collect();
    let middle = projectors.iter().fold(diagonal.clone(), |acc, (_, p)| acc.sub(p));
    Ok(HypersurfaceCk { n, d, middle_betti, projectors, middle, diagonal })
}

impl HypersurfaceCk {
    /// All projectors including the middle one, by weight.
    pub fn all(&self) -> Vec<(usize, &CkElem)> {
        let mut out: Vec<(usize, &CkElem)> = self.projectors.iter().map(|(w, p)| (*w, p)).collect();
        out.push((self.n, &self.middle));
        out.sort_by_key(|(w, _)| *w);
        out
    }

    pub fn projector(&self, weight: usize) -> Option<&CkElem> {
        self.all().into_iter().find(|(w, _)| *w == weight).map(|(_, p)| p)
    }

    pub fn verify(&self) -> CkVerification {
        let all = self.all();
        let idempotent = all.iter().all(|(_, p)| p.compose(p) == **p);
        let orthogonal = all
            .iter()
            .enumerate()
            .all(|(i, (_, p))| all.iter().enumerate().all(|(j, (_, q))| i == j || p.compose(q).is_zero()));
        let sum = all.iter().fold(CkElem::zero(self.n, self.d), |acc, (_, p)| acc.add(p));
        CkVerification { idempotent, orthogonal, sums_to_diagonal: sum == self.diagonal, middle_dim: self.middle_betti }
    }
}
