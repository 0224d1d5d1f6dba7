use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::cmlat::{AbelianModel, EndoQ};
use crate::error::{Error, Result};
use crate::exact::{QuadInt, Rat};

/// Ambient data shared by all classes on the same `C×C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrContext {
    pub d: u64,
    pub g: usize,
    /// Atom exponents `n_i`, the polarization weights for transposition.
    pub weights: Vec<u64>,
}

impl CorrContext {
    pub fn from_model(m: &AbelianModel) -> Arc<Self> {
        Arc::new(CorrContext { d: m.d(), g: m.g(), weights: m.atom_exponents().to_vec() })
    }
}

/// Which of the two algebraic grids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomKind {
    A1,
    A2,
}

/// `E_{ij}·s^k` with `s = √−d`, `k ∈ {0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Unit {
    i: usize,
    j: usize,
    s: bool,
}

impl Unit {
    /// Product of units with its scalar factor, or `None` when it vanishes.
    fn mul(self, o: Unit, d: u64) -> Option<(Unit, Rat)> {
        if self.j != o.i {
            return None;
        }
        let both = self.s && o.s;
        let c = if both { -Rat::from_integer(d.into()) } else { Rat::one() };
        Some((Unit { i: self.i, j: o.j, s: self.s ^ o.s }, c))
    }

    /// Rosati image: `(−1)^k·(n_i/n_j)·E_{ji}·s^k`.
    fn rosati(self, w: &[u64]) -> (Unit, Rat) {
        let mut c = Rat::new(w[self.i].into(), w[self.j].into());
        if self.s {
            c = -c;
        }
        (Unit { i: self.j, j: self.i, s: self.s }, c)
    }

    fn to_endo(self, ctx: &CorrContext) -> EndoQ {
        let mut m = EndoQ::zeros(&QuadInt::zero(ctx.d), ctx.g, ctx.g);
        m[(self.i, self.j)] = if self.s { QuadInt::sqrt_neg_d(ctx.d) } else { QuadInt::one(ctx.d) };
        m
    }
}

fn expand(x: &EndoQ) -> Vec<(Unit, Rat)> {
    let mut out = Vec::new();
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            let e = &x[(i, j)];
            if !e.a.is_zero() {
                out.push((Unit { i, j, s: false }, e.a.clone()));
            }
            if !e.b.is_zero() {
                out.push((Unit { i, j, s: true }, e.b.clone()));
            }
        }
    }
    out
}

fn bump<K: Ord>(map: &mut BTreeMap<K, Rat>, k: K, c: Rat) {
    if !c.is_zero() {
        *map.entry(k).or_insert_with(Rat::zero) += c;
    }
}

fn prune<K: Ord + Clone>(map: &mut BTreeMap<K, Rat>) {
    map.retain(|_, c| !c.is_zero());
}

/// A correspondence class: `Σ c·(a ⊗ b) + Σ c·𝔄^l_{ij}`.
#[derive(Clone, Debug)]
pub struct Corr2 {
    ctx: Arc<CorrContext>,
    tensor: BTreeMap<(Unit, Unit), Rat>,
    atoms: BTreeMap<(AtomKind, usize, usize), Rat>,
}

impl PartialEq for Corr2 {
    fn eq(&self, o: &Self) -> bool {
        self.ctx == o.ctx && self.tensor == o.tensor && self.atoms == o.atoms
    }
}

impl Corr2 {
    pub fn zero(ctx: &Arc<CorrContext>) -> Self {
        Corr2 { ctx: ctx.clone(), tensor: BTreeMap::new(), atoms: BTreeMap::new() }
    }

    /// `c·(left ⊗ right)`.
    pub fn tensor(ctx: &Arc<CorrContext>, left: &EndoQ, right: &EndoQ, c: &Rat) -> Result<Self> {
        for m in [left, right] {
            if m.rows() != ctx.g || m.cols() != ctx.g {
                return Err(Error::Shape(format!("{}x{} factor for g = {}", m.rows(), m.cols(), ctx.g)));
            }
        }
        let mut out = Self::zero(ctx);
        for (l, a) in expand(left) {
            for (r, b) in expand(right) {
                bump(&mut out.tensor, (l, r), c * &a * &b);
            }
        }
        prune(&mut out.tensor);
        Ok(out)
    }

    /// `id ⊗ id`, the diagonal of `C×C` and the unit for composition.
    pub fn identity(ctx: &Arc<CorrContext>) -> Self {
        let id = EndoQ::identity(&QuadInt::zero(ctx.d), ctx.g);
        Self::tensor(ctx, &id, &id, &Rat::one()).expect("shapes match")
    }

    /// The algebraic grid class `𝔄^l_{ij}`.
    pub fn atom(ctx: &Arc<CorrContext>, kind: AtomKind, i: usize, j: usize) -> Self {
        assert!(i < ctx.g && j < ctx.g, "grid cell ({i},{j}) outside g = {}", ctx.g);
        let mut out = Self::zero(ctx);
        out.atoms.insert((kind, i, j), Rat::one());
        out
    }

    pub fn context(&self) -> &Arc<CorrContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.tensor.is_empty() && self.atoms.is_empty()
    }

    /// The image in `c₀`: the grid classes are balanced and drop out.
    pub fn mod_balanced(&self) -> Self {
        Corr2 { ctx: self.ctx.clone(), tensor: self.tensor.clone(), atoms: BTreeMap::new() }
    }

    pub fn eq_mod_balanced(&self, o: &Self) -> bool {
        self.ctx == o.ctx && self.tensor == o.tensor
    }

    /// Tensor terms as `(left, right, coeff)` with elementary factors.
    pub fn terms(&self) -> Vec<(EndoQ, EndoQ, Rat)> {
        self.tensor
            .iter()
            .map(|((l, r), c)| (l.to_endo(&self.ctx), r.to_endo(&self.ctx), c.clone()))
            .collect()
    }

    /// Grid-class coefficients `(kind, i, j, coeff)`.
    pub fn atom_terms(&self) -> Vec<(AtomKind, usize, usize, Rat)> {
        self.atoms.iter().map(|(&(k, i, j), c)| (k, i, j, c.clone())).collect()
    }

    fn same_ctx(&self, o: &Self) -> Result<()> {
        if self.ctx != o.ctx {
            return Err(Error::Shape(format!("classes over g = {} and g = {}", self.ctx.g, o.ctx.g)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_ctx(o)?;
        let mut out = self.clone();
        for (k, c) in &o.tensor {
            bump(&mut out.tensor, *k, c.clone());
        }
        for (k, c) in &o.atoms {
            bump(&mut out.atoms, *k, c.clone());
        }
        prune(&mut out.tensor);
        prune(&mut out.atoms);
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = self.clone();
        out.tensor.values_mut().for_each(|v| *v *= c);
        out.atoms.values_mut().for_each(|v| *v *= c);
        prune(&mut out.tensor);
        prune(&mut out.atoms);
        out
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&-Rat::one()))
    }

    /// `(a⊗b)∘(c⊗d) = (a∘c)⊗(b∘d)`, computed modulo balanced classes.
    pub fn compose(&self, o: &Self) -> Result<Self> {
        self.same_ctx(o)?;
        let d = self.ctx.d;
        let mut out = Self::zero(&self.ctx);
        for ((l1, r1), c1) in &self.tensor {
            for ((l2, r2), c2) in &o.tensor {
                let Some((l, a)) = l1.mul(*l2, d) else { continue };
                let Some((r, b)) = r1.mul(*r2, d) else { continue };
                bump(&mut out.tensor, (l, r), c1 * c2 * a * b);
            }
        }
        prune(&mut out.tensor);
        Ok(out)
    }

    /// `(a⊗b)^⊤ = rosati(a) ⊗ rosati(b)`; grid classes are symmetric.
    pub fn transpose(&self) -> Self {
        let w = &self.ctx.weights;
        let mut out = Self::zero(&self.ctx);
        for ((l, r), c) in &self.tensor {
            let (lt, a) = l.rosati(w);
            let (rt, b) = r.rosati(w);
            bump(&mut out.tensor, (lt, rt), c * a * b);
        }
        out.atoms = self.atoms.clone();
        prune(&mut out.tensor);
        out
    }

    /// The bullet product; modulo balanced classes it is composition.
    pub fn bullet(&self, o: &Self) -> Result<Self> {
        self.compose(o)
    }
}

/// `conv_Σ`: `a⊗b ↦ b∘rosati(Σ)∘a` and `𝔄^l_{ij} ↦ −½·(rosati(Σ))_{ji}·E_{ji}`.
pub fn conv(sigma: &EndoQ, x: &Corr2, m: &AbelianModel) -> Result<EndoQ> {
    let ctx = &x.ctx;
    if sigma.rows() != ctx.g || sigma.cols() != ctx.g {
        return Err(Error::Shape(format!("{}x{} convolution kernel for g = {}", sigma.rows(), sigma.cols(), ctx.g)));
    }
    if m.g() != ctx.g || m.d() != ctx.d {
        return Err(Error::Shape("model does not match the class".into()));
    }
    Ok(conv_rosati(&crate::cmlat::rosati(sigma, m), x))
}

/// Convolution against a kernel whose Rosati image `r` is already known.
pub fn conv_rosati(r: &EndoQ, x: &Corr2) -> EndoQ {
    let ctx = &x.ctx;
    let d = ctx.d;
    let mut out = EndoQ::zeros(&QuadInt::zero(d), ctx.g, ctx.g);
    let s = QuadInt::sqrt_neg_d(d);
    for ((a, b), c) in &x.tensor {
        // b·R·a = s^{e+f}·R_{b.j, a.i}·E_{b.i, a.j}
        let entry = &r[(b.j, a.i)];
        if crate::exact::Field::is_nil(entry) {
            continue;
        }
        let mut v = entry.scale(c);
        if a.s {
            v = &v * &s;
        }
        if b.s {
            v = &v * &s;
        }
        let cur = out[(b.i, a.j)].clone();
        out[(b.i, a.j)] = &cur + &v;
    }
    let half = Rat::new((-1).into(), 2.into());
    for (&(_, i, j), c) in &x.atoms {
        let entry = &r[(j, i)];
        let cur = out[(j, i)].clone();
        out[(j, i)] = &cur + &entry.scale(&(c * &half));
    }
    out
}
