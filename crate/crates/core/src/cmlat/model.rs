use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{is_squarefree, Field, QuadInt, Rat, ZLattice};

use super::{EndoQ, Subset};

/// How integrality is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Ground truth from an explicit lattice.
    Lattice,
    /// Only the atom exponents are known; integrality is derived from them.
    Axiomatic,
}

/// Order of `ℚ(√−d)` acting on the lattice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    /// `ℤ[√−d]`.
    #[default]
    Standard,
    /// `ℤ[(1+√−d)/2]`, only for `d ≡ 3 mod 4`.
    Maximal,
}

/// Inputs to [`AbelianModel::build`].
#[derive(Clone, Debug)]
pub struct ModelSpec {
    pub d: u64,
    pub g: usize,
    pub glue: Vec<Vec<QuadInt>>,
    pub mode: Mode,
    pub exponents: Option<Vec<u64>>,
    pub order: Order,
}

/// How far the exponent hypothesis `n_K ≥ 4` could be verified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    /// Number of proper nonempty subsets whose exponent was checked.
    pub checked: usize,
    /// Smallest exponent seen among the checked subsets.
    pub min_exponent: Option<u64>,
    /// True when non-atomic subsets were not checkable and are assumed.
    pub trusted_remainder: bool,
}

/// `J ~ E^g` given by `Λ = 𝒪^g + Σ 𝒪·v` over glue vectors `v ∈ K^g`.
pub struct AbelianModel {
    d: u64,
    g: usize,
    order: Order,
    mode: Mode,
    glue: Vec<Vec<QuadInt>>,
    lattice: Option<ZLattice>,
    atoms: Vec<u64>,
    bound: u64,
    cache: RwLock<HashMap<u32, u64>>,
}

impl std::fmt::Debug for AbelianModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AbelianModel")
            .field("d", &self.d)
            .field("g", &self.g)
            .field("mode", &self.mode)
            .field("order", &self.order)
            .field("atoms", &self.atoms)
            .finish()
    }
}

impl AbelianModel {
    pub fn build(spec: ModelSpec) -> Result<Self> {
        let ModelSpec { d, g, glue, mode, exponents, order } = spec;
        if !is_squarefree(d) {
            return Err(Error::InvalidInput(format!("d = {d} is not a positive squarefree integer")));
        }
        if g == 0 || g > 32 {
            return Err(Error::InvalidInput(format!("g = {g} outside 1..=32")));
        }
        if order == Order::Maximal && d % 4 != 3 {
            return Err(Error::InvalidInput(format!("maximal order needs d = 3 mod 4, got {d}")));
        }
        for v in &glue {
            if v.len() != g {
                return Err(Error::Shape(format!("glue vector of length {} for g = {g}", v.len())));
            }
            if let Some(x) = v.iter().find(|x| x.d() != d) {
                return Err(Error::Lattice(format!("glue coordinate {x} is not in Q(sqrt(-{d}))")));
            }
        }
        let mut model = AbelianModel {
            d,
            g,
            order,
            mode,
            glue,
            lattice: None,
            atoms: Vec::new(),
            bound: 1,
            cache: RwLock::new(HashMap::new()),
        };
        match mode {
            Mode::Lattice => {
                let gens = model.lattice_generators();
                let lcm = gens.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                let n = lcm
                    .to_u64()
                    .filter(|&n| n <= 1 << 20)
                    .ok_or_else(|| Error::Lattice(format!("glue group exponent {lcm} too large")))?;
                model.bound = n * n;
                model.lattice = Some(ZLattice::from_generators(2 * g, &gens).map_err(|e| match e {
                    Error::Rank(m) => Error::Lattice(m),
                    other => other,
                })?);
                model.atoms = (0..g)
                    .map(|i| model.exponent(Subset::singleton(i)))
                    .collect::<Result<_>>()?;
            }
            Mode::Axiomatic => {
                let ex = exponents.ok_or_else(|| {
                    Error::InvalidInput("axiomatic mode needs the atom exponents".into())
                })?;
                if ex.len() != g {
                    return Err(Error::Shape(format!("{} exponents for g = {g}", ex.len())));
                }
                if ex.contains(&0) {
                    return Err(Error::InvalidInput("exponents must be positive".into()));
                }
                if g == 1 && ex[0] != 1 {
                    return Err(Error::Lattice("for g = 1 the only atom is I, whose exponent is 1".into()));
                }
                model.atoms = ex;
            }
        }
        Ok(model)
    }

    /// Lattice model from rational-or-quadratic glue.
    pub fn lattice(d: u64, g: usize, glue: Vec<Vec<QuadInt>>) -> Result<Self> {
        Self::build(ModelSpec { d, g, glue, mode: Mode::Lattice, exponents: None, order: Order::Standard })
    }

    /// Axiomatic model from atom exponents.
    pub fn axiomatic(d: u64, exponents: Vec<u64>) -> Result<Self> {
        let g = exponents.len();
        Self::build(ModelSpec { d, g, glue: Vec::new(), mode: Mode::Axiomatic, exponents: Some(exponents), order: Order::Standard })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn glue(&self) -> &[Vec<QuadInt>] {
        &self.glue
    }

    pub fn lattice_ref(&self) -> Option<&ZLattice> {
        self.lattice.as_ref()
    }

    /// Exponents `n_i` of the atoms `{i}`.
    pub fn atom_exponents(&self) -> &[u64] {
        &self.atoms
    }

    /// Upper bound used when scanning for exponents.
    pub fn exponent_bound(&self) -> u64 {
        self.bound
    }

    /// Generator of the order as a ℤ-module together with 1.
    pub fn omega(&self) -> QuadInt {
        match self.order {
            Order::Standard => QuadInt::sqrt_neg_d(self.d),
            Order::Maximal => {
                let h = Rat::new(1.into(), 2.into());
                QuadInt::new(h.clone(), h, self.d)
            }
        }
    }

    pub fn zero(&self) -> QuadInt {
        QuadInt::zero(self.d)
    }

    /// `(a₁, b₁, a₂, b₂, …)` for coordinates `a_k + b_k·√−d`.
    pub fn realify(&self, v: &[QuadInt]) -> Vec<Rat> {
        v.iter().flat_map(|x| [x.a.clone(), x.b.clone()]).collect()
    }

    pub fn derealify(&self, v: &[Rat]) -> Vec<QuadInt> {
        v.chunks(2).map(|c| QuadInt::new(c[0].clone(), c[1].clone(), self.d)).collect()
    }

    fn lattice_generators(&self) -> Vec<Vec<Rat>> {
        let g = self.g;
        let w = self.omega();
        let mut gens = Vec::new();
        for i in 0..g {
            for unit in [QuadInt::one(self.d), w.clone()] {
                let mut v = vec![self.zero(); g];
                v[i] = unit;
                gens.push(self.realify(&v));
            }
        }
        for v in &self.glue {
            gens.push(self.realify(v));
            let wv: Vec<QuadInt> = v.iter().map(|x| &w * x).collect();
            gens.push(self.realify(&wv));
        }
        gens
    }

    /// Whether `x·Λ ⊆ Λ` (lattice mode) or what the exponents imply (axiomatic mode).
    pub fn is_integral(&self, x: &EndoQ) -> Result<bool> {
        if x.rows() != self.g || x.cols() != self.g {
            return Err(Error::Shape(format!("{}x{} endomorphism for g = {}", x.rows(), x.cols(), self.g)));
        }
        match self.mode {
            Mode::Lattice => self.lattice_integral(x),
            Mode::Axiomatic => self.axiomatic_integral(x),
        }
    }

    fn lattice_integral(&self, x: &EndoQ) -> Result<bool> {
        let lat = self.lattice.as_ref().expect("lattice mode has a lattice");
        let rational_diag: Option<Vec<Rat>> = x
            .is_diagonal()
            .then(|| x.diag())
            .filter(|dg| dg.iter().all(QuadInt::is_rational))
            .map(|dg| dg.into_iter().map(|q| q.a).collect());
        for row in lat.basis() {
            let image = match &rational_diag {
                Some(dg) => row.iter().enumerate().map(|(k, r)| r * &dg[k / 2]).collect(),
                None => {
                    let v = self.derealify(&row);
                    let xv: Vec<QuadInt> = (0..self.g)
                        .map(|i| {
                            (0..self.g).fold(self.zero(), |acc, j| {
                                let e = &x[(i, j)];
                                if e.is_nil() { acc } else { &acc + &(e * &v[j]) }
                            })
                        })
                        .collect();
                    self.realify(&xv)
                }
            };
            if !lat.contains(&image)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn axiomatic_integral(&self, x: &EndoQ) -> Result<bool> {
        let unsupported = || {
            Error::UnsupportedQuery(
                "axiomatic integrality is only defined on rational diagonal endomorphisms".into(),
            )
        };
        if !x.is_diagonal() {
            return Err(unsupported());
        }
        let diag = x.diag();
        if !diag.iter().all(QuadInt::is_rational) {
            return Err(unsupported());
        }
        let vals: Vec<Rat> = diag.into_iter().map(|q| q.a).collect();
        // An integral endomorphism is a root of a monic integer polynomial, so its
        // rational eigenvalues are integers.
        if vals.iter().any(|v| !v.is_integer()) {
            return Ok(false);
        }
        let mut distinct: Vec<BigInt> = vals.iter().map(|v| v.to_integer()).collect();
        distinct.sort();
        distinct.dedup();
        let block = |c: &BigInt| Subset::from_indices((0..self.g).filter(|&i| vals[i].numer() == c));
        match distinct.len() {
            1 => Ok(true),
            2 => {
                let k = block(&distinct[1]);
                let n = self.exponent(k)?;
                Ok((&distinct[1] - &distinct[0]).is_multiple_of(&BigInt::from(n)))
            }
            _ => {
                // p(x) = prod_{c' != c} (x - c') maps x to p(c)·e_{K_c}.
                for c in &distinct {
                    let k = block(c);
                    let Ok(n) = self.exponent(k) else { continue };
                    let p = distinct.iter().filter(|&o| o != c).fold(BigInt::one(), |acc, o| acc * (c - o));
                    if !p.is_multiple_of(&BigInt::from(n)) {
                        return Ok(false);
                    }
                }
                Err(Error::UnsupportedQuery(
                    "three or more distinct eigenvalues pass every divisibility test; the exponents do not decide it".into(),
                ))
            }
        }
    }

    /// The minimal `m ≥ 1` with `m·e_K` integral.
    pub fn exponent(&self, k: Subset) -> Result<u64> {
        let full = Subset::full(self.g);
        if k.0 & !full.0 != 0 {
            return Err(Error::InvalidInput(format!("{k} is not a subset of I")));
        }
        if k.is_empty() || k == full {
            return Ok(1);
        }
        match self.mode {
            Mode::Axiomatic => {
                if k.len() == 1 {
                    Ok(self.atoms[k.iter().next().unwrap()])
                } else if k.complement(self.g).len() == 1 {
                    // e_{I∖K} = id − e_K
                    Ok(self.atoms[k.complement(self.g).iter().next().unwrap()])
                } else {
                    Err(Error::UnsupportedQuery(format!("exponent of {k} is not derivable from atom exponents")))
                }
            }
            Mode::Lattice => {
                if let Some(&n) = self.cache.read().get(&k.0) {
                    return Ok(n);
                }
                let n = self.scan_exponent(k)?;
                self.cache.write().insert(k.0, n);
                Ok(n)
            }
        }
    }

    fn scan_exponent(&self, k: Subset) -> Result<u64> {
        let e = self.idempotent(k);
        for m in 1..=self.bound {
            let q = QuadInt::from_rat(Rat::from_integer(m.into()), self.d);
            if self.is_integral(&e.scale(&q))? {
                return Ok(m);
            }
        }
        Err(Error::Lattice(format!("no exponent for {k} up to {}", self.bound)))
    }

    /// `e_K`: the diagonal idempotent with ones on `K`.
    pub fn idempotent(&self, k: Subset) -> EndoQ {
        let dg: Vec<QuadInt> = (0..self.g)
            .map(|i| if k.contains(i) { QuadInt::one(self.d) } else { self.zero() })
            .collect();
        EndoQ::diagonal(&dg)
    }

    /// `e⁰_K = n_K·e_K`.
    pub fn norm_endo(&self, k: Subset) -> Result<EndoQ> {
        let n = self.exponent(k)?;
        Ok(self.idempotent(k).scale(&QuadInt::from_rat(Rat::from_integer(n.into()), self.d)))
    }

    pub fn identity(&self) -> EndoQ {
        EndoQ::identity(&self.zero(), self.g)
    }

    /// `γ_b^⊤γ_a = n_a·E_{ba}`.
    pub fn gamma_t_gamma(&self, b: usize, a: usize) -> EndoQ {
        super::elementary(self.d, self.g, b, a, Rat::from_integer(self.atoms[a].into()))
    }

    /// Checks `n_K ≥ 4` for every proper nonempty `K` as far as the mode allows.
    pub fn theorem_hypothesis(&self) -> Result<HypothesisCheck> {
        let g = self.g;
        let mut check = HypothesisCheck { checked: 0, min_exponent: None, trusted_remainder: false };
        let subsets: Vec<Subset> = match self.mode {
            Mode::Lattice => Subset::all(g).filter(|k| !k.is_empty() && !k.is_full(g)).collect(),
            Mode::Axiomatic => {
                check.trusted_remainder = g > 3;
                if g == 1 { Vec::new() } else { (0..g).map(Subset::singleton).collect() }
            }
        };
        for k in subsets {
            let n = self.exponent(k)?;
            check.checked += 1;
            check.min_exponent = Some(check.min_exponent.map_or(n, |m: u64| m.min(n)));
            if n < 4 {
                return Err(Error::Hypothesis(format!("exponent of {k} is {n} < 4")));
            }
        }
        Ok(check)
    }
}
