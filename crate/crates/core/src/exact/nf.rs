use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

use super::{rat_to_string, Field, Matrix, Rat, UPoly};

/// One adjoined root: a name and its monic integer minimal polynomial (low to high).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub minpoly: Vec<BigInt>,
}

impl Generator {
    fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }
}

/// `ℚ[t₁,…,t_k]/(m₁(t₁),…,m_k(t_k))` in product presentation.
///
/// No primitive element is computed; elements are coefficient arrays indexed
/// by exponent vectors. The ring is a field when the generators are linearly
/// disjoint, which holds for the constants used here; otherwise inversion of
/// zero divisors fails gracefully.
#[derive(Debug, PartialEq, Eq)]
pub struct NumberField {
    gens: Vec<Generator>,
    /// `powers[k][e]` = `t_k^e` reduced, for `e < 2·deg_k - 1`.
    powers: Vec<Vec<Vec<Rat>>>,
    strides: Vec<usize>,
    dim: usize,
}

/// Result of the best-effort irreducibility check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    Unknown,
}

/// Minimal polynomials of the named constants the morphism grammar knows.
pub fn known_generator(name: &str) -> Option<Generator> {
    let m: &[i64] = match name {
        "eps" => &[1, -1, 1],
        "cbrt4" => &[-4, 0, 0, 1],
        "i" => &[1, 0, 1],
        _ => return None,
    };
    Some(Generator { name: name.into(), minpoly: m.iter().map(|&c| BigInt::from(c)).collect() })
}

impl NumberField {
    pub fn new(gens: Vec<Generator>) -> Result<Arc<Self>> {
        for g in &gens {
            if g.minpoly.len() < 2 || !g.minpoly.last().unwrap().is_one() {
                return Err(Error::InvalidInput(format!("minimal polynomial of {} must be monic of degree >= 1", g.name)));
            }
        }
        let mut names: Vec<&str> = gens.iter().map(|g| g.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        if names.len() != gens.len() {
            return Err(Error::InvalidInput("duplicate generator name".into()));
        }
        let powers = gens.iter().map(power_table).collect();
        let mut strides = vec![1; gens.len()];
        for k in 1..gens.len() {
            strides[k] = strides[k - 1] * gens[k - 1].degree();
        }
        let dim = gens.iter().map(Generator::degree).product();
        Ok(Arc::new(NumberField { gens, powers, strides, dim }))
    }

    pub fn rationals() -> Arc<Self> {
        Self::new(Vec::new()).expect("empty presentation")
    }

    /// Field generated by the named constants (`eps`, `cbrt4`, `i`), in that order.
    pub fn with_constants(names: &[&str]) -> Result<Arc<Self>> {
        let mut gens = Vec::new();
        for n in ["eps", "cbrt4", "i"] {
            if names.contains(&n) {
                gens.push(known_generator(n).unwrap());
            }
        }
        if let Some(bad) = names.iter().find(|n| known_generator(n).is_none()) {
            return Err(Error::InvalidInput(format!("unknown constant {bad}")));
        }
        Self::new(gens)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn exponents(&self, idx: usize) -> Vec<usize> {
        self.gens
            .iter()
            .zip(&self.strides)
            .map(|(g, s)| (idx / s) % g.degree())
            .collect()
    }
}

fn power_table(g: &Generator) -> Vec<Vec<Rat>> {
    let n = g.degree();
    let mut table = Vec::with_capacity(2 * n);
    let mut cur = vec![Rat::zero(); n];
    cur[0] = Rat::one();
    for _ in 0..(2 * n).max(2) {
        table.push(cur.clone());
        // multiply by t, then reduce t^n = -sum m_k t^k
        let top = cur[n - 1].clone();
        for k in (1..n).rev() {
            cur[k] = cur[k - 1].clone();
        }
        cur[0] = Rat::zero();
        if !Zero::is_zero(&top) {
            for k in 0..n {
                cur[k] -= &top * Rat::from_integer(g.minpoly[k].clone());
            }
        }
    }
    table
}

/// An element of a [`NumberField`].
#[derive(Clone)]
pub struct NfElem {
    field: Arc<NumberField>,
    coeffs: Vec<Rat>,
}

impl PartialEq for NfElem {
    fn eq(&self, o: &Self) -> bool {
        (Arc::ptr_eq(&self.field, &o.field) || self.field == o.field) && self.coeffs == o.coeffs
    }
}

impl NfElem {
    pub fn from_rat(field: &Arc<NumberField>, r: Rat) -> Self {
        let mut coeffs = vec![Rat::zero(); field.dim];
        coeffs[0] = r;
        NfElem { field: field.clone(), coeffs }
    }

    pub fn from_coeffs(field: &Arc<NumberField>, coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.len() != field.dim {
            return Err(Error::Shape(format!("{} coefficients for a degree-{} field", coeffs.len(), field.dim)));
        }
        Ok(NfElem { field: field.clone(), coeffs })
    }

    /// The named generator as an element.
    pub fn generator(field: &Arc<NumberField>, name: &str) -> Result<Self> {
        let k = field
            .gens
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::InvalidInput(format!("{name} is not a generator of this field")))?;
        let mut coeffs = vec![Rat::zero(); field.dim];
        coeffs[field.strides[k]] = Rat::one();
        Ok(NfElem { field: field.clone(), coeffs })
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// The rational value, if the element lies in ℚ.
    pub fn as_rat(&self) -> Option<&Rat> {
        self.coeffs[1..].iter().all(Zero::is_zero).then_some(&self.coeffs[0])
    }

    fn same_field(&self, o: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &o.field) || self.field == o.field,
            "elements of different number fields"
        );
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Nonzero monomials as (exponent per generator, coefficient).
    pub fn terms(&self) -> Vec<(Vec<usize>, Rat)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(*c))
            .map(|(k, c)| (self.field.exponents(k), c.clone()))
            .collect()
    }

    /// The same value in a field whose presentation contains every generator of this one.
    pub fn embed(&self, target: &Arc<NumberField>) -> Result<NfElem> {
        if Arc::ptr_eq(&self.field, target) || *self.field == **target {
            return Ok(NfElem { field: target.clone(), coeffs: self.coeffs.clone() });
        }
        let images = self
            .field
            .gens
            .iter()
            .map(|g| match target.gens.iter().find(|t| t.name == g.name) {
                Some(t) if t.minpoly == g.minpoly => NfElem::generator(target, &g.name),
                _ => Err(Error::InvalidInput(format!("generator {} is missing from the target field", g.name))),
            })
            .collect::<Result<Vec<_>>>()?;
        let mut out = NfElem::from_rat(target, Rat::zero());
        for (exps, c) in self.terms() {
            let mut term = NfElem::from_rat(target, c);
            for (img, e) in images.iter().zip(exps) {
                term = &term * &img.pow(e as u32);
            }
            out = &out + &term;
        }
        Ok(out)
    }

    fn mul_matrix(&self) -> Matrix<Rat> {
        let n = self.field.dim;
        let mut m = Matrix::zeros(&Rat::zero(), n, n);
        for j in 0..n {
            let mut b = vec![Rat::zero(); n];
            b[j] = Rat::one();
            let col = self * &NfElem { field: self.field.clone(), coeffs: b };
            for i in 0..n {
                m[(i, j)] = col.coeffs[i].clone();
            }
        }
        m
    }
}

impl Add for &NfElem {
    type Output = NfElem;
    fn add(self, o: &NfElem) -> NfElem {
        self.same_field(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        NfElem { field: self.field.clone(), coeffs }
    }
}

impl Sub for &NfElem {
    type Output = NfElem;
    fn sub(self, o: &NfElem) -> NfElem {
        self.same_field(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        NfElem { field: self.field.clone(), coeffs }
    }
}

impl Mul for &NfElem {
    type Output = NfElem;
    fn mul(self, o: &NfElem) -> NfElem {
        self.same_field(o);
        let f = &self.field;
        let mut out = vec![Rat::zero(); f.dim];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            let ei = f.exponents(i);
            for (j, b) in o.coeffs.iter().enumerate() {
                if Zero::is_zero(b) {
                    continue;
                }
                let ej = f.exponents(j);
                // Expand prod_k t_k^(ei_k + ej_k) as a tensor of reduced powers.
                let mut terms: Vec<(usize, Rat)> = vec![(0, a * b)];
                for k in 0..f.gens.len() {
                    let red = &f.powers[k][ei[k] + ej[k]];
                    let mut next = Vec::with_capacity(terms.len() * red.len());
                    for (idx, c) in &terms {
                        for (m, r) in red.iter().enumerate() {
                            if !Zero::is_zero(r) {
                                next.push((idx + m * f.strides[k], c * r));
                            }
                        }
                    }
                    terms = next;
                }
                for (idx, c) in terms {
                    out[idx] += c;
                }
            }
        }
        NfElem { field: f.clone(), coeffs: out }
    }
}

impl Add for NfElem {
    type Output = NfElem;
    fn add(self, o: NfElem) -> NfElem {
        &self + &o
    }
}

impl Sub for NfElem {
    type Output = NfElem;
    fn sub(self, o: NfElem) -> NfElem {
        &self - &o
    }
}

impl Mul for NfElem {
    type Output = NfElem;
    fn mul(self, o: NfElem) -> NfElem {
        &self * &o
    }
}

impl Neg for NfElem {
    type Output = NfElem;
    fn neg(self) -> NfElem {
        NfElem { field: self.field, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Field for NfElem {
    fn zero_like(&self) -> Self {
        NfElem::from_rat(&self.field, Rat::zero())
    }
    fn one_like(&self) -> Self {
        NfElem::from_rat(&self.field, Rat::one())
    }
    fn is_nil(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
    fn inv(&self) -> Option<Self> {
        if Field::is_nil(self) {
            return None;
        }
        if let Some(r) = self.as_rat() {
            return Some(NfElem::from_rat(&self.field, r.recip()));
        }
        let mut e = vec![Rat::zero(); self.field.dim];
        e[0] = Rat::one();
        let y = self.mul_matrix().solve(&e).ok()?;
        Some(NfElem { field: self.field.clone(), coeffs: y })
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        NfElem::from_rat(&self.field, r.clone())
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let mono: Vec<String> = self
                .field
                .exponents(idx)
                .iter()
                .zip(&self.field.gens)
                .filter(|(e, _)| **e > 0)
                .map(|(e, g)| if *e == 1 { g.name.clone() } else { format!("{}^{e}", g.name) })
                .collect();
            let neg = c.is_negative();
            let abs = c.abs();
            let body = match (mono.is_empty(), One::is_one(&abs)) {
                (true, _) => rat_to_string(&abs),
                (false, true) => mono.join("*"),
                (false, false) => format!("{}*{}", rat_to_string(&abs), mono.join("*")),
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `p mod minpoly` as an element of `ℚ[t]/(minpoly)`; coefficients low to high.
pub fn nf_reduce(p: &[Rat], minpoly: &[BigInt]) -> Result<NfElem> {
    let field = NumberField::new(vec![Generator { name: "t".into(), minpoly: minpoly.to_vec() }])?;
    let zero = Rat::zero();
    let m = UPoly::new(&zero, minpoly.iter().map(|c| Rat::from_integer(c.clone())).collect());
    let (_, r) = UPoly::new(&zero, p.to_vec()).div_rem(&m);
    let mut coeffs = r.coeffs().to_vec();
    coeffs.resize(field.dim, Rat::zero());
    NfElem::from_coeffs(&field, coeffs)
}

/// Best-effort irreducibility over ℚ of a monic integer polynomial.
///
/// Reports `Reducible` on a rational root, `Irreducible` if the polynomial
/// has no rational root in degree ≤ 3 or is irreducible modulo a small prime.
pub fn irreducibility(minpoly: &[BigInt]) -> Irreducibility {
    let n = minpoly.len().saturating_sub(1);
    if n == 0 {
        return Irreducibility::Reducible;
    }
    if n == 1 {
        return Irreducibility::Irreducible;
    }
    let c0 = &minpoly[0];
    if c0.is_zero() {
        return Irreducibility::Reducible;
    }
    let eval = |x: &BigInt| minpoly.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c);
    let mut has_root = None;
    if let Some(c) = c0.abs().to_u64().filter(|&c| c <= 1_000_000) {
        has_root = Some(false);
        for dv in (1..=c).filter(|dv| c % dv == 0) {
            for x in [BigInt::from(dv), -BigInt::from(dv)] {
                if eval(&x).is_zero() {
                    return Irreducibility::Reducible;
                }
            }
        }
    }
    if n <= 3 && has_root == Some(false) {
        return Irreducibility::Irreducible;
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        let f: Vec<u64> = minpoly.iter().map(|c| c.mod_floor(&BigInt::from(p)).to_u64().unwrap()).collect();
        if irreducible_mod_p(&f, p) {
            return Irreducibility::Irreducible;
        }
    }
    Irreducibility::Unknown
}

fn irreducible_mod_p(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if n > 8 {
        return false;
    }
    for k in 1..=n / 2 {
        let count = p.pow(k as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(k + 1);
            let mut c = code;
            for _ in 0..k {
                g.push(c % p);
                c /= p;
            }
            g.push(1);
            if divides_mod_p(&g, f, p) {
                return false;
            }
        }
    }
    true
}

fn divides_mod_p(g: &[u64], f: &[u64], p: u64) -> bool {
    let mut r = f.to_vec();
    let k = g.len() - 1;
    while r.len() > k {
        let c = *r.last().unwrap();
        let s = r.len() - 1 - k;
        for (i, gi) in g.iter().enumerate() {
            r[s + i] = (r[s + i] + p * p - c * gi % p) % p;
        }
        r.pop();
    }
    r.iter().all(|&x| x == 0)
}
