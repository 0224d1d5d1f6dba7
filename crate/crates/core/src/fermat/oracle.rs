//! Morphism degrees by counting fibers over `𝔽_{p²}`.
//!
//! Every affine point of the source is enumerated, its image computed, and the
//! largest fiber taken. Generic fibers are unramified, so the maximum equals the
//! degree once a completely split fiber is met; agreement across several primes
//! guards against unlucky reductions.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{NfElem, NumberField, Rat, UPoly};

use super::curve::{field_of, CurveMorphism};
use super::expr::Evaluator;
use super::ff::{FfElem, FunctionField};

/// Primes must be `1 mod 6` and at least this large.
pub const MIN_PRIME: u64 = 31;
/// Number of agreeing primes required.
pub const REQUIRED_PRIMES: usize = 3;
const MAX_ATTEMPTS: usize = 16;

type E2 = (u64, u64);

/// `𝔽_p[s]/(s² − r)` with `r` a non-residue.
#[derive(Clone, Copy, Debug)]
pub struct Gf {
    p: u64,
    r: u64,
}

impl Gf {
    pub fn new(p: u64) -> Self {
        let r = (2..p).find(|&a| pow_mod(a, (p - 1) / 2, p) == p - 1).expect("odd prime has a non-residue");
        Gf { p, r }
    }

    pub fn order(&self) -> u64 {
        self.p * self.p
    }

    fn add(&self, a: E2, b: E2) -> E2 {
        ((a.0 + b.0) % self.p, (a.1 + b.1) % self.p)
    }

    fn sub(&self, a: E2, b: E2) -> E2 {
        ((a.0 + self.p - b.0) % self.p, (a.1 + self.p - b.1) % self.p)
    }

    fn neg(&self, a: E2) -> E2 {
        self.sub((0, 0), a)
    }

    fn mul(&self, a: E2, b: E2) -> E2 {
        let p = self.p as u128;
        let (a0, a1, b0, b1) = (a.0 as u128, a.1 as u128, b.0 as u128, b.1 as u128);
        let re = (a0 * b0 + (a1 * b1 % p) * self.r as u128) % p;
        let im = (a0 * b1 + a1 * b0) % p;
        (re as u64, im as u64)
    }

    fn inv(&self, a: E2) -> Option<E2> {
        let p = self.p as u128;
        let norm = ((a.0 as u128 * a.0 as u128) % p + p - (a.1 as u128 * a.1 as u128 % p) * self.r as u128 % p) % p;
        if norm == 0 {
            return None;
        }
        let ni = pow_mod(norm as u64, self.p - 2, self.p);
        Some(self.mul((a.0, (self.p - a.1) % self.p), (ni, 0)))
    }

    fn pow(&self, mut a: E2, mut e: u64) -> E2 {
        let mut acc = (1, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    fn from_int(&self, n: &BigInt) -> E2 {
        (n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap(), 0)
    }

    fn from_rat(&self, r: &Rat) -> Option<E2> {
        let den = self.from_int(r.denom());
        Some(self.mul(self.from_int(r.numer()), self.inv(den)?))
    }

    fn elements(&self) -> impl Iterator<Item = E2> + '_ {
        (0..self.p).flat_map(move |a| (0..self.p).map(move |b| (a, b)))
    }
}

fn pow_mod(a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = (a % p) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        e >>= 1;
    }
    acc as u64
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Polynomials over `𝔽_{p²}`, low to high, trimmed.
type GfPoly = Vec<E2>;

fn trim(mut a: GfPoly) -> GfPoly {
    while a.last() == Some(&(0, 0)) {
        a.pop();
    }
    a
}

fn poly_rem(gf: &Gf, a: &GfPoly, m: &GfPoly) -> GfPoly {
    let mut r = trim(a.clone());
    let lead_inv = gf.inv(*m.last().unwrap()).unwrap();
    while r.len() >= m.len() {
        let c = gf.mul(*r.last().unwrap(), lead_inv);
        let shift = r.len() - m.len();
        for (k, &mk) in m.iter().enumerate() {
            r[shift + k] = gf.sub(r[shift + k], gf.mul(c, mk));
        }
        r = trim(r);
    }
    r
}

fn poly_divexact(gf: &Gf, a: &GfPoly, m: &GfPoly) -> GfPoly {
    let mut r = trim(a.clone());
    let lead_inv = gf.inv(*m.last().unwrap()).unwrap();
    let mut q = vec![(0, 0); r.len().saturating_sub(m.len()) + 1];
    while r.len() >= m.len() {
        let c = gf.mul(*r.last().unwrap(), lead_inv);
        let shift = r.len() - m.len();
        q[shift] = c;
        for (k, &mk) in m.iter().enumerate() {
            r[shift + k] = gf.sub(r[shift + k], gf.mul(c, mk));
        }
        r = trim(r);
    }
    trim(q)
}

fn poly_mulmod(gf: &Gf, a: &GfPoly, b: &GfPoly, m: &GfPoly) -> GfPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![(0, 0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = gf.add(out[i + j], gf.mul(x, y));
        }
    }
    poly_rem(gf, &out, m)
}

fn poly_powmod(gf: &Gf, base: &GfPoly, mut e: u64, m: &GfPoly) -> GfPoly {
    let mut acc = poly_rem(gf, &vec![(1, 0)], m);
    let mut b = poly_rem(gf, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(gf, &acc, &b, m);
        }
        b = poly_mulmod(gf, &b, &b, m);
        e >>= 1;
    }
    acc
}

fn poly_gcd(gf: &Gf, a: &GfPoly, b: &GfPoly) -> GfPoly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = poly_rem(gf, &a, &b);
        a = std::mem::replace(&mut b, r);
    }
    if let Some(&l) = a.last() {
        let li = gf.inv(l).unwrap();
        a = a.into_iter().map(|c| gf.mul(c, li)).collect();
    }
    a
}

fn poly_sub(gf: &Gf, a: &GfPoly, b: &GfPoly) -> GfPoly {
    let n = a.len().max(b.len());
    trim((0..n).map(|k| gf.sub(*a.get(k).unwrap_or(&(0, 0)), *b.get(k).unwrap_or(&(0, 0)))).collect())
}

/// Distinct roots in `𝔽_{p²}` by Cantor–Zassenhaus.
pub fn roots(gf: &Gf, f: &[E2]) -> Vec<E2> {
    let f = trim(f.to_vec());
    if f.len() < 2 {
        return Vec::new();
    }
    let y = vec![(0, 0), (1, 0)];
    let yq = poly_powmod(gf, &y, gf.order(), &f);
    let split = poly_gcd(gf, &f, &poly_sub(gf, &yq, &y));
    let mut out = Vec::new();
    split_linear(gf, split, &mut out, 0);
    out.sort_unstable();
    out
}

fn split_linear(gf: &Gf, f: GfPoly, out: &mut Vec<E2>, seed: u64) {
    match f.len() {
        0 | 1 => {}
        2 => out.push(gf.neg(gf.mul(f[0], gf.inv(f[1]).unwrap()))),
        _ => {
            let half = (gf.order() - 1) / 2;
            let mut a = seed;
            loop {
                let shift = (a % gf.p, a / gf.p % gf.p);
                a += 1;
                let h = poly_powmod(gf, &vec![shift, (1, 0)], half, &f);
                let g = poly_gcd(gf, &f, &poly_sub(gf, &h, &vec![(1, 0)]));
                if g.len() > 1 && g.len() < f.len() {
                    let rest = poly_divexact(gf, &f, &g);
                    split_linear(gf, g, out, a);
                    split_linear(gf, rest, out, a);
                    return;
                }
            }
        }
    }
}

/// Images of the number-field generators and the rational reduction map.
struct Reduction {
    gf: Gf,
    roots: HashMap<String, E2>,
}

impl Reduction {
    fn new(p: u64, nf: &NumberField) -> Option<Self> {
        let gf = Gf::new(p);
        let mut roots = HashMap::new();
        for g in nf.generators() {
            let m: GfPoly = g.minpoly.iter().map(|c| gf.from_int(c)).collect();
            let r = *self::roots(&gf, &m).first()?;
            roots.insert(g.name.clone(), r);
        }
        Some(Reduction { gf, roots })
    }

    fn nf(&self, a: &NfElem) -> Option<E2> {
        let names: Vec<&str> = a.field().generators().iter().map(|g| g.name.as_str()).collect();
        let mut acc = (0, 0);
        for (exps, c) in a.terms() {
            let mut t = self.gf.from_rat(&c)?;
            for (name, e) in names.iter().zip(exps) {
                t = self.gf.mul(t, self.gf.pow(self.roots[*name], e as u64));
            }
            acc = self.gf.add(acc, t);
        }
        Some(acc)
    }

    fn upoly(&self, p: &UPoly<NfElem>, x: E2) -> Option<E2> {
        let mut acc = (0, 0);
        for c in p.coeffs().iter().rev() {
            acc = self.gf.add(self.gf.mul(acc, x), self.nf(c)?);
        }
        Some(acc)
    }
}

struct PointEval<'a> {
    red: &'a Reduction,
    vars: [(&'a str, E2); 2],
}

impl Evaluator for PointEval<'_> {
    type Value = E2;
    fn int(&self, n: &BigInt) -> Result<E2> {
        Ok(self.red.gf.from_int(n))
    }
    fn constant(&self, name: &str) -> Result<E2> {
        self.red.roots.get(name).copied().ok_or_else(|| Error::Oracle(format!("constant {name} not reduced")))
    }
    fn var(&self, name: &str) -> Result<E2> {
        self.vars
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| *v)
            .ok_or_else(|| Error::Parse(format!("unbound variable {name}")))
    }
    fn add(&self, a: &E2, b: &E2) -> E2 {
        self.red.gf.add(*a, *b)
    }
    fn sub(&self, a: &E2, b: &E2) -> E2 {
        self.red.gf.sub(*a, *b)
    }
    fn mul(&self, a: &E2, b: &E2) -> E2 {
        self.red.gf.mul(*a, *b)
    }
    fn neg(&self, a: &E2) -> E2 {
        self.red.gf.neg(*a)
    }
    fn inv(&self, a: &E2) -> Result<E2> {
        self.red.gf.inv(*a).ok_or_else(|| Error::Oracle("pole".into()))
    }
}

/// Fiber statistics at one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeSample {
    pub p: u64,
    pub source_points: usize,
    pub image_points: usize,
    pub max_fiber: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub samples: Vec<PrimeSample>,
    /// Primes skipped for bad reduction.
    pub skipped: Vec<u64>,
}

fn sample(phi: &CurveMorphism, nf: &Arc<NumberField>, plain: &FfElem, p: u64) -> Option<PrimeSample> {
    let red = Reduction::new(p, nf)?;
    // every coefficient of the equation must reduce
    for c in plain.coeffs() {
        for a in c.num().coeffs().iter().chain(c.den().coeffs()) {
            red.nf(a)?;
        }
    }
    let xs: Vec<E2> = red.gf.elements().collect();
    let images: Vec<Vec<E2x2>> = xs
        .par_iter()
        .map(|&x| {
            let mut coeffs = Vec::with_capacity(plain.coeffs().len());
            for c in plain.coeffs() {
                let den = red.upoly(c.den(), x)?;
                let inv = red.gf.inv(den)?;
                coeffs.push(red.gf.mul(red.upoly(c.num(), x)?, inv));
            }
            let coeffs = trim(coeffs);
            if coeffs.len() != plain.coeffs().len() {
                return Some(Vec::new());
            }
            let mut out = Vec::new();
            for y in roots(&red.gf, &coeffs) {
                let ev = PointEval { red: &red, vars: [(&phi.source.vars[0], x), (&phi.source.vars[1], y)] };
                if let (Ok(u), Ok(v)) = (phi.u.eval(&ev), phi.v.eval(&ev)) {
                    out.push((u, v));
                }
            }
            Some(out)
        })
        .map(|o| o.unwrap_or_default())
        .collect();
    let mut fibers: HashMap<E2x2, usize> = HashMap::new();
    let mut source_points = 0;
    for img in images.into_iter().flatten() {
        source_points += 1;
        *fibers.entry(img).or_default() += 1;
    }
    Some(PrimeSample {
        p,
        source_points,
        image_points: fibers.len(),
        max_fiber: fibers.values().copied().max().unwrap_or(0),
    })
}

type E2x2 = (E2, E2);

/// Degree of the function-field extension induced by `phi`.
pub fn degree(phi: &CurveMorphism) -> Result<DegreeReport> {
    let names: BTreeSet<String> = phi.constants();
    let nf = field_of(&names)?;
    let ring = FunctionField::polynomial_ring(&nf);
    let plain = phi.source.equation.eval(&super::ff::FfEval {
        ff: &ring,
        vars: vec![(phi.source.vars[0].clone(), FfElem::x(&ring)), (phi.source.vars[1].clone(), FfElem::y(&ring))],
    })?;
    let mut samples = Vec::new();
    let mut skipped = Vec::new();
    let primes = (MIN_PRIME..).filter(|p| p % 6 == 1 && is_prime(*p)).take(MAX_ATTEMPTS);
    for p in primes {
        match sample(phi, &nf, &plain, p) {
            Some(s) if s.max_fiber > 0 => samples.push(s),
            _ => skipped.push(p),
        }
        if samples.len() == REQUIRED_PRIMES {
            break;
        }
    }
    if samples.len() < REQUIRED_PRIMES {
        return Err(Error::Oracle(format!(
            "{}: only {} good primes among {:?}",
            phi.label,
            samples.len(),
            samples.iter().map(|s| s.p).chain(skipped.iter().copied()).collect::<Vec<_>>()
        )));
    }
    let degree = samples[0].max_fiber;
    if samples.iter().any(|s| s.max_fiber != degree) {
        return Err(Error::Oracle(format!(
            "{}: fiber maxima disagree across primes: {:?}",
            phi.label,
            samples.iter().map(|s| (s.p, s.max_fiber)).collect::<Vec<_>>()
        )));
    }
    Ok(DegreeReport { degree, samples, skipped })
}
