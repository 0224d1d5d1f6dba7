use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, Rat};

/// Univariate polynomial with coefficients low to high, no trailing zeros.
///
/// `zero` is a zero of the coefficient field, kept so context-carrying fields
/// can build constants even for the zero polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly<F> {
    coeffs: Vec<F>,
    zero: F,
}

impl<F: Field> UPoly<F> {
    pub fn new(proto: &F, mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(Field::is_nil) {
            coeffs.pop();
        }
        UPoly { coeffs, zero: proto.zero_like() }
    }

    pub fn zero(proto: &F) -> Self {
        Self::new(proto, Vec::new())
    }

    pub fn constant(c: F) -> Self {
        let z = c.zero_like();
        Self::new(&z, vec![c])
    }

    /// The monomial `c·t^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        let z = c.zero_like();
        let mut v = vec![z.clone(); k];
        v.push(c);
        Self::new(&z, v)
    }

    /// `t`.
    pub fn var(proto: &F) -> Self {
        Self::monomial(proto.one_like(), 1)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn proto(&self) -> &F {
        &self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(&self.zero, self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(self.zero.clone(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * c.from_rat_like(&Rat::from_integer(k.into())))
            .collect();
        Self::new(&self.zero, v)
    }

    /// Euclidean division; panics on a zero divisor or a non-invertible lead.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.lead().unwrap().inv().expect("leading coefficient must be invertible");
        let mut r = self.coeffs.clone();
        let mut q = vec![self.zero.clone(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap().clone() * inv.clone();
            for (i, dc) in d.coeffs.iter().enumerate() {
                let v = r[k + i].clone() - c.clone() * dc.clone();
                r[k + i] = v;
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(Field::is_nil) {
                r.pop();
            }
        }
        (Self::new(&self.zero, q), Self::new(&self.zero, r))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("leading coefficient must be invertible")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.zero.one_like());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl<F: Field> Add for &UPoly<F> {
    type Output = UPoly<F>;
    fn add(self, o: &UPoly<F>) -> UPoly<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new(&self.zero, (0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<F: Field> Sub for &UPoly<F> {
    type Output = UPoly<F>;
    fn sub(self, o: &UPoly<F>) -> UPoly<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new(&self.zero, (0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<F: Field> Mul for &UPoly<F> {
    type Output = UPoly<F>;
    fn mul(self, o: &UPoly<F>) -> UPoly<F> {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(&self.zero);
        }
        let mut v = vec![self.zero.clone(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_nil() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                let cur = std::mem::replace(&mut v[i + j], self.zero.clone());
                v[i + j] = cur + a.clone() * b.clone();
            }
        }
        UPoly::new(&self.zero, v)
    }
}

impl<F: Field> Neg for &UPoly<F> {
    type Output = UPoly<F>;
    fn neg(self) -> UPoly<F> {
        UPoly::new(&self.zero, self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

/// Reduced quotient of polynomials with monic denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFn<F> {
    num: UPoly<F>,
    den: UPoly<F>,
}

impl<F: Field> RatFn<F> {
    /// Panics if `den` is zero.
    pub fn new(num: UPoly<F>, den: UPoly<F>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::from_poly(num);
        }
        let g = num.gcd(&den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let l = d.lead().unwrap().inv().unwrap();
        RatFn { num: n.scale(&l), den: d.scale(&l) }
    }

    pub fn from_poly(p: UPoly<F>) -> Self {
        let one = UPoly::constant(p.proto().one_like());
        RatFn { num: p, den: one }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    pub fn num(&self) -> &UPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &UPoly<F> {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.degree() == Some(0)
    }
}

impl<F: Field> Add for RatFn<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.den == o.den {
            return RatFn::new(&self.num + &o.num, self.den);
        }
        RatFn::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl<F: Field> Sub for RatFn<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<F: Field> Mul for RatFn<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return RatFn::from_poly(UPoly::zero(self.num.proto()));
        }
        RatFn::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl<F: Field> Neg for RatFn<F> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFn { num: -&self.num, den: self.den }
    }
}

impl<F: Field> Field for RatFn<F> {
    fn zero_like(&self) -> Self {
        RatFn::from_poly(UPoly::zero(self.num.proto()))
    }
    fn one_like(&self) -> Self {
        RatFn::constant(self.num.proto().one_like())
    }
    fn is_nil(&self) -> bool {
        self.num.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(RatFn::new(self.den.clone(), self.num.clone()))
        }
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        RatFn::constant(self.num.proto().from_rat_like(r))
    }
}
