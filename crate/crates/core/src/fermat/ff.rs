//! Function fields `K(x)[y]/(F)` of plane curves over a number field.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{Field, NfElem, NumberField, RatFn, Rat, UPoly};

use super::expr::Evaluator;

/// Coefficients in `y`: rational functions of `x`.
pub type Coef = RatFn<NfElem>;

/// `K(x)[y]` modulo a monic relation in `y`, or the plain ring `K(x)[y]` when
/// there is no relation (used to read curve equations).
#[derive(Debug)]
pub struct FunctionField {
    nf: Arc<NumberField>,
    modulus: Option<UPoly<Coef>>,
    /// `dy/dx = −F_x/F_y` along the curve.
    dy: Option<UPoly<Coef>>,
}

#[derive(Clone, Debug)]
pub struct FfElem {
    ff: Arc<FunctionField>,
    c: UPoly<Coef>,
}

impl PartialEq for FfElem {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c
    }
}

fn coef_derivative(c: &Coef) -> Coef {
    let (n, d) = (c.num(), c.den());
    let top = &(&n.derivative() * d) - &(n * &d.derivative());
    RatFn::new(top, d * d)
}

fn y_derivative(p: &UPoly<Coef>) -> UPoly<Coef> {
    p.derivative()
}

fn x_derivative(p: &UPoly<Coef>) -> UPoly<Coef> {
    UPoly::new(p.proto(), p.coeffs().iter().map(coef_derivative).collect())
}

impl FunctionField {
    /// `K(x)[y]` with no relation.
    pub fn polynomial_ring(nf: &Arc<NumberField>) -> Arc<Self> {
        Arc::new(FunctionField { nf: nf.clone(), modulus: None, dy: None })
    }

    /// `K(x)[y]/(F)`; `F` is made monic in `y`.
    pub fn of_equation(f: &FfElem) -> Result<Arc<Self>> {
        let deg = f.c.degree().unwrap_or(0);
        if deg == 0 {
            return Err(Error::InvalidInput("curve equation must involve y".into()));
        }
        let lead = f.c.lead().unwrap().inv().expect("nonzero leading coefficient");
        let modulus = f.c.scale(&lead);
        let fy = y_derivative(&modulus);
        let fx = x_derivative(&modulus);
        let tmp = Arc::new(FunctionField { nf: f.ff.nf.clone(), modulus: Some(modulus.clone()), dy: None });
        let fy = FfElem { ff: tmp.clone(), c: fy }.reduce();
        let fx = FfElem { ff: tmp, c: fx }.reduce();
        let dy = -&(&fx * &fy.inv().map_err(|_| Error::InvalidInput("curve equation is not squarefree in y".into()))?);
        Ok(Arc::new(FunctionField { nf: f.ff.nf.clone(), modulus: Some(modulus), dy: Some(dy.c) }))
    }

    pub fn nf(&self) -> &Arc<NumberField> {
        &self.nf
    }

    pub fn modulus(&self) -> Option<&UPoly<Coef>> {
        self.modulus.as_ref()
    }

    /// Degree of the relation in `y` (0 for the plain ring).
    pub fn degree(&self) -> usize {
        self.modulus.as_ref().and_then(UPoly::degree).unwrap_or(0)
    }
}

impl FfElem {
    pub fn from_coef(ff: &Arc<FunctionField>, c: Coef) -> Self {
        FfElem { ff: ff.clone(), c: UPoly::constant(c) }.reduce()
    }

    pub fn from_poly(ff: &Arc<FunctionField>, c: UPoly<Coef>) -> Self {
        FfElem { ff: ff.clone(), c }.reduce()
    }

    pub fn from_nf(ff: &Arc<FunctionField>, a: NfElem) -> Self {
        Self::from_coef(ff, RatFn::constant(a))
    }

    pub fn from_rat(ff: &Arc<FunctionField>, r: Rat) -> Self {
        Self::from_nf(ff, NfElem::from_rat(&ff.nf, r))
    }

    pub fn x(ff: &Arc<FunctionField>) -> Self {
        let one = NfElem::from_rat(&ff.nf, Rat::from_integer(1.into()));
        Self::from_coef(ff, RatFn::from_poly(UPoly::var(&one)))
    }

    pub fn y(ff: &Arc<FunctionField>) -> Self {
        let one = Self::from_rat(ff, Rat::from_integer(1.into()));
        FfElem { ff: ff.clone(), c: UPoly::monomial(one.c.coeff(0), 1) }.reduce()
    }

    pub fn field(&self) -> &Arc<FunctionField> {
        &self.ff
    }

    pub fn poly(&self) -> &UPoly<Coef> {
        &self.c
    }

    /// Coefficients in `y`, low to high.
    pub fn coeffs(&self) -> &[Coef] {
        self.c.coeffs()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero()
    }

    fn reduce(mut self) -> Self {
        if let Some(m) = &self.ff.modulus {
            if self.c.degree().unwrap_or(0) >= m.degree().unwrap() {
                self.c = self.c.div_rem(m).1;
            }
        }
        self
    }

    fn wrap(&self, c: UPoly<Coef>) -> Self {
        FfElem { ff: self.ff.clone(), c }.reduce()
    }

    /// Multiplicative inverse; in the plain ring only constants in `y` invert.
    pub fn inv(&self) -> Result<Self> {
        if self.c.is_zero() {
            return Err(Error::Reduction("division by zero in the function field".into()));
        }
        let Some(m) = &self.ff.modulus else {
            return match self.c.degree() {
                Some(0) => Ok(self.wrap(UPoly::constant(self.c.coeff(0).inv().unwrap()))),
                _ => Err(Error::Reduction("cannot divide by a polynomial in y outside a curve".into())),
            };
        };
        // extended Euclid: s·a ≡ r (mod m)
        let zero = UPoly::zero(self.c.proto());
        let (mut r0, mut r1) = (self.c.clone(), m.clone());
        let (mut s0, mut s1) = (UPoly::constant(self.c.proto().one_like()), zero);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.degree() != Some(0) {
            return Err(Error::Reduction("element is a zero divisor modulo the curve equation".into()));
        }
        let c = r0.coeff(0).inv().unwrap();
        Ok(self.wrap(s0.scale(&c)))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = FfElem::from_rat(&self.ff, Rat::from_integer(1.into()));
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// `d/dx` along the curve, with `dy/dx = −F_x/F_y`.
    pub fn derivative(&self) -> Result<Self> {
        let dy = self
            .ff
            .dy
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("derivative needs a curve relation".into()))?;
        let dx_part = self.wrap(x_derivative(&self.c));
        let dy_part = &self.wrap(y_derivative(&self.c)) * &self.wrap(dy.clone());
        Ok(&dx_part + &dy_part)
    }
}

impl std::ops::Add for &FfElem {
    type Output = FfElem;
    fn add(self, o: &FfElem) -> FfElem {
        self.wrap(&self.c + &o.c)
    }
}

impl std::ops::Sub for &FfElem {
    type Output = FfElem;
    fn sub(self, o: &FfElem) -> FfElem {
        self.wrap(&self.c - &o.c)
    }
}

impl std::ops::Mul for &FfElem {
    type Output = FfElem;
    fn mul(self, o: &FfElem) -> FfElem {
        self.wrap(&self.c * &o.c)
    }
}

impl std::ops::Neg for &FfElem {
    type Output = FfElem;
    fn neg(self) -> FfElem {
        FfElem { ff: self.ff.clone(), c: -&self.c }
    }
}

/// Evaluates expressions in a function field with named variables bound.
pub struct FfEval<'a> {
    pub ff: &'a Arc<FunctionField>,
    pub vars: Vec<(String, FfElem)>,
}

impl Evaluator for FfEval<'_> {
    type Value = FfElem;
    fn int(&self, n: &BigInt) -> Result<FfElem> {
        Ok(FfElem::from_rat(self.ff, Rat::from_integer(n.clone())))
    }
    fn constant(&self, name: &str) -> Result<FfElem> {
        Ok(FfElem::from_nf(self.ff, NfElem::generator(self.ff.nf(), name)?))
    }
    fn var(&self, name: &str) -> Result<FfElem> {
        self.vars
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| Error::Parse(format!("unbound variable {name}")))
    }
    fn add(&self, a: &FfElem, b: &FfElem) -> FfElem {
        a + b
    }
    fn sub(&self, a: &FfElem, b: &FfElem) -> FfElem {
        a - b
    }
    fn mul(&self, a: &FfElem, b: &FfElem) -> FfElem {
        a * b
    }
    fn neg(&self, a: &FfElem) -> FfElem {
        -a
    }
    fn inv(&self, a: &FfElem) -> Result<FfElem> {
        a.inv()
    }
    fn pow(&self, a: &FfElem, e: i64) -> Result<FfElem> {
        a.pow(e)
    }
}
