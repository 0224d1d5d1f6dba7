use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{rat_to_string, Field, Rat};

/// `a + b·√−d` in the imaginary quadratic field `ℚ(√−d)`.
///
/// The discriminant parameter travels with the element; mixing elements of
/// different fields is a programming error and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadInt {
    pub a: Rat,
    pub b: Rat,
    d: u64,
}

pub fn is_squarefree(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut n = d;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

impl QuadInt {
    /// Panics unless `d` is a positive squarefree integer.
    pub fn new(a: Rat, b: Rat, d: u64) -> Self {
        assert!(is_squarefree(d), "d = {d} is not a positive squarefree integer");
        QuadInt { a, b, d }
    }

    pub fn from_rat(a: Rat, d: u64) -> Self {
        Self::new(a, Rat::zero(), d)
    }

    pub fn zero(d: u64) -> Self {
        Self::new(Rat::zero(), Rat::zero(), d)
    }

    pub fn one(d: u64) -> Self {
        Self::new(Rat::one(), Rat::zero(), d)
    }

    /// `√−d` itself.
    pub fn sqrt_neg_d(d: u64) -> Self {
        Self::new(Rat::zero(), Rat::one(), d)
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn conj(&self) -> Self {
        QuadInt { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// `a² + d·b²`.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a + Rat::from_integer(self.d.into()) * &self.b * &self.b
    }

    pub fn is_rational(&self) -> bool {
        Zero::is_zero(&self.b)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        QuadInt { a: &self.a * r, b: &self.b * r, d: self.d }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.d, other.d, "elements of different quadratic fields");
    }
}

impl Add for QuadInt {
    type Output = QuadInt;
    fn add(self, o: QuadInt) -> QuadInt {
        &self + &o
    }
}

impl<'a> Add<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn add(self, o: &QuadInt) -> QuadInt {
        self.check(o);
        QuadInt { a: &self.a + &o.a, b: &self.b + &o.b, d: self.d }
    }
}

impl Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, o: QuadInt) -> QuadInt {
        &self - &o
    }
}

impl<'a> Sub<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn sub(self, o: &QuadInt) -> QuadInt {
        self.check(o);
        QuadInt { a: &self.a - &o.a, b: &self.b - &o.b, d: self.d }
    }
}

impl Mul for QuadInt {
    type Output = QuadInt;
    fn mul(self, o: QuadInt) -> QuadInt {
        &self * &o
    }
}

impl<'a> Mul<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn mul(self, o: &QuadInt) -> QuadInt {
        self.check(o);
        let d = Rat::from_integer(self.d.into());
        QuadInt {
            a: &self.a * &o.a - d * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
            d: self.d,
        }
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Field for QuadInt {
    fn zero_like(&self) -> Self {
        QuadInt::zero(self.d)
    }
    fn one_like(&self) -> Self {
        QuadInt::one(self.d)
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if Zero::is_zero(&n) {
            return None;
        }
        Some(self.conj().scale(&n.recip()))
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        QuadInt::from_rat(r.clone(), self.d)
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format!("sqrt(-{})", self.d);
        match (Zero::is_zero(&self.a), Zero::is_zero(&self.b)) {
            (_, true) => write!(f, "{}", rat_to_string(&self.a)),
            (true, false) => write!(f, "{}*{}", rat_to_string(&self.b), s),
            (false, false) => {
                let sign = if self.b.is_negative() { "-" } else { "+" };
                write!(f, "{} {} {}*{}", rat_to_string(&self.a), sign, rat_to_string(&self.b.abs()), s)
            }
        }
    }
}

impl fmt::Debug for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn squarefree() {
        assert!(is_squarefree(1));
        assert!(is_squarefree(3));
        assert!(!is_squarefree(4));
        assert!(!is_squarefree(12));
        assert!(!is_squarefree(0));
    }

    #[test]
    fn sqrt_squares_to_minus_d() {
        let s = QuadInt::sqrt_neg_d(3);
        assert_eq!(&s * &s, QuadInt::from_rat(rat(-3, 1), 3));
    }

    #[test]
    fn inverse_and_norm() {
        let x = QuadInt::new(rat(1, 2), rat(-3, 4), 7);
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, QuadInt::one(7));
        assert_eq!(x.norm(), rat(1, 4) + rat(7 * 9, 16));
        assert!(QuadInt::zero(7).inv().is_none());
    }

    #[test]
    #[should_panic]
    fn mixed_fields_panic() {
        let _ = QuadInt::one(1) + QuadInt::one(3);
    }
}
