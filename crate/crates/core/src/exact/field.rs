use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Rat;

/// A field whose elements may carry context (a discriminant, a number field),
/// so constants are produced from an existing element rather than from nothing.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_nil(&self) -> bool;
    /// `None` exactly when the element is not invertible.
    fn inv(&self) -> Option<Self>;
    fn from_rat_like(&self, r: &Rat) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

impl Field for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        r.clone()
    }
}
