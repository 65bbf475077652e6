//! The coefficient field abstraction.
//!
//! Everything in this crate that needs exact linear solving is written
//! against [`ExactField`]; [`Rat`] (arbitrary-precision rationals) is the
//! canonical instance used by the parser, the JSON formats and the CLI.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational numbers, the default coefficient field.
pub type Rat = BigRational;

/// An exact field: arithmetic never rounds, equality is decidable.
///
/// `Div` is only required to be correct for nonzero divisors.
pub trait ExactField:
    Clone
    + PartialEq
    + Eq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + 'static
{
    fn from_i64(v: i64) -> Self;

    /// `num / den`; `den` must be nonzero.
    fn from_fraction(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    // By-reference arithmetic hooks so that big-integer backends can avoid
    // cloning both operands on every ring operation.
    fn add_ref(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
    fn div_ref(&self, other: &Self) -> Self {
        self.clone() / other.clone()
    }
    fn neg_ref(&self) -> Self {
        -self.clone()
    }
}

impl ExactField for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_ref(&self, other: &Self) -> Self {
        self / other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

/// Shorthand for `Rat` literals in tests and examples.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::from_fraction(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_constructor_reduces() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(-3, -3), rat(1, 1));
        assert!(rat(0, 5).is_zero());
    }

    #[test]
    fn ref_ops_agree_with_owned() {
        let a = rat(3, 2);
        let b = rat(-5, 3);
        assert_eq!(a.add_ref(&b), a.clone() + b.clone());
        assert_eq!(a.sub_ref(&b), a.clone() - b.clone());
        assert_eq!(a.mul_ref(&b), a.clone() * b.clone());
        assert_eq!(a.div_ref(&b), a.clone() / b.clone());
        assert_eq!(a.neg_ref(), -a);
    }
}
