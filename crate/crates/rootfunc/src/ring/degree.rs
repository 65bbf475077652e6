//! Polynomial degrees with a distinguished minus infinity.
//!
//! The zero polynomial has degree [`Degree::NegInfinity`], which compares
//! below every integer. Keeping the convention in the type means degree-bound
//! checks like `deg F ≤ d` need no zero-polynomial special cases anywhere.

use std::cmp::Ordering;
use std::fmt;

/// Total degree of a polynomial: `-∞` for zero, a (possibly large) integer
/// otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    /// Degree of the zero polynomial; below every finite degree.
    NegInfinity,
    Finite(i64),
}

impl Degree {
    /// The finite value, if any.
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    pub fn is_neg_infinity(self) -> bool {
        matches!(self, Degree::NegInfinity)
    }

    /// Degree of a product: `-∞` absorbs.
    pub fn plus(self, other: Degree) -> Degree {
        match (self, other) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }

    /// Shift by an integer; `-∞` stays `-∞`.
    pub fn shifted(self, by: i64) -> Degree {
        match self {
            Degree::NegInfinity => Degree::NegInfinity,
            Degree::Finite(d) => Degree::Finite(d + by),
        }
    }
}

impl From<i64> for Degree {
    fn from(d: i64) -> Self {
        Degree::Finite(d)
    }
}

impl PartialEq<i64> for Degree {
    fn eq(&self, other: &i64) -> bool {
        matches!(self, Degree::Finite(d) if d == other)
    }
}

impl PartialOrd<i64> for Degree {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        match self {
            Degree::NegInfinity => Some(Ordering::Less),
            Degree::Finite(d) => d.partial_cmp(other),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neg_infinity_is_below_everything() {
        assert!(Degree::NegInfinity < Degree::Finite(i64::MIN));
        assert!(Degree::NegInfinity < -1_000_000);
        assert!(Degree::NegInfinity <= 0);
        assert!(!(Degree::NegInfinity >= 0));
    }

    #[test]
    fn arithmetic_absorbs_neg_infinity() {
        assert_eq!(Degree::NegInfinity.plus(Degree::Finite(3)), Degree::NegInfinity);
        assert_eq!(Degree::Finite(2).plus(Degree::Finite(3)), Degree::Finite(5));
        assert_eq!(Degree::NegInfinity.shifted(-1), Degree::NegInfinity);
        assert_eq!(Degree::Finite(2).shifted(-1), Degree::Finite(1));
    }

    #[test]
    fn finite_comparisons() {
        assert!(Degree::Finite(2) <= 2);
        assert!(Degree::Finite(2) < 3);
        assert!(Degree::Finite(2) == 2);
        assert!(Degree::Finite(-4) < 0);
    }
}
