//! Scalar types used for edge lengths and for exact linear algebra.
//!
//! Graph code is written against [`Scalar`], which only asks for a total
//! order, hashing and ring operations. Exact rationals are the default for
//! metric data; fixed-precision decimals carry the output of the logarithmic
//! tropicalization map; small unsigned integers serve as edge colours.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::Neg;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// Exact rational numbers, the default edge-length scalar.
pub type Rational = num_rational::BigRational;

/// Arbitrary precision decimals.
pub type Decimal = bigdecimal::BigDecimal;

/// An edge label that can take part in canonical labeling.
pub trait Scalar: Clone + Ord + Hash + Debug + Display + Num + Send + Sync {}

impl<T> Scalar for T where T: Clone + Ord + Hash + Debug + Display + Num + Send + Sync {}

/// A field with exact arithmetic, for rank computations.
pub trait Field: Clone + PartialEq + Num + Neg<Output = Self> + Debug {
    fn from_int(x: i64) -> Self;
}

impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Signed + Debug + From<i64>,
{
    fn from_int(x: i64) -> Self {
        Ratio::from_integer(T::from(x))
    }
}

/// Parse a rational written as `p/q` or as an integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    s.trim().parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(
            parse_rational("2/4"),
            Some(Rational::new(1.into(), 2.into()))
        );
        assert_eq!(parse_rational("3"), Some(Rational::from_integer(3.into())));
        assert_eq!(parse_rational("x"), None);
    }
}
