//! Coefficient scalars.
//!
//! Every computation in the crate is exact, so the scalar trait is only
//! implemented for ratio types. [`crate::Rational`] (arbitrary precision) is the
//! default; `Ratio<i64>` / `Ratio<i128>` work for small fast experiments but
//! may overflow.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// An exact field used for polynomial coefficients.
pub trait Scalar: Clone + Debug + PartialEq + Num + Signed + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// Numerator and denominator in lowest terms, denominator positive.
    fn to_fraction(&self) -> (String, String);

    /// Parse a fraction; the result is normalized to lowest terms.
    fn parse_fraction(num: &str, den: &str) -> Option<Self>;
}

impl<T> Scalar for Ratio<T>
where
    T: Clone
        + Integer
        + Signed
        + FromPrimitive
        + Display
        + FromStr
        + Debug
        + Send
        + Sync
        + 'static,
{
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(T::from_i64(v).expect("integer out of range for scalar type"))
    }

    fn to_fraction(&self) -> (String, String) {
        (self.numer().to_string(), self.denom().to_string())
    }

    fn parse_fraction(num: &str, den: &str) -> Option<Self> {
        let n: T = num.trim().parse().ok()?;
        let d: T = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Ratio::new(n, d))
    }
}

/// `(-1)^k` as a scalar.
pub(crate) fn sign<S: Scalar>(negative: bool) -> S {
    if negative {
        -S::one()
    } else {
        S::one()
    }
}

/// `1 / k!`
pub(crate) fn inv_factorial<S: Scalar>(k: usize) -> S {
    let mut f = S::one();
    for i in 2..=k {
        f = f * S::from_i64(i as i64);
    }
    S::one() / f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn fraction_is_normalized_on_read() {
        let r = Rational::parse_fraction("2", "4").unwrap();
        assert_eq!(r.to_fraction(), ("1".to_string(), "2".to_string()));
        let r = Rational::parse_fraction("3", "-6").unwrap();
        assert_eq!(r.to_fraction(), ("-1".to_string(), "2".to_string()));
        assert!(Rational::parse_fraction("1", "0").is_none());
        assert!(Rational::parse_fraction("x", "1").is_none());
    }

    #[test]
    fn small_ratio_types_work() {
        let a = Ratio::<i64>::from_ratio(1, 3);
        assert_eq!(a + Ratio::<i64>::from_ratio(2, 3), Ratio::from_integer(1));
        assert_eq!(inv_factorial::<Ratio<i64>>(4), Ratio::new(1, 24));
    }
}
