//! Exact scalar types.
//!
//! Every computation in this crate is exact, so the scalar trait is only
//! implemented for rationals over an integer type. Lattice bases, pairings
//! and parameter values are all generic over [`Scalar`].

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Integer ring underlying a [`Scalar`].
pub trait ScalarInt:
    Integer
    + Signed
    + Clone
    + Hash
    + Debug
    + Display
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<I> ScalarInt for I where
    I: Integer
        + Signed
        + Clone
        + Hash
        + Debug
        + Display
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// An exact ordered field of fractions.
pub trait Scalar:
    Num + Signed + Clone + Ord + Hash + Debug + Display + Send + Sync + 'static
{
    type Int: ScalarInt;

    fn from_int(value: Self::Int) -> Self;

    fn from_i64(value: i64) -> Self {
        Self::from_int(Self::Int::from_i64(value).expect("i64 fits every scalar integer type"))
    }

    /// `numer / denom`. Panics when `denom == 0`.
    fn from_fraction(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self::from_i64(numer) / Self::from_i64(denom)
    }

    /// The value as an integer, if it is one.
    fn to_int(&self) -> Option<Self::Int>;

    fn numer_int(&self) -> Self::Int;
    fn denom_int(&self) -> Self::Int;

    fn is_integral(&self) -> bool {
        self.to_int().is_some()
    }

    /// Integer power, negative exponents allowed. Panics on `0^k` with `k < 0`.
    fn powi(&self, exp: i64) -> Self {
        let mut base = if exp < 0 {
            assert!(!self.is_zero(), "zero raised to a negative power");
            Self::one() / self.clone()
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl<I: ScalarInt> Scalar for Ratio<I> {
    type Int = I;

    fn from_int(value: I) -> Self {
        Ratio::from_integer(value)
    }

    fn to_int(&self) -> Option<I> {
        if self.is_integer() {
            Some(self.numer().clone())
        } else {
            None
        }
    }

    fn numer_int(&self) -> I {
        self.numer().clone()
    }

    fn denom_int(&self) -> I {
        self.denom().clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Rational64};

    #[test]
    fn powi_handles_negative_exponents() {
        let x = Rational64::new(3, 5);
        assert_eq!(x.powi(0), Rational64::from_integer(1));
        assert_eq!(x.powi(3), Rational64::new(27, 125));
        assert_eq!(x.powi(-2), Rational64::new(25, 9));
    }

    #[test]
    fn integrality() {
        assert_eq!(BigRational::from_fraction(6, 3).to_int().unwrap(), 2.into());
        assert!(BigRational::from_fraction(1, 2).to_int().is_none());
        assert_eq!(Rational64::from_fraction(-3, 2).denom_int(), 2);
    }
}
