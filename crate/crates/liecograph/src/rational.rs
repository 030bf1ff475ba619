//! Exact rational scalars.
//!
//! `Rational` is the arbitrary precision ratio from `num-rational`, which keeps
//! every value in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn frac(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn zero() -> Rational {
    Rational::zero()
}

/// `(-1)^exponent` as a rational.
pub fn sign(exponent: i64) -> Rational {
    if exponent.rem_euclid(2) == 0 {
        one()
    } else {
        -one()
    }
}

/// Returns the value as an `i64` if it is an integer that fits.
pub fn to_i64(value: &Rational) -> Option<i64> {
    if !value.is_integer() {
        return None;
    }
    i64::try_from(value.numer()).ok()
}

pub fn abs(value: &Rational) -> Rational {
    value.abs()
}
