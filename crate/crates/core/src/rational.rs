//! Arbitrary-precision rationals and a few helpers around them.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact rational number in canonical reduced form.
pub type Rational = num_rational::BigRational;

/// Builds `num/den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `true` iff `0 <= q <= 1`.
pub fn is_unit_interval(q: &Rational) -> bool {
    !q.is_negative() && *q <= Rational::one()
}

/// `true` iff `0 < q <= 1`.
pub fn is_probability(q: &Rational) -> bool {
    q.is_positive() && *q <= Rational::one()
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Scales every value by `scale`, which must clear all denominators.
pub(crate) fn scale_to_integers(values: &[Rational], scale: &BigInt) -> Vec<BigInt> {
    values
        .iter()
        .map(|q| {
            let scaled = q * Rational::from_integer(scale.clone());
            debug_assert!(scaled.is_integer());
            scaled.to_integer()
        })
        .collect()
}

/// Sum of a sequence of rationals.
pub fn sum<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().fold(Rational::zero(), |acc, q| acc + q)
}
