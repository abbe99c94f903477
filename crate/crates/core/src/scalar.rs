//! Exact rational scalars and the small amount of combinatorics built on them.
//!
//! Every value that appears in a sum, a polynomial coefficient or a guard
//! denominator is an [`ExactScalar`]. `BigRational` keeps its values reduced
//! after each operation, so structural equality is value equality.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;

/// Arbitrary-precision rational in lowest terms with a positive denominator.
pub type ExactScalar = BigRational;

pub fn int(v: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> ExactScalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_bigint(v: BigInt) -> ExactScalar {
    BigRational::from_integer(v)
}

/// `x^e` for a possibly negative exponent. `0^0 = 1`.
///
/// Panics on `0^e` with `e < 0`; callers guard denominators before raising.
pub fn pow(x: &ExactScalar, e: i64) -> ExactScalar {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        assert!(!x.is_zero(), "zero raised to a negative power");
        num_traits::pow(x.recip(), e.unsigned_abs() as usize)
    }
}

/// `n^e` for a non-negative integer base, with `0^0 = 1`.
pub fn upow(n: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(n), e as usize)
}

/// Binomial coefficient via the multiplicative formula; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `(-1)^k`.
pub fn sign(k: i64) -> i64 {
    if k.is_even() {
        1
    } else {
        -1
    }
}

/// Parses an optionally-signed integer or `integer/positive-integer`.
pub fn parse_rational(text: &str) -> Result<ExactScalar, Error> {
    let bad = || Error::ParseRational(text.to_string());
    let s = text.trim();
    let parse_int = |t: &str| -> Result<BigInt, Error> {
        let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        BigInt::from_str(t).map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(from_bigint(parse_int(s)?)),
        Some((num, den)) => {
            if !den.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
    }
}

/// Renders `num/den` in lowest terms, or just `num` when the denominator is 1.
pub fn format_rational(x: &ExactScalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Serde adapter: rationals cross the JSON boundary as `"num/den"` strings.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &ExactScalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ExactScalar, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}
