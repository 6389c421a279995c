//! Exact rational helpers shared by every module.
//!
//! All arithmetic runs on [`Q`], an arbitrary-precision rational. Values cross
//! text boundaries (CLI, JSON) in the grammar `p` or `p/q`, with an optional
//! leading minus on `p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `num/den`; panics on a zero denominator, so only use with literals.
pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_integer(x: &Q) -> bool {
    x.is_integer()
}

/// The value as `i64` when it is an integer that fits.
pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Smallest integer `>= x`.
pub fn ceil_int(x: &Q) -> BigInt {
    x.ceil().to_integer()
}

/// Largest integer `<= x`.
pub fn floor_int(x: &Q) -> BigInt {
    x.floor().to_integer()
}

pub fn half() -> Q {
    qf(1, 2)
}

/// Parse `p` or `p/q` (decimal digits, optional leading minus on `p`).
pub fn parse_q(token: &str) -> Result<Q> {
    let s = token.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = parse_int(num, true).ok_or_else(|| Error::parse(token, "expected p or p/q"))?;
    let den = match den {
        Some(d) => parse_int(d, false).ok_or_else(|| Error::parse(token, "bad denominator"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::parse(token, "zero denominator"));
    }
    Ok(Q::new(num, den))
}

fn parse_int(s: &str, allow_minus: bool) -> Option<BigInt> {
    let digits = match s.strip_prefix('-') {
        Some(rest) if allow_minus => rest,
        Some(_) => return None,
        None => s,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Canonical text form: `p` for integers, `p/q` otherwise (reduced, `q > 0`).
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Binomial coefficient `C(n, k)` for integer `n` (zero when `n < k`, and for
/// negative `n` uses the polynomial extension `n(n-1)...(n-k+1)/k!`).
pub fn binomial(n: i64, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k as i64 {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num.div_floor(&den)
}

/// Serde adapter: a rational as a string in the `p/q` grammar.
pub mod serde_q {
    use super::{fmt_q, parse_q, Q};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}
