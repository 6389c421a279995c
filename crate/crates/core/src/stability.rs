//! Tilt and Bridgeland central charges on P^3, evaluated exactly.
//!
//! Only the numerical side is implemented: no check that a character lies in
//! the relevant heart, and no Harder-Narasimhan filtrations. Points are stored
//! with `alpha^2` so that apex substitutions (`alpha^2 = radius^2`) stay in Q.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::chern::Char3;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, qf, Q};

/// A point `(alpha, beta, s)` of the stability half-space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabPoint {
    alpha_sq: Q,
    beta: Q,
    s: Q,
}

impl StabPoint {
    /// `(alpha, beta)` with `s = 1`.
    pub fn new(alpha: Q, beta: Q) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::domain("alpha must be positive"));
        }
        Ok(StabPoint {
            alpha_sq: &alpha * &alpha,
            beta,
            s: q(1),
        })
    }

    /// Build from `alpha^2` directly, for points with irrational `alpha`.
    pub fn from_alpha_sq(alpha_sq: Q, beta: Q) -> Result<Self> {
        if !alpha_sq.is_positive() {
            return Err(Error::domain("alpha^2 must be positive"));
        }
        Ok(StabPoint {
            alpha_sq,
            beta,
            s: q(1),
        })
    }

    pub fn with_s(mut self, s: Q) -> Result<Self> {
        if !s.is_positive() {
            return Err(Error::domain("s must be positive"));
        }
        self.s = s;
        Ok(self)
    }

    pub fn alpha_sq(&self) -> &Q {
        &self.alpha_sq
    }

    pub fn beta(&self) -> &Q {
        &self.beta
    }

    pub fn s(&self) -> &Q {
        &self.s
    }
}

/// A complex number with rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChargeValue {
    #[serde(with = "crate::rational::serde_q")]
    pub re: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub im: Q,
}

/// A slope in `Q ∪ {+∞}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Slope {
    Finite(Q),
    PosInf,
}

impl Slope {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Slope::PosInf)
    }

    pub fn finite(&self) -> Option<&Q> {
        match self {
            Slope::Finite(x) => Some(x),
            Slope::PosInf => None,
        }
    }

    fn ratio(num: Q, den: &Q) -> Slope {
        if den.is_zero() {
            Slope::PosInf
        } else {
            Slope::Finite(num / den)
        }
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Slope::Finite(a), Slope::Finite(b)) => a.cmp(b),
            (Slope::Finite(_), Slope::PosInf) => Ordering::Less,
            (Slope::PosInf, Slope::Finite(_)) => Ordering::Greater,
            (Slope::PosInf, Slope::PosInf) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(x) => f.write_str(&fmt_q(x)),
            Slope::PosInf => f.write_str("+inf"),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `Z^tilt = -ch2^β + (α²/2) ch0 + i ch1^β`.
pub fn tilt_charge(c: &Char3, p: &StabPoint) -> ChargeValue {
    let t = c.twist(&p.beta);
    ChargeValue {
        re: -&t.ch2 + &p.alpha_sq * &t.ch0 / q(2),
        im: t.ch1,
    }
}

/// `ν = (ch2^β - (α²/2) ch0) / ch1^β`, or `+∞` when `ch1^β = 0`.
pub fn tilt_slope(c: &Char3, p: &StabPoint) -> Slope {
    let z = tilt_charge(c, p);
    Slope::ratio(-z.re, &z.im)
}

/// `Z = -ch3^β + (s + 1/6) α² ch1^β + i (ch2^β - (α²/2) ch0)`.
pub fn bridgeland_charge(c: &Char3, p: &StabPoint) -> ChargeValue {
    let t = c.twist(&p.beta);
    ChargeValue {
        re: -&t.ch3 + (&p.s + qf(1, 6)) * &p.alpha_sq * &t.ch1,
        im: &t.ch2 - &p.alpha_sq * &t.ch0 / q(2),
    }
}

/// `λ = -Re Z / Im Z`, or `+∞` when `Im Z = 0`.
pub fn bridgeland_slope(c: &Char3, p: &StabPoint) -> Slope {
    let z = bridgeland_charge(c, p);
    Slope::ratio(-z.re, &z.im)
}

/// `Δ = ch1² - 2 ch0 ch2`.
pub fn bg_discriminant(c: &Char3) -> Q {
    c.discriminant()
}

/// `α² ((ch1^β)² - 2 ch0 ch2^β) + 4 (ch2^β)² - 6 ch1^β ch3^β`.
///
/// Non-negative for tilt-semistable objects; the sign is left to the caller.
pub fn bmt_quantity(c: &Char3, p: &StabPoint) -> Q {
    let t = c.twist(&p.beta);
    &p.alpha_sq * t.discriminant() + q(4) * &t.ch2 * &t.ch2 - q(6) * &t.ch1 * &t.ch3
}
