//! Chern characters on P^3 and on a plane P^2 inside it.
//!
//! A [`Char3`] stores the coefficients of `1, H, H^2, H^3` where `H` is the
//! hyperplane class and `H^3` is the class of a point. A [`PlaneChar`] stores
//! the coefficients of `1, h, pt` on a plane.
//!
//! Normalizations used throughout:
//!
//! * `ch(O(n)) = e^{nH} = (1, n, n^2/2, n^3/6)`.
//! * `ch(O_L) = (0, 0, 1, -1)` for a line `L`. This follows from
//!   `chi(O_L(n)) = n + 1` and Riemann-Roch (see `homalg::euler_pairing`).
//! * `ch(I_C) = (1, 0, -d, 2d - 1 + g)` for a Cohen-Macaulay curve of degree
//!   `d` and arithmetic genus `g`, from `chi(I_C(n)) = C(n+3,3) - (dn + 1 - g)`.
//! * `i_*(F) = (0, r, a - r/2, b - a/2 + r/6)` for a plane class `(r, a, b)`,
//!   from `i_* O_P(n) = O(n) (1 - e^{-H})`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, half, is_integer, parse_q, q, qf, to_i64, Q};

/// Chern character `(ch0, ch1, ch2, ch3)` on P^3.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Char3 {
    pub ch0: Q,
    pub ch1: Q,
    pub ch2: Q,
    pub ch3: Q,
}

impl Char3 {
    pub fn new(ch0: Q, ch1: Q, ch2: Q, ch3: Q) -> Self {
        Char3 { ch0, ch1, ch2, ch3 }
    }

    pub fn from_ints(ch0: i64, ch1: i64, ch2: i64, ch3: i64) -> Self {
        Char3::new(q(ch0), q(ch1), q(ch2), q(ch3))
    }

    pub fn zero() -> Self {
        Char3::from_ints(0, 0, 0, 0)
    }

    /// `ch(O)`.
    pub fn structure_sheaf() -> Self {
        Char3::from_ints(1, 0, 0, 0)
    }

    /// `e^{tH} = (1, t, t^2/2, t^3/6)` for any rational `t`.
    pub fn exp_hyperplane(t: &Q) -> Self {
        let t2 = t * t;
        let t3 = &t2 * t;
        Char3::new(Q::one(), t.clone(), t2 / q(2), t3 / q(6))
    }

    /// `ch(O(n))`.
    pub fn line_bundle(n: i64) -> Self {
        Char3::exp_hyperplane(&q(n))
    }

    /// `ch(O_Z)` for a zero-dimensional subscheme of length `len`.
    pub fn points(len: i64) -> Self {
        Char3::from_ints(0, 0, 0, len)
    }

    /// `ch(O_L)` for a line.
    pub fn line() -> Self {
        Char3::from_ints(0, 0, 1, -1)
    }

    /// `ch(O_Q) = ch(O) - ch(O(-2))` for a quadric surface.
    pub fn quadric_surface() -> Self {
        Char3::structure_sheaf() - Char3::line_bundle(-2)
    }

    /// The four entries as an array of references, lowest degree first.
    pub fn entries(&self) -> [&Q; 4] {
        [&self.ch0, &self.ch1, &self.ch2, &self.ch3]
    }

    /// True when `ch0, ch1 ∈ Z`, `2 ch2 ∈ Z` and `6 ch3 ∈ Z`.
    pub fn is_lattice(&self) -> bool {
        is_integer(&self.ch0)
            && is_integer(&self.ch1)
            && is_integer(&(&self.ch2 * q(2)))
            && is_integer(&(&self.ch3 * q(6)))
    }

    /// `e^{-beta H} . ch`.
    pub fn twist(&self, beta: &Q) -> Char3 {
        self * &Char3::exp_hyperplane(&-beta)
    }

    /// `ch . e^{nH}`, i.e. tensoring with `O(n)`.
    pub fn tensor_line(&self, n: i64) -> Char3 {
        self * &Char3::line_bundle(n)
    }

    /// Derived dual: odd-degree entries change sign.
    pub fn dual(&self) -> Char3 {
        Char3::new(self.ch0.clone(), -&self.ch1, self.ch2.clone(), -&self.ch3)
    }

    /// Bogomolov-Gieseker discriminant `ch1^2 - 2 ch0 ch2`.
    pub fn discriminant(&self) -> Q {
        &self.ch1 * &self.ch1 - q(2) * &self.ch0 * &self.ch2
    }

    /// Drop `ch3`.
    pub fn truncated(&self) -> [Q; 3] {
        [self.ch0.clone(), self.ch1.clone(), self.ch2.clone()]
    }

    pub fn scale(&self, k: &Q) -> Char3 {
        Char3::new(&self.ch0 * k, &self.ch1 * k, &self.ch2 * k, &self.ch3 * k)
    }
}

impl Default for Char3 {
    fn default() -> Self {
        Char3::zero()
    }
}

/// `ch(I_C)` for a curve of degree `degree >= 1` and arithmetic genus `genus`.
pub fn ideal_sheaf_char(degree: i64, genus: i64) -> Result<Char3> {
    if degree < 1 {
        return Err(Error::domain(format!(
            "curve degree must be >= 1, got {degree}"
        )));
    }
    Ok(Char3::from_ints(1, 0, -degree, 2 * degree - 1 + genus))
}

/// `ch(O_C) = ch(O) - ch(I_C)`.
pub fn curve_sheaf_char(degree: i64, genus: i64) -> Result<Char3> {
    Ok(Char3::structure_sheaf() - ideal_sheaf_char(degree, genus)?)
}

/// Degree and arithmetic genus of a curve with ideal-sheaf character `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HilbertPolynomial {
    pub degree: i64,
    pub genus: i64,
}

impl HilbertPolynomial {
    /// Constant term `1 - g` of `p(t) = d t + 1 - g`.
    pub fn constant_term(&self) -> i64 {
        1 - self.genus
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.degree * t + self.constant_term()
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.constant_term();
        match c.cmp(&0) {
            std::cmp::Ordering::Less => write!(f, "{}t-{}", self.degree, -c),
            std::cmp::Ordering::Equal => write!(f, "{}t", self.degree),
            std::cmp::Ordering::Greater => write!(f, "{}t+{}", self.degree, c),
        }
    }
}

/// Inverse of [`ideal_sheaf_char`].
pub fn hilbert_polynomial(c: &Char3) -> Result<HilbertPolynomial> {
    if !c.ch0.is_one() || !c.ch1.is_zero() {
        return Err(Error::domain(format!(
            "{c} is not of the form (1, 0, -d, e)"
        )));
    }
    let degree = to_i64(&-&c.ch2)
        .filter(|d| *d >= 1)
        .ok_or_else(|| Error::domain(format!("ch2 of {c} is not a negative integer")))?;
    let genus = to_i64(&c.ch3)
        .map(|e| e - 2 * degree + 1)
        .ok_or_else(|| Error::domain(format!("ch3 of {c} is not an integer")))?;
    Ok(HilbertPolynomial { degree, genus })
}

impl Add<&Char3> for &Char3 {
    type Output = Char3;
    fn add(self, o: &Char3) -> Char3 {
        Char3::new(
            &self.ch0 + &o.ch0,
            &self.ch1 + &o.ch1,
            &self.ch2 + &o.ch2,
            &self.ch3 + &o.ch3,
        )
    }
}

impl Sub<&Char3> for &Char3 {
    type Output = Char3;
    fn sub(self, o: &Char3) -> Char3 {
        Char3::new(
            &self.ch0 - &o.ch0,
            &self.ch1 - &o.ch1,
            &self.ch2 - &o.ch2,
            &self.ch3 - &o.ch3,
        )
    }
}

impl Add for Char3 {
    type Output = Char3;
    fn add(self, o: Char3) -> Char3 {
        &self + &o
    }
}

impl Sub for Char3 {
    type Output = Char3;
    fn sub(self, o: Char3) -> Char3 {
        &self - &o
    }
}

impl Neg for &Char3 {
    type Output = Char3;
    fn neg(self) -> Char3 {
        Char3::new(-&self.ch0, -&self.ch1, -&self.ch2, -&self.ch3)
    }
}

impl Neg for Char3 {
    type Output = Char3;
    fn neg(self) -> Char3 {
        -&self
    }
}

/// Product in the graded ring `Q[H]/(H^4)`.
impl Mul<&Char3> for &Char3 {
    type Output = Char3;
    fn mul(self, o: &Char3) -> Char3 {
        let a = self.entries();
        let b = o.entries();
        let mut out: [Q; 4] = Default::default();
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate().take(4 - i) {
                out[i + j] += *ai * *bj;
            }
        }
        let [p0, p1, p2, p3] = out;
        Char3::new(p0, p1, p2, p3)
    }
}

impl fmt::Display for Char3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{})",
            fmt_q(&self.ch0),
            fmt_q(&self.ch1),
            fmt_q(&self.ch2),
            fmt_q(&self.ch3)
        )
    }
}

impl Char3 {
    /// Literal form `r,c,d,e` accepted by [`FromStr`].
    pub fn to_literal(&self) -> String {
        self.entries().map(fmt_q).join(",")
    }
}

impl FromStr for Char3 {
    type Err = Error;

    /// Parses `r,c,d,e` where each entry is `p` or `p/q`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::parse(
                s,
                "expected four comma-separated entries r,c,d,e",
            ));
        }
        let mut vals = Vec::with_capacity(4);
        for p in parts {
            vals.push(parse_q(p)?);
        }
        let [a, b, c, d]: [Q; 4] = vals.try_into().expect("four entries");
        Ok(Char3::new(a, b, c, d))
    }
}

impl Serialize for Char3 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries().map(fmt_q).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Char3 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = <[String; 4]>::deserialize(d)?;
        let mut vals = Vec::with_capacity(4);
        for r in &raw {
            vals.push(parse_q(r).map_err(serde::de::Error::custom)?);
        }
        let [a, b, c, e]: [Q; 4] = vals.try_into().expect("four entries");
        Ok(Char3::new(a, b, c, e))
    }
}

/// Chern character `(r, a, b)` of a sheaf on a plane P^2 (basis `1, h, pt`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneChar {
    pub r: Q,
    pub a: Q,
    pub b: Q,
}

impl PlaneChar {
    pub fn new(r: Q, a: Q, b: Q) -> Self {
        PlaneChar { r, a, b }
    }

    pub fn from_ints(r: i64, a: i64, b: i64) -> Self {
        PlaneChar::new(q(r), q(a), q(b))
    }

    /// `ch(O_P(n)) = (1, n, n^2/2)`.
    pub fn line_bundle(n: i64) -> Self {
        PlaneChar::new(q(1), q(n), qf(n * n, 2))
    }

    /// `ch(I_{Z/P}(n))` for `Z` of length `len`; numerically also the class
    /// of the derived dual `I_Z^∨(n)`, since duality fixes `b`.
    pub fn ideal_of_points(len: i64, n: i64) -> Self {
        let o = PlaneChar::line_bundle(n);
        PlaneChar::new(o.r, o.a, o.b - q(len))
    }

    pub fn dual(&self) -> PlaneChar {
        PlaneChar::new(self.r.clone(), -&self.a, self.b.clone())
    }

    pub fn is_lattice(&self) -> bool {
        is_integer(&self.r) && is_integer(&self.a) && is_integer(&(&self.b * q(2)))
    }

    /// Pushforward along the inclusion of a plane.
    pub fn pushforward(&self) -> Char3 {
        let r = &self.r;
        let a = &self.a;
        Char3::new(
            Q::zero(),
            r.clone(),
            a - r * half(),
            &self.b - a * half() + r / q(6),
        )
    }
}

impl Add<&PlaneChar> for &PlaneChar {
    type Output = PlaneChar;
    fn add(self, o: &PlaneChar) -> PlaneChar {
        PlaneChar::new(&self.r + &o.r, &self.a + &o.a, &self.b + &o.b)
    }
}

impl fmt::Display for PlaneChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{})",
            fmt_q(&self.r),
            fmt_q(&self.a),
            fmt_q(&self.b)
        )
    }
}
