//! Rationals and points of the projective line over ℚ.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n / d`; panics on `d == 0`.
pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Serializes as `a/b`, or `a` when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Integer power with negative exponents allowed for nonzero bases.
pub fn rat_pow(base: &Rat, exp: i64) -> Result<Rat> {
    if exp < 0 && base.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut acc = Rat::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    Ok(if exp < 0 { acc.recip() } else { acc })
}

/// Height of a rational: max(|num|, den).
pub fn height(r: &Rat) -> BigInt {
    let n = r.numer().abs();
    let d = r.denom().clone();
    n.max(d)
}

/// A ℚ-rational point of P¹: a finite coordinate or ∞.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Finite(Rat),
    Infinity,
}

impl Point {
    pub fn finite(r: Rat) -> Self {
        Point::Finite(r)
    }

    pub fn int(n: i64) -> Self {
        Point::Finite(int(n))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn as_finite(&self) -> Option<&Rat> {
        match self {
            Point::Finite(a) => Some(a),
            Point::Infinity => None,
        }
    }
}

// Finite points in numeric order, then ∞.
impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Point::Finite(a), Point::Finite(b)) => a.cmp(b),
            (Point::Finite(_), Point::Infinity) => Ordering::Less,
            (Point::Infinity, Point::Finite(_)) => Ordering::Greater,
            (Point::Infinity, Point::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(a) => f.pad(&format_rat(a)),
            Point::Infinity => f.pad("inf"),
        }
    }
}

impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" | "infinity" => Ok(Point::Infinity),
            other => parse_rat(other).map(Point::Finite),
        }
    }
}
