//! Dense univariate polynomials over ℚ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rat::{format_rat, Rat};
use crate::error::{Error, Result};

/// Coefficient vector, index = exponent. The leading coefficient is nonzero;
/// the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

/// Complete factorization into linear factors over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPoly {
    pub lead: Rat,
    /// Distinct roots in increasing order with multiplicities.
    pub roots: Vec<(Rat, u32)>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The coordinate function `t`.
    pub fn t() -> Self {
        Self::new(vec![Rat::zero(), Rat::one()])
    }

    /// `t - a`.
    pub fn linear(a: &Rat) -> Self {
        Self::new(vec![-a.clone(), Rat::one()])
    }

    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; callers must rule out zero
    /// where it matters.
    pub fn deg(&self) -> i64 {
        self.degree().unwrap_or(0) as i64
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d.leading().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        self.div_rem(d).map(|(_, r)| r)
    }

    /// Exact division; errors if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Parse("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic gcd by Euclid over ℚ; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns (g, s, t) with s·self + t·other = g monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Coefficients of `self(a + u)` as a polynomial in `u`.
    pub fn taylor_shift(&self, a: &Rat) -> Poly {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let next = c[j + 1].clone();
                c[j] += next * a;
            }
        }
        Poly::new(c)
    }

    /// `u^n · self(1/u)` for `n ≥ deg`.
    pub fn reversed(&self, n: usize) -> Poly {
        let mut c = vec![Rat::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[n - i] = a.clone();
        }
        Poly::new(c)
    }

    /// Order of vanishing at `a` (multiplicity of the root `a`).
    pub fn order_at(&self, a: &Rat) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::UndefinedValuation);
        }
        let shifted = self.taylor_shift(a);
        Ok(shifted.coeffs.iter().take_while(|c| c.is_zero()).count() as u32)
    }

    /// Primitive integer polynomial proportional to `self`.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// Distinct rational roots in increasing order.
    pub fn rational_roots(&self) -> Vec<Rat> {
        if self.is_constant() {
            return Vec::new();
        }
        let sqfree = self.div_exact(&self.gcd(&self.derivative())).expect("gcd divides");
        let mut roots = Vec::new();
        let mut rest = sqfree;
        if rest.coeff(0).is_zero() {
            roots.push(Rat::zero());
            rest = rest.div_exact(&Poly::t()).expect("t divides");
        }
        roots.extend(padic_roots(&rest.primitive_integer()));
        roots.sort();
        roots
    }

    /// Factors into linear factors over ℚ, or reports the non-split remainder.
    pub fn split(&self) -> Result<SplitPoly> {
        if self.is_zero() {
            return Err(Error::UndefinedValuation);
        }
        let mut rest = self.clone();
        let mut roots = Vec::new();
        for r in self.rational_roots() {
            let lin = Poly::linear(&r);
            let mut mult = 0;
            loop {
                let (q, rem) = rest.div_rem(&lin)?;
                if !rem.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            roots.push((r, mult));
        }
        if !rest.is_constant() {
            return Err(Error::NonSplit(format!(
                "factor {rest} has no rational roots"
            )));
        }
        Ok(SplitPoly {
            lead: rest.leading(),
            roots,
        })
    }
}

impl SplitPoly {
    pub fn degree(&self) -> u32 {
        self.roots.iter().map(|(_, m)| m).sum()
    }
}

/// Rational roots of a squarefree primitive integer polynomial with nonzero
/// constant term: lift simple roots modulo a good prime, then rationally
/// reconstruct and check exactly.
fn padic_roots(a: &[BigInt]) -> Vec<Rat> {
    let n = match a.len().checked_sub(1) {
        Some(n) if n >= 1 => n,
        _ => return Vec::new(),
    };
    if n == 1 {
        return vec![Rat::new(-a[0].clone(), a[1].clone())];
    }
    let lead = &a[n];
    let a0 = &a[0];
    // |p| ≤ |a0| and q ≤ |lead| for every root p/q.
    let bound = a0.abs().max(lead.abs());
    let modulus_floor = &bound * &bound * 2u32 + 1u32;

    let deriv: Vec<BigInt> = (1..=n).map(|i| &a[i] * BigInt::from(i)).collect();
    let mut ell: u64 = 101;
    loop {
        ell = next_prime(ell);
        let l = BigInt::from(ell);
        if (lead % &l).is_zero() {
            ell += 1;
            continue;
        }
        let small: Vec<u64> = a.iter().map(|c| c.mod_floor(&l).to_u64().unwrap()).collect();
        let small_d: Vec<u64> = deriv
            .iter()
            .map(|c| c.mod_floor(&l).to_u64().unwrap())
            .collect();
        let roots_mod: Vec<u64> = (0..ell).filter(|&x| eval_mod(&small, x, ell) == 0).collect();
        if roots_mod.iter().any(|&x| eval_mod(&small_d, x, ell) == 0) {
            ell += 1;
            continue;
        }
        let mut out = Vec::new();
        for r in roots_mod {
            let mut m = l.clone();
            let mut r = BigInt::from(r);
            while m < modulus_floor {
                m = &m * &m;
                let fr = eval_big(a, &r).mod_floor(&m);
                let dr = eval_big(&deriv, &r).mod_floor(&m);
                let inv = match mod_inverse(&dr, &m) {
                    Some(inv) => inv,
                    None => break,
                };
                r = (r - fr * inv).mod_floor(&m);
            }
            if let Some(q) = rational_reconstruct(&r, &m) {
                if eval_rat_int(a, &q).is_zero() {
                    out.push(q);
                }
            }
        }
        return out;
    }
}

fn next_prime(mut n: u64) -> u64 {
    loop {
        if n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d)) {
            return n;
        }
        n += 1;
    }
}

fn eval_mod(c: &[u64], x: u64, l: u64) -> u64 {
    c.iter()
        .rev()
        .fold(0u128, |acc, &ci| (acc * x as u128 + ci as u128) % l as u128) as u64
}

fn eval_big(c: &[BigInt], x: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, ci| acc * x + ci)
}

fn eval_rat_int(c: &[BigInt], x: &Rat) -> Rat {
    c.iter()
        .rev()
        .fold(Rat::zero(), |acc, ci| acc * x + Rat::from_integer(ci.clone()))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Wang's reconstruction with symmetric bounds sqrt(m/2).
fn rational_reconstruct(r: &BigInt, m: &BigInt) -> Option<Rat> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(Rat::new(r1, t1))
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                let s = format_rat(&abs);
                if abs.denom().is_one() || i == 0 {
                    f.write_str(&s)?;
                } else {
                    write!(f, "({s})")?;
                }
                if i > 0 {
                    f.write_str("*")?;
                }
            }
            match i {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}
