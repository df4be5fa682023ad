//! Truncated Laurent series in a local coordinate `u`.
//!
//! A series knows its coefficients exactly for every exponent up to and
//! including its precision `prec`; nothing is claimed above it. Arithmetic
//! propagates precision the usual way, so a result is never padded with
//! coefficients that were not determined by the inputs.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rat::{format_rat, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    /// Exponent of `coeffs[0]`; meaningless when `coeffs` is empty.
    order: i64,
    /// `coeffs[0]` is nonzero and the last entry is nonzero.
    coeffs: Vec<Rat>,
    prec: i64,
}

impl LaurentSeries {
    /// Builds a series from `(exponent, coefficient)` pairs; terms above `prec`
    /// are dropped and repeated exponents are summed.
    pub fn from_terms<I>(terms: I, prec: i64) -> Self
    where
        I: IntoIterator<Item = (i64, Rat)>,
    {
        let mut map = std::collections::BTreeMap::<i64, Rat>::new();
        for (e, c) in terms {
            if e <= prec {
                *map.entry(e).or_insert_with(Rat::zero) += c;
            }
        }
        map.retain(|_, c| !c.is_zero());
        let Some((&lo, _)) = map.iter().next() else {
            return Self::zero(prec);
        };
        let hi = *map.keys().next_back().unwrap();
        let mut coeffs = vec![Rat::zero(); (hi - lo + 1) as usize];
        for (e, c) in map {
            coeffs[(e - lo) as usize] = c;
        }
        LaurentSeries {
            order: lo,
            coeffs,
            prec,
        }
    }

    /// Series from a dense coefficient run starting at exponent `order`.
    pub fn from_dense(order: i64, coeffs: Vec<Rat>, prec: i64) -> Self {
        Self::from_terms(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(i, c)| (order + i as i64, c)),
            prec,
        )
    }

    pub fn zero(prec: i64) -> Self {
        LaurentSeries {
            order: prec + 1,
            coeffs: Vec::new(),
            prec,
        }
    }

    pub fn one(prec: i64) -> Self {
        Self::monomial(Rat::one(), 0, prec)
    }

    pub fn monomial(c: Rat, e: i64, prec: i64) -> Self {
        Self::from_terms([(e, c)], prec)
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.order)
    }

    /// Valuation, or `prec + 1` for a series that is zero to known precision.
    fn low(&self) -> i64 {
        self.valuation().unwrap_or(self.prec + 1)
    }

    pub fn leading_coefficient(&self) -> Option<&Rat> {
        self.coeffs.first()
    }

    /// Coefficient of `u^e`.
    pub fn coeff(&self, e: i64) -> Result<Rat> {
        if e > self.prec {
            return Err(Error::InsufficientPrecision {
                needed: e,
                available: self.prec,
            });
        }
        Ok(self.coeff_unchecked(e))
    }

    fn coeff_unchecked(&self, e: i64) -> Rat {
        if e < self.order {
            return Rat::zero();
        }
        self.coeffs
            .get((e - self.order) as usize)
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.order + i as i64, c))
    }

    /// Forgets everything above `prec`.
    pub fn truncate(&self, prec: i64) -> Self {
        let prec = prec.min(self.prec);
        Self::from_terms(self.terms().map(|(e, c)| (e, c.clone())), prec)
    }

    /// The part with negative exponents, as an exact finite sum.
    pub fn principal_part(&self) -> Vec<(i64, Rat)> {
        self.terms()
            .filter(|(e, _)| *e < 0)
            .map(|(e, c)| (e, c.clone()))
            .collect()
    }

    /// Coefficient of `u^{-1}`, read as the residue of `self · du`.
    pub fn residue(&self) -> Result<Rat> {
        self.coeff(-1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        Self::from_terms(
            self.terms()
                .chain(other.terms())
                .map(|(e, c)| (e, c.clone())),
            prec,
        )
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_terms(self.terms().map(|(e, a)| (e, a * c)), self.prec)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = (self.prec + other.low()).min(other.prec + self.low());
        let mut acc = std::collections::BTreeMap::<i64, Rat>::new();
        for (ea, a) in self.terms() {
            for (eb, b) in other.terms() {
                if ea + eb <= prec {
                    *acc.entry(ea + eb).or_insert_with(Rat::zero) += a * b;
                }
            }
        }
        Self::from_terms(acc, prec)
    }

    /// Multiplicative inverse; the series must have a known nonzero term.
    pub fn inverse(&self) -> Result<Self> {
        let v = self.valuation().ok_or(Error::DivisionByZero)?;
        let rel = self.prec - v;
        let c_inv = self.coeffs[0].recip();
        let mut w: Vec<Rat> = Vec::with_capacity(rel as usize + 1);
        for k in 0..=rel {
            if k == 0 {
                w.push(c_inv.clone());
                continue;
            }
            let mut s = Rat::zero();
            for j in 1..=k {
                let b = self.coeff_unchecked(v + j);
                if !b.is_zero() {
                    s += b * &w[(k - j) as usize];
                }
            }
            w.push(-s * &c_inv);
        }
        Ok(Self::from_dense(-v, w, -v + rel))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Formal derivative `d/du`.
    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|(e, _)| *e != 0)
                .map(|(e, c)| (e - 1, c * Rat::from_integer(e.into()))),
            self.prec - 1,
        )
    }

    fn require_positive_order(&self, what: &str) -> Result<()> {
        if self.low() < 1 {
            return Err(Error::Parse(format!(
                "{what} needs a series with positive leading exponent"
            )));
        }
        Ok(())
    }

    /// `exp(self)` for a series with positive leading exponent.
    pub fn exp(&self) -> Result<Self> {
        self.require_positive_order("exp")?;
        let p = self.prec.max(0);
        let mut e: Vec<Rat> = vec![Rat::one()];
        for n in 1..=p {
            let mut s = Rat::zero();
            for k in 1..=n {
                let u = self.coeff_unchecked(k);
                if !u.is_zero() {
                    s += u * Rat::from_integer(k.into()) * &e[(n - k) as usize];
                }
            }
            e.push(s / Rat::from_integer(n.into()));
        }
        Ok(Self::from_dense(0, e, self.prec))
    }

    /// `log(1 + self)` for a series with positive leading exponent.
    pub fn log1p(&self) -> Result<Self> {
        self.require_positive_order("log1p")?;
        let p = self.prec.max(0);
        let mut l: Vec<Rat> = vec![Rat::zero()];
        for n in 1..=p {
            let mut s = self.coeff_unchecked(n) * Rat::from_integer(n.into());
            for k in 1..n {
                let u = self.coeff_unchecked(n - k);
                if !u.is_zero() {
                    s -= Rat::from_integer(k.into()) * &l[k as usize] * u;
                }
            }
            l.push(s / Rat::from_integer(n.into()));
        }
        Ok(Self::from_dense(0, l, self.prec))
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let abs = c.abs();
            if e == 0 || !abs.is_one() {
                f.write_str(&format_rat(&abs))?;
                if e != 0 {
                    f.write_str("*")?;
                }
            }
            match e {
                0 => {}
                1 => f.write_str("u")?,
                _ => write!(f, "u^{e}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(u^{})", self.prec + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::rat::{frac, int};

    fn s(terms: &[(i64, i64)], prec: i64) -> LaurentSeries {
        LaurentSeries::from_terms(terms.iter().map(|&(e, c)| (e, int(c))), prec)
    }

    #[test]
    fn residues() {
        assert_eq!(s(&[(-1, 1)], 3).residue().unwrap(), int(1));
        assert_eq!(s(&[(-2, 1)], 3).residue().unwrap(), int(0));
        let mixed = LaurentSeries::from_terms([(-1, frac(3, 2)), (0, int(5)), (1, int(1))], 2);
        assert_eq!(mixed.residue().unwrap(), frac(3, 2));
        assert!(matches!(
            s(&[(-3, 1)], -2).residue(),
            Err(Error::InsufficientPrecision { needed: -1, available: -2 })
        ));
    }

    #[test]
    fn product_precision() {
        // (u^-1 + O(u^2)) * (u + u^2 + O(u^4)) is known through u^3
        let a = s(&[(-1, 1)], 2);
        let b = s(&[(1, 1), (2, 1)], 3);
        let p = a.mul(&b);
        assert_eq!(p.prec(), 2);
        assert_eq!(p.coeff(0).unwrap(), int(1));
        assert_eq!(p.coeff(1).unwrap(), int(1));
    }

    #[test]
    fn inverse_of_one_minus_u() {
        let a = s(&[(0, -1), (1, 1)], 5);
        let inv = a.inverse().unwrap();
        assert_eq!(inv.prec(), 5);
        for e in 0..=5 {
            assert_eq!(inv.coeff(e).unwrap(), int(-1));
        }
        assert_eq!(a.mul(&inv), LaurentSeries::one(5));
    }

    #[test]
    fn inverse_shifts_order() {
        let a = s(&[(2, 2), (3, 1)], 6);
        let inv = a.inverse().unwrap();
        assert_eq!(inv.valuation(), Some(-2));
        assert_eq!(inv.prec(), 2);
        assert_eq!(a.mul(&inv).truncate(0), LaurentSeries::one(0));
    }

    #[test]
    fn exp_log_known_values() {
        let u = s(&[(1, 1)], 4);
        let e = u.exp().unwrap();
        let expected = [int(1), int(1), frac(1, 2), frac(1, 6), frac(1, 24)];
        for (k, c) in expected.iter().enumerate() {
            assert_eq!(&e.coeff(k as i64).unwrap(), c);
        }
        let l = u.log1p().unwrap();
        let expected = [int(0), int(1), frac(-1, 2), frac(1, 3), frac(-1, 4)];
        for (k, c) in expected.iter().enumerate() {
            assert_eq!(&l.coeff(k as i64).unwrap(), c);
        }
        assert!(s(&[(0, 1)], 3).exp().is_err());
    }

    #[test]
    fn derivative_drops_precision() {
        let a = s(&[(-2, 1), (0, 7), (3, 2)], 3);
        let d = a.derivative();
        assert_eq!(d.prec(), 2);
        assert_eq!(d.coeff(-3).unwrap(), int(-2));
        assert_eq!(d.coeff(2).unwrap(), int(6));
        assert_eq!(d.coeff(-1).unwrap(), int(0));
    }

    #[test]
    fn display() {
        assert_eq!(s(&[(0, -1), (1, -1), (2, -1)], 2).to_string(), "-1 - u - u^2 + O(u^3)");
        assert_eq!(LaurentSeries::zero(0).to_string(), "0 + O(u^1)");
    }
}
