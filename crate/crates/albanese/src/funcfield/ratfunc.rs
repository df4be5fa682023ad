//! Rational functions on a projective line over ℚ.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rat::{Point, Rat};
use super::series::LaurentSeries;
use crate::error::{Error, Result};

/// `num / den` with `den` monic and coprime to `num`. The zero function is
/// `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

/// A nonzero function whose zeros and poles are all ℚ-rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitFunc {
    /// Leading coefficient of the numerator (the denominator is monic).
    pub constant: Rat,
    /// Order at each finite zero or pole, in increasing point order, then ∞.
    pub divisor: Vec<(Point, i64)>,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g)?;
        let den = den.div_exact(&g)?;
        let lead = den.leading();
        Ok(RatFunc {
            num: num.scale(&lead.recip()),
            den: den.monic(),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn t() -> Self {
        Self::from_poly(Poly::t())
    }

    /// `t - a`.
    pub fn linear(a: &Rat) -> Self {
        Self::from_poly(Poly::linear(a))
    }

    /// Monic product `∏ (t - a)^e` over finite points; entries at ∞ are
    /// ignored since they are determined by the finite part.
    pub fn from_divisor<'a, I>(divisor: I) -> Self
    where
        I: IntoIterator<Item = (&'a Point, i64)>,
    {
        let mut num = Poly::one();
        let mut den = Poly::one();
        for (p, e) in divisor {
            if let Point::Finite(a) = p {
                let lin = Poly::linear(a).pow(e.unsigned_abs() as u32);
                if e > 0 {
                    num = &num * &lin;
                } else {
                    den = &den * &lin;
                }
            }
        }
        Self::new(num, den).expect("monic denominator")
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(RatFunc {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// Order of vanishing at `p`; at ∞ this is `deg den - deg num`.
    pub fn val_at(&self, p: &Point) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::UndefinedValuation);
        }
        match p {
            Point::Finite(a) => {
                Ok(self.num.order_at(a)? as i64 - self.den.order_at(a)? as i64)
            }
            Point::Infinity => Ok(self.den.deg() - self.num.deg()),
        }
    }

    /// Value at `p`; errors at a pole.
    pub fn eval_at(&self, p: &Point) -> Result<Rat> {
        if self.is_zero() {
            return Ok(Rat::zero());
        }
        let v = self.val_at(p)?;
        if v < 0 {
            return Err(Error::DivisionByZero);
        }
        if v > 0 {
            return Ok(Rat::zero());
        }
        self.leading_coefficient_at(p)
    }

    /// Numerator and denominator as polynomials in the local coordinate `u`
    /// at `p`, together with the extra power of `u` coming from ∞.
    fn local_polys(&self, p: &Point) -> (Poly, Poly, i64) {
        match p {
            Point::Finite(a) => (self.num.taylor_shift(a), self.den.taylor_shift(a), 0),
            Point::Infinity => {
                let (dn, dd) = (self.num.deg(), self.den.deg());
                (
                    self.num.reversed(dn as usize),
                    self.den.reversed(dd as usize),
                    dd - dn,
                )
            }
        }
    }

    /// First nonzero coefficient of the expansion at `p`.
    pub fn leading_coefficient_at(&self, p: &Point) -> Result<Rat> {
        if self.is_zero() {
            return Err(Error::UndefinedValuation);
        }
        let (n, d, _) = self.local_polys(p);
        let first = |q: &Poly| q.coeffs().iter().find(|c| !c.is_zero()).cloned().unwrap();
        Ok(first(&n) / first(&d))
    }

    /// Laurent expansion at `p` exact through exponent `n`, in the coordinate
    /// `t - a` at a finite point and `s = 1/t` at ∞.
    pub fn expand_at(&self, p: &Point, n: i64) -> Result<LaurentSeries> {
        if self.is_zero() {
            return Err(Error::UndefinedValuation);
        }
        let (nu, du, shift) = self.local_polys(p);
        let (vn, a) = strip_low(&nu);
        let (vd, b) = strip_low(&du);
        let m = shift + vn - vd;
        let k = n - m;
        if k < 0 {
            return Ok(LaurentSeries::zero(n));
        }
        let q = poly_series(&a, k).div(&poly_series(&b, k))?;
        Ok(LaurentSeries::from_terms(
            q.terms().map(|(e, c)| (e + m, c.clone())),
            n,
        ))
    }

    /// Coefficient series of `df/f` in the local coordinate at `p`, exact
    /// through exponent `n`. Its residue is `val_at(p)`.
    pub fn dlog(&self, p: &Point, n: i64) -> Result<LaurentSeries> {
        if self.is_zero() {
            return Err(Error::UndefinedValuation);
        }
        let (nu, du, shift) = self.local_polys(p);
        let (vn, a) = strip_low(&nu);
        let (vd, b) = strip_low(&du);
        let m = shift + vn - vd;
        let inner = n.max(0);
        let log_deriv = |q: &Poly| -> Result<LaurentSeries> {
            let s = poly_series(q, inner + 1);
            s.derivative().div(&s)
        };
        let pole = LaurentSeries::monomial(Rat::from_integer(m.into()), -1, inner);
        Ok(pole
            .add(&log_deriv(&a)?)
            .sub(&log_deriv(&b)?)
            .truncate(n))
    }

    /// Zeros and poles with orders; fails if num or den does not split over ℚ.
    pub fn split(&self) -> Result<SplitFunc> {
        if self.is_zero() {
            return Err(Error::UndefinedValuation);
        }
        let sn = self.num.split()?;
        let sd = self.den.split()?;
        let mut orders = std::collections::BTreeMap::<Point, i64>::new();
        for (r, m) in sn.roots {
            *orders.entry(Point::Finite(r)).or_default() += m as i64;
        }
        for (r, m) in sd.roots {
            *orders.entry(Point::Finite(r)).or_default() -= m as i64;
        }
        let at_inf = self.den.deg() - self.num.deg();
        if at_inf != 0 {
            orders.insert(Point::Infinity, at_inf);
        }
        Ok(SplitFunc {
            constant: sn.lead,
            divisor: orders.into_iter().filter(|(_, e)| *e != 0).collect(),
        })
    }

    /// Rational substitution `t ↦ g(t)`.
    pub fn compose(&self, g: &RatFunc) -> Result<Self> {
        let eval = |p: &Poly| -> RatFunc {
            p.coeffs()
                .iter()
                .rev()
                .fold(RatFunc::zero(), |acc, c| &(&acc * g) + &RatFunc::constant(c.clone()))
        };
        &eval(&self.num) / &eval(&self.den)
    }
}

fn strip_low(p: &Poly) -> (i64, Poly) {
    let v = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    (v as i64, Poly::new(p.coeffs()[v..].to_vec()))
}

fn poly_series(p: &Poly, prec: i64) -> LaurentSeries {
    LaurentSeries::from_dense(0, p.coeffs().to_vec(), prec)
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominators")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Div for &RatFunc {
    type Output = Result<RatFunc>;
    fn div(self, rhs: &RatFunc) -> Result<RatFunc> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::rat::{frac, int};

    fn t_sq_over_t_minus_1() -> RatFunc {
        (&RatFunc::t().pow(2).unwrap() / &RatFunc::linear(&int(1))).unwrap()
    }

    #[test]
    fn valuations() {
        let f = t_sq_over_t_minus_1();
        assert_eq!(f.val_at(&Point::int(0)).unwrap(), 2);
        assert_eq!(f.val_at(&Point::int(1)).unwrap(), -1);
        assert_eq!(f.val_at(&Point::Infinity).unwrap(), -1);
        assert_eq!(f.val_at(&Point::int(5)).unwrap(), 0);
        assert_eq!(RatFunc::zero().val_at(&Point::int(0)), Err(Error::UndefinedValuation));
    }

    #[test]
    fn expansions() {
        // 1/(t-1) at 0 is -1 - t - t^2 + O(t^3)
        let f = RatFunc::linear(&int(1)).recip().unwrap();
        let e = f.expand_at(&Point::int(0), 2).unwrap();
        assert_eq!(
            e,
            LaurentSeries::from_terms([(0, int(-1)), (1, int(-1)), (2, int(-1))], 2)
        );
        // (t - 1) * e ≡ 1 mod t^3
        let lin = RatFunc::linear(&int(1)).expand_at(&Point::int(0), 2).unwrap();
        assert_eq!(lin.mul(&e), LaurentSeries::one(2));

        let t = RatFunc::t().expand_at(&Point::Infinity, 1).unwrap();
        assert_eq!(t, LaurentSeries::monomial(int(1), -1, 1));

        let one = RatFunc::one().expand_at(&Point::int(3), 0).unwrap();
        assert_eq!(one, LaurentSeries::one(0));
        assert!(RatFunc::zero().expand_at(&Point::int(0), 1).is_err());
    }

    #[test]
    fn expansion_at_shifted_point() {
        let f = t_sq_over_t_minus_1();
        let e = f.expand_at(&Point::int(1), 2).unwrap();
        // t^2/(t-1) = (1+u)^2/u = u^-1 + 2 + u
        assert_eq!(
            e,
            LaurentSeries::from_terms([(-1, int(1)), (0, int(2)), (1, int(1))], 2)
        );
    }

    #[test]
    fn dlog_examples() {
        let d = RatFunc::t().dlog(&Point::int(0), 0).unwrap();
        assert_eq!(d, LaurentSeries::monomial(int(1), -1, 0));
        let d = RatFunc::linear(&int(1)).dlog(&Point::int(0), 1).unwrap();
        assert_eq!(d, LaurentSeries::from_terms([(0, int(-1)), (1, int(-1))], 1));
        let d = RatFunc::constant(frac(7, 3)).dlog(&Point::int(2), 3).unwrap();
        assert!(d.is_zero());
        // at ∞, d log t = -ds/s
        let d = RatFunc::t().dlog(&Point::Infinity, 2).unwrap();
        assert_eq!(d.residue().unwrap(), int(-1));
    }

    #[test]
    fn split_and_divisor_round_trip() {
        let f = t_sq_over_t_minus_1();
        let s = f.split().unwrap();
        assert_eq!(
            s.divisor,
            vec![(Point::int(0), 2), (Point::int(1), -1), (Point::Infinity, -1)]
        );
        let g = RatFunc::from_divisor(s.divisor.iter().map(|(p, e)| (p, *e)));
        assert_eq!(g, f);
    }

    #[test]
    fn eval_at_infinity() {
        let f = (&RatFunc::linear(&int(1)) / &RatFunc::from_poly(Poly::from_ints(&[1, 2]))).unwrap();
        assert_eq!(f.eval_at(&Point::Infinity).unwrap(), frac(1, 2));
        assert!(t_sq_over_t_minus_1().eval_at(&Point::Infinity).is_err());
    }
}
