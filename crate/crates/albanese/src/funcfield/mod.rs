//! Exact arithmetic on the projective line over ℚ: rationals, polynomials,
//! rational functions, truncated Laurent series, valuations, residues and
//! logarithmic differentials.

mod parse;
mod poly;
pub(crate) mod rat;
mod ratfunc;
mod series;

pub use parse::parse_ratfunc;
pub use poly::{Poly, SplitPoly};
pub use rat::{format_rat, frac, height, int, parse_rat, rat_pow, Point, Rat};
pub use ratfunc::{RatFunc, SplitFunc};
pub use series::LaurentSeries;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg;

pub fn val_at(f: &RatFunc, p: &Point) -> Result<i64> {
    f.val_at(p)
}

pub fn expand_at(f: &RatFunc, p: &Point, n: i64) -> Result<LaurentSeries> {
    f.expand_at(p, n)
}

pub fn residue(s: &LaurentSeries) -> Result<Rat> {
    s.residue()
}

pub fn dlog(f: &RatFunc, p: &Point, n: i64) -> Result<LaurentSeries> {
    f.dlog(p, n)
}

/// Residue at `p` of the differential `g · dt`. At ∞ this is the residue of
/// `-s⁻² g(1/s) ds`.
pub fn residue_of_differential(g: &RatFunc, p: &Point) -> Result<Rat> {
    if g.is_zero() {
        return Ok(Rat::zero());
    }
    match p {
        Point::Finite(_) => g.expand_at(p, -1)?.residue(),
        Point::Infinity => {
            let e = g.expand_at(p, 1)?;
            let dt = LaurentSeries::monomial(-int(1), -2, i64::MAX / 4);
            e.mul(&dt).residue()
        }
    }
}

/// Multiplication-by-`g` matrix on ℚ[t]/(m) in the basis 1, t, …, t^{d-1}.
fn multiplication_matrix(g: &RatFunc, modulus: &Poly) -> Result<linalg::Matrix> {
    let m = modulus.monic();
    let d = m.degree().ok_or(Error::DivisionByZero)?;
    let (gcd, inv, _) = g.den().ext_gcd(&m);
    if gcd.degree() != Some(0) {
        return Err(Error::DivisionByZero);
    }
    let e = (g.num() * &inv).rem(&m)?;
    let mut cols = Vec::with_capacity(d);
    let mut cur = e;
    for _ in 0..d {
        cols.push((0..d).map(|i| cur.coeff(i)).collect::<Vec<_>>());
        cur = (&cur * &Poly::t()).rem(&m)?;
    }
    Ok((0..d)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect())
}

/// Σ g(α) over the roots α of `modulus`, counted with multiplicity, computed
/// as a trace on ℚ[t]/(modulus); the roots need not be rational.
pub fn sum_over_roots(g: &RatFunc, modulus: &Poly) -> Result<Rat> {
    if modulus.degree() == Some(0) {
        return Ok(Rat::zero());
    }
    let mm = multiplication_matrix(g, modulus)?;
    Ok((0..mm.len()).map(|i| mm[i][i].clone()).sum())
}

/// ∏ g(α) over the roots of `modulus` with multiplicity (a norm).
pub fn product_over_roots(g: &RatFunc, modulus: &Poly) -> Result<Rat> {
    if modulus.degree() == Some(0) {
        return Ok(int(1));
    }
    Ok(linalg::det(&multiplication_matrix(g, modulus)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_at_infinity_uses_dt_folding() {
        // Res_∞(dt/t) = -1, Res_∞(dt) = 0, Res_∞(dt/(t(t-1))) = 0
        let inv_t = RatFunc::t().recip().unwrap();
        assert_eq!(residue_of_differential(&inv_t, &Point::Infinity).unwrap(), int(-1));
        assert_eq!(residue_of_differential(&RatFunc::one(), &Point::Infinity).unwrap(), int(0));
        let g = parse_ratfunc("1/(t(t-1))").unwrap();
        let total: Rat = [Point::int(0), Point::int(1), Point::Infinity]
            .iter()
            .map(|p| residue_of_differential(&g, p).unwrap())
            .sum();
        assert!(total.is_zero());
    }

    #[test]
    fn traces_and_norms_over_irrational_roots() {
        // roots ±√2: Σ (α + 3) = 6, ∏ (α + 3) = 7, Σ 1/α = 0
        let m = Poly::from_ints(&[-2, 0, 1]);
        let g = parse_ratfunc("t + 3").unwrap();
        assert_eq!(sum_over_roots(&g, &m).unwrap(), int(6));
        assert_eq!(product_over_roots(&g, &m).unwrap(), int(7));
        let h = parse_ratfunc("1/t").unwrap();
        assert_eq!(sum_over_roots(&h, &m).unwrap(), int(0));
        assert_eq!(product_over_roots(&h, &m).unwrap(), frac(-1, 2));
    }

    #[test]
    fn trace_counts_multiplicity() {
        let m = Poly::from_ints(&[1, -2, 1]); // (t-1)^2
        let g = parse_ratfunc("t^2 + 1").unwrap();
        assert_eq!(sum_over_roots(&g, &m).unwrap(), int(4));
        assert_eq!(product_over_roots(&g, &m).unwrap(), int(4));
    }
}
