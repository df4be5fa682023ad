//! 0-cycles on the regular locus, Cartier units and their divisors, the
//! Abel–Jacobi map into the generalized Albanese and the resulting decision
//! procedure for rational equivalence.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use crate::curve::{degree_per_component, tuple_to_vector, ComponentId, CurveConfig, Divisor, Place};
use crate::error::{Error, Result};
use crate::funcfield::{format_rat, frac, int, rat_pow, LaurentSeries, Point, Rat, RatFunc};
use crate::infdiv::divisor_json;
use crate::lattice::{integer_kernel, lll_reduce};
use crate::linalg::nullspace;
use crate::motive::{albanese, AlbaneseStructure};
use crate::sample::{random_nonzero_rat, random_rat};

/// A 0-cycle supported on the regular locus.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZeroCycle {
    divisor: Divisor,
}

impl ZeroCycle {
    pub fn new(divisor: Divisor, config: &CurveConfig) -> Result<Self> {
        for (p, _) in divisor.terms() {
            if !config.has_component(&p.component) {
                return Err(Error::UnknownComponent(p.component.0.clone()));
            }
            if config.is_branch(p) {
                return Err(Error::SupportMeetsBranch(p.to_string()));
            }
        }
        Ok(ZeroCycle { divisor })
    }

    /// Parses `"C0:2=+1,C0:3=-1"`; the empty string and `"0"` give the
    /// zero cycle.
    pub fn parse(src: &str, config: &CurveConfig) -> Result<Self> {
        ZeroCycle::new(parse_cycle(src)?, config)
    }

    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    pub fn is_zero(&self) -> bool {
        self.divisor.is_zero()
    }
}

impl fmt::Display for ZeroCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.divisor.fmt(f)
    }
}

pub fn parse_cycle(src: &str) -> Result<Divisor> {
    let src = src.trim();
    let mut d = Divisor::zero();
    if src.is_empty() || src == "0" {
        return Ok(d);
    }
    for item in src.split(',') {
        let bad = || Error::Parse(format!("cycle term '{item}' is not of the form C:x=n"));
        let (place, coeff) = item.trim().rsplit_once('=').ok_or_else(bad)?;
        let (comp, point) = place.split_once(':').ok_or_else(bad)?;
        let coeff: i64 = coeff
            .trim()
            .trim_start_matches('+')
            .parse()
            .map_err(|_| bad())?;
        let point: Point = point.trim().parse()?;
        d.add_term(Place::new(comp.trim(), point), coeff);
    }
    Ok(d)
}

/// A rational function per component; components not listed carry `1`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CartierFunction {
    funcs: BTreeMap<ComponentId, RatFunc>,
}

impl CartierFunction {
    pub fn new<I: IntoIterator<Item = (ComponentId, RatFunc)>>(funcs: I) -> Result<Self> {
        let mut m = BTreeMap::new();
        for (c, f) in funcs {
            if f.is_zero() {
                return Err(Error::UndefinedValuation);
            }
            m.insert(c, f);
        }
        Ok(CartierFunction { funcs: m })
    }

    pub fn on_single_component(f: RatFunc) -> Result<Self> {
        CartierFunction::new([(ComponentId::new("C0"), f)])
    }

    pub fn get(&self, c: &ComponentId) -> RatFunc {
        self.funcs.get(c).cloned().unwrap_or_else(RatFunc::one)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ComponentId, &RatFunc)> {
        self.funcs.iter()
    }

    pub fn scale(&self, c: &ComponentId, k: &Rat) -> Self {
        let mut out = self.clone();
        out.funcs.insert(c.clone(), &self.get(c) * &RatFunc::constant(k.clone()));
        out
    }
}

impl fmt::Display for CartierFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.funcs.iter().map(|(c, g)| format!("{c}: {g}")).collect();
        f.write_str(&parts.join(", "))
    }
}

/// Value and centered tuple test at every singular point.
pub fn is_cartier_unit(h: &CartierFunction, config: &CurveConfig) -> Result<bool> {
    let n = config.truncation();
    for (c, f) in h.iter() {
        if !config.has_component(c) {
            return Err(Error::UnknownComponent(c.0.clone()));
        }
        if f.is_zero() {
            return Err(Error::UndefinedValuation);
        }
    }
    for sp in &config.singular_points {
        let mut value: Option<Rat> = None;
        let mut tuple = Vec::with_capacity(sp.branches.len());
        for q in &sp.branches {
            let f = h.get(&q.component);
            if f.val_at(&q.point)? != 0 {
                return Ok(false);
            }
            let v = f.leading_coefficient_at(&q.point)?;
            match &value {
                Some(w) if *w != v => return Ok(false),
                None => value = Some(v.clone()),
                _ => {}
            }
            let centered = f
                .expand_at(&q.point, n)?
                .sub(&LaurentSeries::monomial(v, 0, n));
            tuple.push(centered);
        }
        if !sp.max_ideal_span().contains(&tuple_to_vector(&tuple, n)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Divisor of a Cartier unit on the regular locus.
pub fn div_c(h: &CartierFunction, config: &CurveConfig) -> Result<ZeroCycle> {
    if !is_cartier_unit(h, config)? {
        return Err(Error::NotCartierUnit(h.to_string()));
    }
    let mut d = Divisor::zero();
    for (c, f) in h.iter() {
        for (p, e) in f.split()?.divisor {
            let place = Place {
                component: c.clone(),
                point: p,
            };
            if !config.is_branch(&place) {
                d.add_term(place, e);
            }
        }
    }
    ZeroCycle::new(d, config)
}

/// Monic-ratio function with divisor `d` on a single component; the
/// coefficient at ∞ is absorbed by the degree difference.
pub fn interpolate_divisor(d: &Divisor) -> Result<RatFunc> {
    let degrees = degree_per_component(d);
    if degrees.len() > 1 {
        return Err(Error::DimensionMismatch(
            "divisor spans several components".into(),
        ));
    }
    if let Some((c, &deg)) = degrees.iter().next() {
        if deg != 0 {
            return Err(Error::NonzeroDegree {
                component: c.0.clone(),
                degree: deg,
            });
        }
    }
    Ok(RatFunc::from_divisor(d.terms().map(|(p, n)| (&p.point, n))))
}

/// A point of `(ℚ*)^t × ℚ^v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelJacobiPoint {
    pub torus: Vec<Rat>,
    pub vectorial: Vec<Rat>,
}

impl AbelJacobiPoint {
    pub fn identity(t: usize, v: usize) -> Self {
        AbelJacobiPoint {
            torus: vec![Rat::one(); t],
            vectorial: vec![Rat::zero(); v],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.torus.iter().all(One::is_one) && self.vectorial.iter().all(Zero::is_zero)
    }

    /// Group law of `G_m^t × G_a^v`.
    pub fn combine(&self, other: &Self) -> Self {
        AbelJacobiPoint {
            torus: self.torus.iter().zip(&other.torus).map(|(a, b)| a * b).collect(),
            vectorial: self
                .vectorial
                .iter()
                .zip(&other.vectorial)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "torus": self.torus.iter().map(format_rat).collect::<Vec<_>>(),
            "vectorial": self.vectorial.iter().map(format_rat).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for AbelJacobiPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.torus.iter().map(format_rat).collect();
        let v: Vec<String> = self.vectorial.iter().map(format_rat).collect();
        write!(f, "({}; {})", t.join(", "), v.join(", "))
    }
}

/// Torus coordinates `∏ f(q)^{ω_q}` and vectorial coordinates
/// `Σ Res_q(δ_q · dlog f)` of a tuple of functions.
pub fn coordinates(f: &CartierFunction, alb: &AlbaneseStructure) -> Result<AbelJacobiPoint> {
    let mut torus = Vec::with_capacity(alb.etale_basis.len());
    for omega in &alb.etale_basis {
        let mut acc = Rat::one();
        for (q, e) in omega.terms() {
            let v = f.get(&q.component).eval_at(&q.point)?;
            if v.is_zero() {
                return Err(Error::SupportMeetsBranch(q.to_string()));
            }
            acc *= rat_pow(&v, e)?;
        }
        torus.push(acc);
    }
    let mut vectorial = Vec::with_capacity(alb.lie_basis.len());
    for delta in &alb.lie_basis {
        let mut acc = Rat::zero();
        for (q, s) in delta.parts() {
            let k = s.valuation().map_or(0, |v| -v).max(0);
            let d = f.get(&q.component).dlog(&q.point, k)?;
            acc += s.mul(&d).residue()?;
        }
        vectorial.push(acc);
    }
    Ok(AbelJacobiPoint { torus, vectorial })
}

/// Per-component interpolating functions of a cycle of degree zero on
/// every component.
pub fn interpolate_cycle(d: &ZeroCycle, config: &CurveConfig) -> Result<CartierFunction> {
    let mut funcs = Vec::new();
    for c in &config.components {
        let part = d.divisor().on_component(c);
        if !part.is_zero() {
            funcs.push((c.clone(), interpolate_divisor(&part)?));
        }
    }
    CartierFunction::new(funcs)
}

pub fn abel_jacobi(
    d: &ZeroCycle,
    config: &CurveConfig,
    alb: &AlbaneseStructure,
) -> Result<AbelJacobiPoint> {
    coordinates(&interpolate_cycle(d, config)?, alb)
}

/// True iff `d` has degree zero on every component and maps to the
/// identity of the generalized Albanese.
pub fn rationally_equivalent(d: &ZeroCycle, config: &CurveConfig) -> Result<bool> {
    if degree_per_component(d.divisor()).values().any(|&n| n != 0) {
        return Ok(false);
    }
    let alb = albanese(config)?;
    Ok(abel_jacobi(d, config, &alb)?.is_identity())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowReport {
    pub cycle: ZeroCycle,
    pub degrees: BTreeMap<ComponentId, i64>,
    pub coordinates: Option<AbelJacobiPoint>,
    pub equivalent: bool,
}

impl ChowReport {
    pub fn to_json(&self) -> Value {
        json!({
            "cycle": divisor_json(self.cycle.divisor()),
            "degrees": self.degrees.iter().map(|(c, n)| (c.0.clone(), json!(n))).collect::<serde_json::Map<_, _>>(),
            "coordinates": self.coordinates.as_ref().map(AbelJacobiPoint::to_json),
            "equivalent_to_zero": self.equivalent,
        })
    }
}

pub fn chow_report(d: &ZeroCycle, config: &CurveConfig) -> Result<ChowReport> {
    let degrees = degree_per_component(d.divisor());
    let coordinates = if degrees.values().all(|&n| n == 0) {
        Some(abel_jacobi(d, config, &albanese(config)?)?)
    } else {
        None
    };
    Ok(ChowReport {
        cycle: d.clone(),
        equivalent: coordinates.as_ref().is_some_and(AbelJacobiPoint::is_identity),
        degrees,
        coordinates,
    })
}

/// Random cycle of degree zero on every component, supported on regular
/// rational places of height at most `h`.
pub fn random_cycle<R: Rng + ?Sized>(config: &CurveConfig, rng: &mut R, h: i64) -> ZeroCycle {
    let mut d = Divisor::zero();
    for c in &config.components {
        let k = rng.gen_range(0..=3);
        let mut total = 0;
        for i in 0..=k {
            let place = loop {
                let point = if rng.gen_ratio(1, 10) {
                    Point::Infinity
                } else {
                    Point::finite(random_rat(rng, h))
                };
                let p = Place { component: c.clone(), point };
                if !config.is_branch(&p) {
                    break p;
                }
            };
            let n = if i == k { -total } else { rng.gen_range(-2..=2) };
            total += n;
            d.add_term(place, n);
        }
    }
    ZeroCycle { divisor: d }
}

// Random Cartier units

const POOL_PRIMES: [u64; 3] = [2, 3, 5];
const POOL_SIZE: usize = 20;

fn is_smooth(n: &BigInt) -> bool {
    let mut n = n.abs();
    if n.is_zero() {
        return false;
    }
    for p in POOL_PRIMES {
        let p = BigInt::from(p);
        while n.is_multiple_of(&p) {
            n /= &p;
        }
    }
    n.is_one()
}

fn valuation(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    while !n.is_zero() && n.is_multiple_of(&p) {
        n /= &p;
        k += 1;
    }
    k
}

fn rat_valuation(r: &Rat, p: u64) -> i64 {
    valuation(r.numer(), p) - valuation(r.denom(), p)
}

/// Small-height rationals `r` on component `c`, away from its branch
/// places, such that every `q - r` with `q` a finite branch place is a
/// product of the pool primes.
fn pool_points(config: &CurveConfig, c: &ComponentId) -> Vec<Rat> {
    let finite: Vec<&Rat> = config
        .branch_places()
        .filter(|q| &q.component == c)
        .filter_map(|q| q.point.as_finite())
        .collect();
    let mut cand: Vec<Rat> = Vec::new();
    for den in 1..=12i64 {
        for num in -24..=24i64 {
            if num.gcd(&den) != 1 {
                continue;
            }
            let r = frac(num, den);
            let ok = finite.iter().all(|q| {
                let d = *q - &r;
                !d.is_zero() && is_smooth(d.numer()) && is_smooth(d.denom())
            });
            if ok {
                cand.push(r);
            }
        }
    }
    cand.sort_by_key(|r| (r.numer().abs().max(r.denom().clone()), r.clone()));
    cand.truncate(POOL_SIZE);
    cand.sort();
    cand
}

type SparseRow = BTreeMap<usize, BigInt>;

fn add(row: &mut SparseRow, col: usize, x: i64) {
    *row.entry(col).or_insert_with(BigInt::zero) += x;
}

/// Coefficient of `u^k` in `log(h/h(q))` contributed by `(t - r)`.
fn log_coefficient(q: &Point, r: &Rat, k: i64) -> Result<Rat> {
    let kk = int(k);
    match q {
        Point::Finite(a) => {
            let sign = if k % 2 == 1 { int(1) } else { int(-1) };
            Ok(sign / (kk * rat_pow(&(a - r), k)?))
        }
        Point::Infinity => Ok(-rat_pow(r, k)? / kk),
    }
}

fn integer_row(row: &[Rat]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect()
}

/// Sampler for Cartier units `h = λ · c_C · ∏ (t - r_i)^{e_i}` per
/// component. The exponents `e_i` and the constants `c_C` (a sign and
/// prime exponents) range over the integer lattice cut out by: unit at the
/// branch places, equal values across the branches of each singular
/// point, and logarithmic expansion inside m̂_{C,p}. The lattice basis is
/// LLL-reduced once so that sampled exponents stay small.
#[derive(Clone, Debug)]
pub struct UnitSampler {
    pools: BTreeMap<ComponentId, Vec<(usize, Rat)>>,
    sign: BTreeMap<ComponentId, usize>,
    prime: BTreeMap<(ComponentId, u64), usize>,
    basis: Vec<Vec<BigInt>>,
}

impl UnitSampler {
    pub fn new(config: &CurveConfig) -> Result<Self> {
        let n = config.truncation();
        let mut count = 0usize;
        let mut next = || {
            count += 1;
            count - 1
        };
        let mut pools = BTreeMap::new();
        let mut sign = BTreeMap::new();
        let mut prime = BTreeMap::new();
        for c in &config.components {
            let pool: Vec<(usize, Rat)> = pool_points(config, c).into_iter().map(|r| (next(), r)).collect();
            pools.insert(c.clone(), pool);
            sign.insert(c.clone(), next());
            for l in POOL_PRIMES {
                prime.insert((c.clone(), l), next());
            }
        }

        let value_rows = |q: &Place| -> (Vec<SparseRow>, SparseRow) {
            let mut prime_rows = Vec::new();
            for l in POOL_PRIMES {
                let mut row = SparseRow::new();
                add(&mut row, prime[&(q.component.clone(), l)], 1);
                if let Point::Finite(a) = &q.point {
                    for (col, r) in &pools[&q.component] {
                        add(&mut row, *col, rat_valuation(&(a - r), l));
                    }
                }
                prime_rows.push(row);
            }
            let mut s = SparseRow::new();
            add(&mut s, sign[&q.component], 1);
            if let Point::Finite(a) = &q.point {
                for (col, r) in &pools[&q.component] {
                    if (a - r).is_negative() {
                        add(&mut s, *col, 1);
                    }
                }
            }
            (prime_rows, s)
        };

        let mut rows: Vec<SparseRow> = Vec::new();
        for sp in &config.singular_points {
            for q in &sp.branches {
                if q.point.is_infinity() {
                    let mut row = SparseRow::new();
                    for (col, _) in &pools[&q.component] {
                        add(&mut row, *col, 1);
                    }
                    rows.push(row);
                }
            }
            let (base_primes, base_sign) = value_rows(&sp.branches[0]);
            for q in &sp.branches[1..] {
                let (qp, mut qs) = value_rows(q);
                for (mut a, b) in qp.into_iter().zip(&base_primes) {
                    for (col, x) in b {
                        *a.entry(*col).or_insert_with(BigInt::zero) -= x;
                    }
                    rows.push(a);
                }
                for (col, x) in &base_sign {
                    *qs.entry(*col).or_insert_with(BigInt::zero) -= x;
                }
                add(&mut qs, next(), -2);
                rows.push(qs);
            }
            let span = sp.max_ideal_span();
            let basis: Vec<Vec<Rat>> = span.basis().cloned().collect();
            for w in nullspace(&basis, span.ambient_dim()) {
                let mut row: BTreeMap<usize, Rat> = BTreeMap::new();
                for (b, q) in sp.branches.iter().enumerate() {
                    for k in 1..=n {
                        let wk = &w[b * n as usize + k as usize - 1];
                        if wk.is_zero() {
                            continue;
                        }
                        for (col, r) in &pools[&q.component] {
                            *row.entry(*col).or_insert_with(Rat::zero) +=
                                wk * log_coefficient(&q.point, r, k)?;
                        }
                    }
                }
                let (keys, vals): (Vec<usize>, Vec<Rat>) = row.into_iter().unzip();
                rows.push(keys.into_iter().zip(integer_row(&vals)).collect());
            }
        }

        let ncols = count;
        let dense: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| {
                let mut v = vec![BigInt::zero(); ncols];
                for (c, x) in r {
                    v[*c] = x.clone();
                }
                v
            })
            .collect();
        let kernel = integer_kernel(&dense, ncols);
        let basis = lll_reduce(&kernel, &frac(3, 4));
        Ok(UnitSampler {
            pools,
            sign,
            prime,
            basis,
        })
    }

    /// Lattice rank; the dimension of the family of units sampled from.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    fn exponent_size(&self, x: &[BigInt]) -> BigInt {
        self.pools
            .values()
            .flatten()
            .map(|(c, _)| x[*c].abs())
            .chain(self.prime.values().map(|c| x[*c].abs()))
            .sum()
    }

    pub fn sample<R: Rng + ?Sized>(&self, config: &CurveConfig, rng: &mut R) -> Result<CartierFunction> {
        let ncols = self.basis.first().map_or(0, Vec::len);
        let bound = BigInt::from(24);
        let mut x = vec![BigInt::zero(); ncols];
        if !self.basis.is_empty() {
            for _ in 0..32 {
                let mut y = vec![BigInt::zero(); ncols];
                for _ in 0..rng.gen_range(1..=3) {
                    let v = self.basis.choose(rng).expect("nonempty basis");
                    let s: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
                    for (yi, vi) in y.iter_mut().zip(v) {
                        *yi += vi * s;
                    }
                }
                if self.exponent_size(&y) <= bound {
                    x = y;
                    break;
                }
            }
        }
        let lambda = random_nonzero_rat(rng, 5);
        let small = |v: &BigInt| v.to_i64().ok_or_else(|| Error::DimensionMismatch("exponent overflow".into()));
        let mut funcs = Vec::new();
        for c in &config.components {
            let mut h = RatFunc::constant(lambda.clone());
            if ncols > 0 {
                if x[self.sign[c]].is_odd() {
                    h = -&h;
                }
                for l in POOL_PRIMES {
                    let e = small(&x[self.prime[&(c.clone(), l)]])?;
                    h = &h * &RatFunc::constant(rat_pow(&int(l as i64), e)?);
                }
                for (col, r) in &self.pools[c] {
                    let e = small(&x[*col])?;
                    if e != 0 {
                        h = &h * &RatFunc::linear(r).pow(e)?;
                    }
                }
            }
            funcs.push((c.clone(), h));
        }
        let h = CartierFunction::new(funcs)?;
        if !is_cartier_unit(&h, config)? {
            return Err(Error::NotCartierUnit(h.to_string()));
        }
        Ok(h)
    }
}

/// One-off sample; build a [`UnitSampler`] to draw many.
pub fn random_cartier_unit<R: Rng + ?Sized>(
    config: &CurveConfig,
    rng: &mut R,
) -> Result<CartierFunction> {
    UnitSampler::new(config)?.sample(config, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::SingularPoint;
    use crate::funcfield::parse_ratfunc;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c0(p: Point) -> Place {
        Place::new("C0", p)
    }

    fn node() -> CurveConfig {
        CurveConfig::new(
            vec![ComponentId::new("C0")],
            vec![SingularPoint::ordinary("p", vec![c0(Point::int(0)), c0(Point::Infinity)])],
            None,
        )
        .validate()
        .unwrap()
    }

    fn cusp() -> CurveConfig {
        let u2 = LaurentSeries::monomial(int(1), 2, 3);
        let u3 = LaurentSeries::monomial(int(1), 3, 3);
        CurveConfig::new(
            vec![ComponentId::new("C0")],
            vec![SingularPoint::explicit("p", vec![c0(Point::int(0))], vec![1], vec![vec![u2], vec![u3]])],
            None,
        )
        .validate()
        .unwrap()
    }

    fn unit(s: &str) -> CartierFunction {
        CartierFunction::on_single_component(parse_ratfunc(s).unwrap()).unwrap()
    }

    #[test]
    fn cartier_units_on_node() {
        let cfg = node();
        assert!(is_cartier_unit(&unit("(t-1)(t-4)/(t-2)^2"), &cfg).unwrap());
        assert!(!is_cartier_unit(&unit("(t-1)/(t+1)"), &cfg).unwrap());
        assert!(is_cartier_unit(&unit("1"), &cfg).unwrap());
        let d = div_c(&unit("(t-1)(t-4)/(t-2)^2"), &cfg).unwrap();
        assert_eq!(
            d.divisor(),
            &Divisor::from_terms([(c0(Point::int(1)), 1), (c0(Point::int(4)), 1), (c0(Point::int(2)), -2)])
        );
        assert!(div_c(&unit("1"), &cfg).unwrap().is_zero());
    }

    #[test]
    fn cartier_units_on_cusp() {
        let cfg = cusp();
        // 1 + t^2 · g is a unit, 1 + t is not
        assert!(is_cartier_unit(&unit("(t^2 + t - 1)/(t - 1)"), &cfg).unwrap());
        assert!(!is_cartier_unit(&unit("1 + t"), &cfg).unwrap());
    }

    #[test]
    fn interpolation_examples() {
        let d = Divisor::from_terms([(c0(Point::int(2)), 1), (c0(Point::int(3)), -1)]);
        assert_eq!(interpolate_divisor(&d).unwrap(), parse_ratfunc("(t-2)/(t-3)").unwrap());
        assert_eq!(interpolate_divisor(&Divisor::zero()).unwrap(), RatFunc::one());
        let d = Divisor::from_terms([
            (c0(Point::int(0)), 1),
            (c0(Point::int(1)), 1),
            (c0(Point::Infinity), -2),
        ]);
        assert_eq!(interpolate_divisor(&d).unwrap(), parse_ratfunc("t(t-1)").unwrap());
        let d = Divisor::from_terms([(c0(Point::int(2)), 1)]);
        assert!(matches!(interpolate_divisor(&d), Err(Error::NonzeroDegree { .. })));
    }

    #[test]
    fn abel_jacobi_examples() {
        let cfg = node();
        let alb = albanese(&cfg).unwrap();
        let d = ZeroCycle::parse("C0:2=+1,C0:3=-1", &cfg).unwrap();
        assert_eq!(abel_jacobi(&d, &cfg, &alb).unwrap().torus, vec![frac(2, 3)]);
        assert!(!rationally_equivalent(&d, &cfg).unwrap());
        let d = ZeroCycle::parse("C0:1=+1,C0:4=+1,C0:2=-2", &cfg).unwrap();
        assert!(rationally_equivalent(&d, &cfg).unwrap());
        assert!(rationally_equivalent(&ZeroCycle::default(), &cfg).unwrap());
        assert!(matches!(
            ZeroCycle::parse("C0:0=1,C0:1=-1", &cfg),
            Err(Error::SupportMeetsBranch(_))
        ));

        let cfg = cusp();
        let alb = albanese(&cfg).unwrap();
        let d = ZeroCycle::parse("C0:2=1,C0:5=-1", &cfg).unwrap();
        let p = abel_jacobi(&d, &cfg, &alb).unwrap();
        assert_eq!(p.vectorial, vec![frac(2 - 5, 10)]);
    }

    #[test]
    fn parse_cycles() {
        let d = parse_cycle("C0:inf=+2, C1:1/2=-2").unwrap();
        assert_eq!(d.coeff(&c0(Point::Infinity)), 2);
        assert_eq!(d.coeff(&Place::new("C1", Point::finite(frac(1, 2)))), -2);
        assert!(parse_cycle("C0=1").is_err());
        assert!(parse_cycle("0").unwrap().is_zero());
    }

    #[test]
    fn random_units_lie_in_kernel() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for cfg in [node(), cusp()] {
            let alb = albanese(&cfg).unwrap();
            for _ in 0..10 {
                let h = random_cartier_unit(&cfg, &mut rng).unwrap();
                let d = div_c(&h, &cfg).unwrap();
                assert!(abel_jacobi(&d, &cfg, &alb).unwrap().is_identity());
            }
        }
    }
}
