//! Local symbols on the projective line for `G_m` (tame symbol) and `G_a`
//! (residue symbol), reciprocity, and modulus checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::funcfield::{
    format_rat, int, product_over_roots, rat_pow, sum_over_roots, Point, Poly, Rat, RatFunc,
};
use crate::sample::random_poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolTag {
    Gm,
    Ga,
}

impl SymbolTag {
    pub fn identity(&self) -> Rat {
        match self {
            SymbolTag::Gm => Rat::one(),
            SymbolTag::Ga => Rat::zero(),
        }
    }

    pub fn combine(&self, a: &Rat, b: &Rat) -> Rat {
        match self {
            SymbolTag::Gm => a * b,
            SymbolTag::Ga => a + b,
        }
    }
}

impl fmt::Display for SymbolTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymbolTag::Gm => "gm",
            SymbolTag::Ga => "ga",
        })
    }
}

impl FromStr for SymbolTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gm" | "g_m" => Ok(SymbolTag::Gm),
            "ga" | "g_a" => Ok(SymbolTag::Ga),
            _ => Err(Error::Parse(format!("unknown group tag '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolValue {
    pub tag: SymbolTag,
    pub value: Rat,
}

impl SymbolValue {
    pub fn new(tag: SymbolTag, value: Rat) -> Result<Self> {
        if tag == SymbolTag::Gm && value.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(SymbolValue { tag, value })
    }

    pub fn is_identity(&self) -> bool {
        self.value == self.tag.identity()
    }
}

impl fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rat(&self.value))
    }
}

/// Effective divisor with positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Modulus(BTreeMap<Point, u32>);

impl Modulus {
    pub fn new<I: IntoIterator<Item = (Point, u32)>>(terms: I) -> Result<Self> {
        let mut m = BTreeMap::new();
        for (p, n) in terms {
            if n == 0 {
                return Err(Error::Parse(format!("multiplicity at {p} must be positive")));
            }
            if m.insert(p.clone(), n).is_some() {
                return Err(Error::DuplicatePlace(p.to_string()));
            }
        }
        Ok(Modulus(m))
    }

    pub fn zero() -> Self {
        Modulus::default()
    }

    pub fn get(&self, p: &Point) -> u32 {
        self.0.get(p).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = &Point> {
        self.0.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Point, u32)> {
        self.0.iter().map(|(p, n)| (p, *n))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `(-1)^{mn} ψ^m / f^n` at `p`, with `m = val_p(f)` and `n = val_p(ψ)`.
pub fn tame_symbol(psi: &RatFunc, f: &RatFunc, p: &Point) -> Result<Rat> {
    if psi.is_zero() || f.is_zero() {
        return Err(Error::UndefinedValuation);
    }
    let m = f.val_at(p)?;
    let n = psi.val_at(p)?;
    let sign = if (m * n).rem_euclid(2) == 0 { int(1) } else { int(-1) };
    Ok(sign * rat_pow(&psi.leading_coefficient_at(p)?, m)?
        / rat_pow(&f.leading_coefficient_at(p)?, n)?)
}

/// `Res_p(ψ · df/f)`.
pub fn residue_symbol(psi: &RatFunc, f: &RatFunc, p: &Point) -> Result<Rat> {
    if f.is_zero() {
        return Err(Error::UndefinedValuation);
    }
    if psi.is_zero() || f.is_constant() {
        return Ok(Rat::zero());
    }
    let v = psi.val_at(p)?;
    let lhs = psi.expand_at(p, 1)?;
    let rhs = f.dlog(p, (1 - v).max(1))?;
    lhs.mul(&rhs).residue()
}

pub fn local_symbol(tag: SymbolTag, psi: &RatFunc, f: &RatFunc, p: &Point) -> Result<SymbolValue> {
    let value = match tag {
        SymbolTag::Gm => tame_symbol(psi, f, p)?,
        SymbolTag::Ga => residue_symbol(psi, f, p)?,
    };
    SymbolValue::new(tag, value)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReciprocityReport {
    pub tag: SymbolTag,
    pub values: Vec<(Point, Rat)>,
    pub aggregate: Rat,
}

impl ReciprocityReport {
    pub fn holds(&self) -> bool {
        self.aggregate == self.tag.identity()
    }

    pub fn to_json(&self) -> Value {
        let values: serde_json::Map<String, Value> = self
            .values
            .iter()
            .map(|(p, v)| (p.to_string(), Value::String(format_rat(v))))
            .collect();
        json!({
            "tag": self.tag.to_string(),
            "values": values,
            "aggregate": format_rat(&self.aggregate),
            "holds": self.holds(),
        })
    }
}

fn support(f: &RatFunc) -> Result<BTreeSet<Point>> {
    Ok(f.split()?.divisor.into_iter().map(|(p, _)| p).collect())
}

/// Symbols at every zero and pole of `ψ` and `f` and at ∞, with their
/// product (`G_m`) or sum (`G_a`). Both functions must split over ℚ.
pub fn reciprocity_check(psi: &RatFunc, f: &RatFunc, tag: SymbolTag) -> Result<ReciprocityReport> {
    if f.is_zero() || (tag == SymbolTag::Gm && psi.is_zero()) {
        return Err(Error::UndefinedValuation);
    }
    let mut places = support(f)?;
    if !psi.is_zero() {
        places.extend(support(psi)?);
    }
    places.insert(Point::Infinity);
    let mut values = Vec::with_capacity(places.len());
    let mut aggregate = tag.identity();
    for p in places {
        let v = local_symbol(tag, psi, f, &p)?.value;
        aggregate = tag.combine(&aggregate, &v);
        values.push((p, v));
    }
    Ok(ReciprocityReport {
        tag,
        values,
        aggregate,
    })
}

/// `ψ(div f)` for `f = a/b` with `a(α), b(β)` avoiding the poles of `ψ`,
/// and `f` a unit at ∞. Roots need not be rational.
fn apply_to_divisor(psi: &RatFunc, a: &Poly, b: &Poly, tag: SymbolTag) -> Result<Rat> {
    match tag {
        SymbolTag::Gm => Ok(product_over_roots(psi, a)? / product_over_roots(psi, b)?),
        SymbolTag::Ga => Ok(sum_over_roots(psi, a)? - sum_over_roots(psi, b)?),
    }
}

/// Remove all factors `(t - s)` for finite `s` in the modulus support.
fn strip_support(mut p: Poly, m: &Modulus) -> Result<Poly> {
    for s in m.support() {
        if let Point::Finite(a) = s {
            let k = p.order_at(a)?;
            p = p.div_exact(&Poly::linear(a).pow(k))?;
        }
    }
    Ok(p)
}

fn check_regular(psi: &RatFunc, m: &Modulus, tag: SymbolTag) -> Result<()> {
    let offending = |what: &str| Error::NotRegularOutsideModulus(format!("{what} of {psi}"));
    if psi.is_zero() {
        return match tag {
            SymbolTag::Gm => Err(Error::UndefinedValuation),
            SymbolTag::Ga => Ok(()),
        };
    }
    if !strip_support(psi.den().clone(), m)?.is_constant() {
        return Err(offending("finite pole"));
    }
    let at_inf = psi.val_at(&Point::Infinity)?;
    if at_inf < 0 && m.get(&Point::Infinity) == 0 {
        return Err(offending("pole at inf"));
    }
    if tag == SymbolTag::Gm {
        if !strip_support(psi.num().clone(), m)?.is_constant() {
            return Err(offending("finite zero"));
        }
        if at_inf > 0 && m.get(&Point::Infinity) == 0 {
            return Err(offending("zero at inf"));
        }
    }
    Ok(())
}

/// Local sufficiency criterion at each point of the support.
pub fn modulus_criterion(psi: &RatFunc, m: &Modulus, tag: SymbolTag) -> Result<bool> {
    check_regular(psi, m, tag)?;
    if tag == SymbolTag::Gm || psi.is_zero() {
        return Ok(true);
    }
    for (s, n) in m.terms() {
        let pole = (-psi.val_at(s)?).max(0);
        if (n as i64) < pole + 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Random `f ≡ 1 mod 𝔡` written as `(R + gΠ)/R`, with `Π = ∏(t - s)^{n_s}`
/// over the finite support, `R` nonvanishing on the support and
/// `deg R ≥ deg gΠ + max(n_∞, 1)`.
pub fn random_unit_mod<R: Rng + ?Sized>(rng: &mut R, m: &Modulus) -> Result<(Poly, Poly)> {
    let pi = m.terms().fold(Poly::one(), |acc, (s, n)| match s {
        Point::Finite(a) => &acc * &Poly::linear(a).pow(n),
        Point::Infinity => acc,
    });
    let n_inf = m.get(&Point::Infinity).max(1) as usize;
    loop {
        let dg = rng.gen_range(0..=2);
        let g = random_poly(rng, dg, 5);
        if g.is_zero() {
            continue;
        }
        let gp = &g * &pi;
        let extra = rng.gen_range(0..=1);
        let deg_r = gp.degree().unwrap_or(0) + n_inf + extra;
        let mut r = random_poly(rng, deg_r, 5);
        r = &r + &Poly::monomial(int(1), deg_r);
        if r.degree() != Some(deg_r) {
            continue;
        }
        let hits = m
            .support()
            .any(|s| matches!(s, Point::Finite(a) if r.eval(a).is_zero()));
        if hits {
            continue;
        }
        return Ok((&r + &gp, r));
    }
}

/// `ψ(div f)` for `f = a/b` as produced by [`random_unit_mod`].
pub fn evaluate_on_divisor(psi: &RatFunc, a: &Poly, b: &Poly, tag: SymbolTag) -> Result<Rat> {
    if psi.is_zero() {
        return Ok(Rat::zero());
    }
    if a.deg() != b.deg() {
        return Err(Error::DimensionMismatch("expected a unit at inf".into()));
    }
    apply_to_divisor(psi, a, b, tag)
}

/// Local criterion, then a randomized certificate over `trials` functions
/// `f ≡ 1 mod 𝔡`.
pub fn is_modulus<R: Rng + ?Sized>(
    psi: &RatFunc,
    m: &Modulus,
    tag: SymbolTag,
    rng: &mut R,
    trials: usize,
) -> Result<bool> {
    if !modulus_criterion(psi, m, tag)? {
        return Ok(false);
    }
    for _ in 0..trials {
        let (a, b) = random_unit_mod(rng, m)?;
        if evaluate_on_divisor(psi, &a, &b, tag)? != tag.identity() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::{frac, parse_ratfunc};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    #[test]
    fn tame_examples() {
        assert_eq!(tame_symbol(&rf("t"), &rf("t-1"), &Point::int(0)).unwrap(), int(-1));
        assert_eq!(tame_symbol(&rf("t+2"), &rf("t-1"), &Point::int(5)).unwrap(), int(1));
        assert_eq!(tame_symbol(&rf("t"), &rf("t"), &Point::int(0)).unwrap(), int(-1));
        assert_eq!(tame_symbol(&rf("t"), &rf("t-1"), &Point::Infinity).unwrap(), int(-1));
    }

    #[test]
    fn residue_examples() {
        assert_eq!(residue_symbol(&rf("1/t"), &rf("t-1"), &Point::int(0)).unwrap(), int(-1));
        assert_eq!(residue_symbol(&rf("t"), &rf("t+3"), &Point::int(1)).unwrap(), int(0));
        assert_eq!(residue_symbol(&rf("1/t"), &rf("t"), &Point::int(0)).unwrap(), int(0));
        assert_eq!(residue_symbol(&rf("1/t"), &rf("t-1"), &Point::Infinity).unwrap(), int(0));
    }

    #[test]
    fn reciprocity_examples() {
        let r = reciprocity_check(&rf("t"), &rf("t-1"), SymbolTag::Gm).unwrap();
        assert_eq!(
            r.values,
            vec![(Point::int(0), int(-1)), (Point::int(1), int(1)), (Point::Infinity, int(-1))]
        );
        assert!(r.holds());
        let r = reciprocity_check(&rf("1/t"), &rf("t-1"), SymbolTag::Ga).unwrap();
        assert_eq!(
            r.values,
            vec![(Point::int(0), int(-1)), (Point::int(1), int(1)), (Point::Infinity, int(0))]
        );
        assert!(r.holds());
        let r = reciprocity_check(&rf("t^2 - 3"), &rf("7"), SymbolTag::Ga);
        assert!(matches!(r, Err(Error::NonSplit(_))));
        let r = reciprocity_check(&rf("1/t"), &rf("5/2"), SymbolTag::Ga).unwrap();
        assert!(r.values.iter().all(|(_, v)| v.is_zero()));
        // constant f under G_m: (ψ, c)_p = c^{-val_p ψ}
        let r = reciprocity_check(&rf("t"), &rf("5/2"), SymbolTag::Gm).unwrap();
        assert_eq!(r.values, vec![(Point::int(0), frac(2, 5)), (Point::Infinity, frac(5, 2))]);
        assert!(r.holds());
    }

    #[test]
    fn value_property_at_regular_place() {
        let psi = rf("(t+2)/(t-7)");
        let f = rf("(t-1)^3 (t+4)");
        let p = Point::int(1);
        assert_eq!(tame_symbol(&psi, &f, &p).unwrap(), rat_pow(&frac(-3, 6), 3).unwrap());
        assert_eq!(residue_symbol(&psi, &f, &p).unwrap(), int(3) * frac(-3, 6));
    }

    #[test]
    fn modulus_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let zero2 = Modulus::new([(Point::int(0), 2)]).unwrap();
        let zero1 = Modulus::new([(Point::int(0), 1)]).unwrap();
        assert!(is_modulus(&rf("1/t"), &zero2, SymbolTag::Ga, &mut rng, 20).unwrap());
        assert!(!is_modulus(&rf("1/t"), &zero1, SymbolTag::Ga, &mut rng, 20).unwrap());
        assert!(is_modulus(&rf("3"), &Modulus::zero(), SymbolTag::Gm, &mut rng, 20).unwrap());
        assert!(matches!(
            is_modulus(&rf("1/(t-1)"), &zero2, SymbolTag::Ga, &mut rng, 1),
            Err(Error::NotRegularOutsideModulus(_))
        ));
        let with_inf = Modulus::new([(Point::int(0), 1), (Point::Infinity, 1)]).unwrap();
        assert!(is_modulus(&rf("t"), &with_inf, SymbolTag::Gm, &mut rng, 20).unwrap());
    }

    #[test]
    fn criterion_failure_has_witness() {
        // f = 1 + t is ≡ 1 mod [0] and Res_0(t^{-1} dlog(1+t)) = 1
        let f = rf("1+t");
        assert_eq!(residue_symbol(&rf("1/t"), &f, &Point::int(0)).unwrap(), int(1));
    }
}
