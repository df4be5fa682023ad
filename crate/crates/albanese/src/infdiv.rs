//! Formal infinitesimal divisors and the kernels that define the formal
//! group of divisors on the normalization killed by push-forward to C.
//!
//! An infinitesimal divisor is a finite collection of principal parts
//! (elements of K/O at finitely many places). Each principal part `f` at a
//! place acts on the completed maximal ideal there by `g ↦ Res(f · dg)`,
//! which identifies principal parts of pole order ≤ ν with the dual of
//! m̂/m̂^{ν+1}. Push-forward to a singular point restricts these functionals
//! to m̂_{C,p} ⊂ ⊕ m̂_q; the Lie algebra of the divisor group is the set of
//! principal parts whose push-forward vanishes.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::curve::{CurveConfig, Divisor, Place, SingularPoint};
use crate::error::{Error, Result};
use crate::funcfield::{format_rat, LaurentSeries, Rat};
use crate::lattice::{integer_kernel, IntMatrix};
use crate::linalg::{self, Matrix};

/// Principal parts at finitely many places. Each stored series has only
/// negative exponents and is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct InfinitesimalDivisor {
    parts: BTreeMap<Place, LaurentSeries>,
}

impl InfinitesimalDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds from `(place, [(exponent, coefficient)])`; nonnegative
    /// exponents are dropped (they are zero in K/O).
    pub fn from_parts<I, T>(parts: I) -> Self
    where
        I: IntoIterator<Item = (Place, T)>,
        T: IntoIterator<Item = (i64, Rat)>,
    {
        let mut d = Self::zero();
        for (p, terms) in parts {
            let s = LaurentSeries::from_terms(terms, -1);
            let merged = match d.parts.remove(&p) {
                Some(old) => old.add(&s),
                None => s,
            };
            if !merged.is_zero() {
                d.parts.insert(p, merged);
            }
        }
        d
    }

    pub fn parts(&self) -> impl Iterator<Item = (&Place, &LaurentSeries)> {
        self.parts.iter()
    }

    pub fn part(&self, p: &Place) -> Option<&LaurentSeries> {
        self.parts.get(p)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest pole order over all places.
    pub fn pole_bound(&self) -> i64 {
        self.parts
            .values()
            .filter_map(|s| s.valuation())
            .map(|v| -v)
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_parts(
            self.parts
                .iter()
                .chain(other.parts.iter())
                .map(|(p, s)| (p.clone(), s.terms().map(|(e, c)| (e, c.clone())).collect::<Vec<_>>())),
        )
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_parts(
            self.parts
                .iter()
                .map(|(p, s)| (p.clone(), s.terms().map(|(e, a)| (e, a * c)).collect::<Vec<_>>())),
        )
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.parts
                .iter()
                .map(|(p, s)| {
                    let coeffs: serde_json::Map<String, Value> = s
                        .terms()
                        .map(|(e, c)| (e.to_string(), Value::String(format_rat(c))))
                        .collect();
                    json!({
                        "component": p.component.0,
                        "point": p.point.to_string(),
                        "principal_part": coeffs,
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Display for InfinitesimalDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|(p, s)| {
                let body = s.to_string();
                let body = body.split(" + O(").next().unwrap_or("").to_string();
                format!("{p}: {body}")
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `Res(f · dg)` for a principal part `f` and a power series `g`.
///
/// Only the negative exponents of `f` and the coefficients of `g` up to the
/// pole order of `f` enter; `g` must be known that far.
pub fn residue_pairing(f: &LaurentSeries, g: &LaurentSeries) -> Result<Rat> {
    if g.valuation().is_some_and(|v| v < 0) {
        return Err(Error::Parse("pairing needs a power series argument".into()));
    }
    let mut acc = Rat::zero();
    for (e, c) in f.terms().filter(|(e, _)| *e < 0) {
        let k = -e;
        let gk = g.coeff(k)?;
        if !gk.is_zero() {
            acc += c * Rat::from_integer(k.into()) * gk;
        }
    }
    Ok(acc)
}

/// A continuous functional on m̂ at one place, recorded by its values on the
/// monomials `u, u², …, u^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFunctional {
    pub place: Place,
    pub monomial_values: Vec<Rat>,
}

impl LocalFunctional {
    pub fn eval(&self, g: &LaurentSeries) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (i, v) in self.monomial_values.iter().enumerate() {
            if !v.is_zero() {
                acc += v * g.coeff(i as i64 + 1)?;
            }
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.monomial_values.iter().all(Zero::is_zero)
    }
}

/// The functionals `g ↦ Res_q(δ_q · dg)` at each place of support, recorded
/// through exponent `n`.
pub fn fml(delta: &InfinitesimalDivisor, n: i64) -> Result<Vec<LocalFunctional>> {
    delta
        .parts()
        .map(|(p, f)| {
            let values = (1..=n)
                .map(|e| residue_pairing(f, &LaurentSeries::monomial(Rat::one(), e, n)))
                .collect::<Result<Vec<_>>>()?;
            Ok(LocalFunctional {
                place: p.clone(),
                monomial_values: values,
            })
        })
        .collect()
}

/// A functional on m̂_{C,p}: its values on the declared generators and on the
/// echelon basis of the full span of m̂_{C,p} through truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushedFunctional {
    pub point: String,
    pub generator_values: Vec<Rat>,
    pub span_values: Vec<Rat>,
}

impl PushedFunctional {
    /// Vanishes on all of m̂_{C,p}.
    pub fn is_zero(&self) -> bool {
        self.span_values.iter().all(Zero::is_zero)
    }
}

/// Restricts branch functionals to m̂_{C,p}: the value on a branch tuple is
/// the sum of the branch values. Functionals at places off the fiber are
/// ignored.
pub fn pushforward_inf(
    phis: &[LocalFunctional],
    sp: &SingularPoint,
    truncation: i64,
) -> Result<PushedFunctional> {
    let value_on_tuple = |tuple: &[LaurentSeries]| -> Result<Rat> {
        let mut acc = Rat::zero();
        for phi in phis {
            if let Some(b) = sp.branches.iter().position(|q| q == &phi.place) {
                acc += phi.eval(&tuple[b])?;
            }
        }
        Ok(acc)
    };
    let generator_values = sp
        .generators
        .iter()
        .map(|g| value_on_tuple(g))
        .collect::<Result<Vec<_>>>()?;
    let nb = sp.branches.len();
    let span_values = sp
        .max_ideal_span()
        .basis()
        .map(|v| {
            let tuple: Vec<LaurentSeries> = (0..nb)
                .map(|b| {
                    LaurentSeries::from_terms(
                        (1..=truncation).map(|e| {
                            (e, v[crate::curve::span_index(b, e, truncation)].clone())
                        }),
                        truncation,
                    )
                })
                .collect();
            value_on_tuple(&tuple)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PushedFunctional {
        point: sp.name.clone(),
        generator_values,
        span_values,
    })
}

/// Z-basis of degree-zero-per-component divisors supported on branch places
/// whose push-forward to C vanishes. Columns follow the declaration order
/// of branch places.
pub fn etale_kernel(config: &CurveConfig) -> Vec<Divisor> {
    let places: Vec<&Place> = config.branch_places().collect();
    let mut rows: IntMatrix = Vec::new();
    for c in &config.components {
        let row: Vec<BigInt> = places
            .iter()
            .map(|p| if &p.component == c { BigInt::one() } else { BigInt::zero() })
            .collect();
        if row.iter().any(|x| !x.is_zero()) {
            rows.push(row);
        }
    }
    for sp in &config.singular_points {
        rows.push(
            places
                .iter()
                .map(|p| {
                    if sp.branches.contains(p) {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect(),
        );
    }
    integer_kernel(&rows, places.len())
        .into_iter()
        .map(|v| {
            Divisor::from_terms(places.iter().zip(&v).map(|(p, n)| {
                let n: i64 = n.try_into().expect("kernel entries fit in i64");
                ((*p).clone(), n)
            }))
        })
        .collect()
}

/// Unknowns of the Lie system at one singular point: `(branch, pole order)`
/// in branch order, descending pole order.
fn lie_unknowns(sp: &SingularPoint) -> Vec<(usize, i64)> {
    sp.conductors
        .iter()
        .enumerate()
        .flat_map(|(b, &n)| (1..=n as i64).rev().map(move |k| (b, k)))
        .collect()
}

/// Pairing matrix between the search space at `sp` and the span basis of
/// m̂_{C,p}: one row per span vector, one column per unknown.
fn lie_system(sp: &SingularPoint, truncation: i64) -> Result<Matrix> {
    let unknowns = lie_unknowns(sp);
    let nb = sp.branches.len();
    let mut rows = Vec::new();
    for v in sp.max_ideal_span().basis() {
        let tuple: Vec<LaurentSeries> = (0..nb)
            .map(|b| {
                LaurentSeries::from_terms(
                    (1..=truncation)
                        .map(|e| (e, v[crate::curve::span_index(b, e, truncation)].clone())),
                    truncation,
                )
            })
            .collect();
        let row = unknowns
            .iter()
            .map(|&(b, k)| {
                residue_pairing(&LaurentSeries::monomial(Rat::one(), -k, -1), &tuple[b])
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// Q-basis of principal parts with pole order ≤ n_q at each branch q whose
/// residue pairing with all of m̂_{C,p} vanishes, for every singular point.
/// The basis is in reduced echelon form per point, leading coefficient one.
pub fn lie_kernel(config: &CurveConfig) -> Result<Vec<InfinitesimalDivisor>> {
    let n = config.truncation();
    let mut out = Vec::new();
    for sp in &config.singular_points {
        let unknowns = lie_unknowns(sp);
        if unknowns.is_empty() {
            continue;
        }
        if sp.max_conductor() as i64 > n {
            return Err(Error::InsufficientPrecision {
                needed: sp.max_conductor() as i64,
                available: n,
            });
        }
        let system = lie_system(sp, n)?;
        let ns = linalg::nullspace(&system, unknowns.len());
        let (basis, _) = linalg::rref(&ns, unknowns.len());
        for v in basis {
            let mut parts: BTreeMap<Place, Vec<(i64, Rat)>> = BTreeMap::new();
            for (&(b, k), c) in unknowns.iter().zip(&v) {
                if !c.is_zero() {
                    parts
                        .entry(sp.branches[b].clone())
                        .or_default()
                        .push((-k, c.clone()));
                }
            }
            out.push(InfinitesimalDivisor::from_parts(parts));
        }
    }
    Ok(out)
}

/// A formal group recorded by a basis of its k-points (a free lattice of
/// divisors) and a basis of its Lie algebra (infinitesimal divisors).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FormalGroupData {
    pub etale_basis: Vec<Divisor>,
    pub lie_basis: Vec<InfinitesimalDivisor>,
}

impl FormalGroupData {
    pub fn rank(&self) -> usize {
        self.etale_basis.len()
    }

    pub fn lie_dim(&self) -> usize {
        self.lie_basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.etale_basis.is_empty() && self.lie_basis.is_empty()
    }

    /// Direct sum, concatenating bases.
    pub fn direct_sum(&self, other: &Self) -> Self {
        FormalGroupData {
            etale_basis: self.etale_basis.iter().chain(&other.etale_basis).cloned().collect(),
            lie_basis: self.lie_basis.iter().chain(&other.lie_basis).cloned().collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "etale_basis": self.etale_basis.iter().map(divisor_json).collect::<Vec<_>>(),
            "lie_basis": self.lie_basis.iter().map(InfinitesimalDivisor::to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn divisor_json(d: &Divisor) -> Value {
    Value::Array(
        d.terms()
            .map(|(p, n)| {
                json!({
                    "component": p.component.0,
                    "point": p.point.to_string(),
                    "coefficient": n,
                })
            })
            .collect(),
    )
}

/// The formal group of divisors on the normalization, algebraically trivial
/// per component, whose push-forward to C vanishes.
pub fn divisor_group(config: &CurveConfig) -> Result<FormalGroupData> {
    if !config.is_validated() {
        return Err(Error::Schema("configuration has not been validated".into()));
    }
    Ok(FormalGroupData {
        etale_basis: etale_kernel(config),
        lie_basis: lie_kernel(config)?,
    })
}

/// Matrix of `Res(u^{-i} · d(u^j))` for `i, j = 1..ν`.
pub fn pairing_matrix(nu: i64) -> Result<Matrix> {
    (1..=nu)
        .map(|i| {
            (1..=nu)
                .map(|j| {
                    residue_pairing(
                        &LaurentSeries::monomial(Rat::one(), -i, -1),
                        &LaurentSeries::monomial(Rat::one(), j, nu),
                    )
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{curve_from_modulus, ComponentId};
    use crate::funcfield::{frac, int, Point};

    fn c0(p: Point) -> Place {
        Place::new("C0", p)
    }

    fn mono(e: i64, prec: i64) -> LaurentSeries {
        LaurentSeries::monomial(int(1), e, prec)
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
        CurveConfig::new(
            vec![ComponentId::new("C0")],
            vec![SingularPoint::explicit(
                "p",
                vec![c0(Point::int(0))],
                vec![1],
                vec![vec![mono(2, 10)], vec![mono(3, 10)]],
            )],
            None,
        )
        .validate()
        .unwrap()
    }

    fn tacnode() -> CurveConfig {
        CurveConfig::new(
            vec![ComponentId::new("C0")],
            vec![SingularPoint::explicit(
                "p",
                vec![c0(Point::int(0)), c0(Point::Infinity)],
                vec![1, 1],
                vec![
                    vec![mono(1, 10), mono(1, 10)],
                    vec![mono(2, 10), mono(2, 10).scale(&int(-1))],
                ],
            )],
            None,
        )
        .validate()
        .unwrap()
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(residue_pairing(&mono(-1, -1), &mono(1, 3)).unwrap(), int(1));
        assert_eq!(residue_pairing(&mono(-1, -1), &mono(2, 3)).unwrap(), int(0));
        assert_eq!(residue_pairing(&mono(-2, -1), &mono(2, 3)).unwrap(), int(2));
        assert!(matches!(
            residue_pairing(&mono(-3, -1), &mono(1, 2)),
            Err(Error::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn pairing_agrees_with_series_residue() {
        let f = LaurentSeries::from_terms([(-3, frac(2, 3)), (-1, int(5)), (-2, int(-1))], 40);
        let g = LaurentSeries::from_terms([(1, int(3)), (2, frac(-1, 2)), (3, int(4)), (5, int(9))], 6);
        let direct = f.mul(&g.derivative()).residue().unwrap();
        assert_eq!(residue_pairing(&f.truncate(-1), &g).unwrap(), direct);
    }

    #[test]
    fn fml_examples() {
        let d = InfinitesimalDivisor::from_parts([(c0(Point::int(0)), vec![(-1, int(1))])]);
        let phi = fml(&d, 3).unwrap();
        assert_eq!(phi[0].monomial_values, vec![int(1), int(0), int(0)]);
        assert!(fml(&InfinitesimalDivisor::zero(), 3).unwrap().is_empty());
        let d = InfinitesimalDivisor::from_parts([(c0(Point::int(0)), vec![(-2, int(1))])]);
        assert_eq!(fml(&d, 3).unwrap()[0].monomial_values[1], int(2));
    }

    #[test]
    fn pushforward_examples() {
        let cusp = cusp();
        let sp = &cusp.singular_points[0];
        let d = InfinitesimalDivisor::from_parts([(c0(Point::int(0)), vec![(-1, int(1))])]);
        let pushed = pushforward_inf(&fml(&d, 3).unwrap(), sp, 3).unwrap();
        assert_eq!(pushed.generator_values, vec![int(0), int(0)]);
        assert!(pushed.is_zero());

        let node = node();
        let sp = &node.singular_points[0];
        let d = InfinitesimalDivisor::from_parts([(c0(Point::int(0)), vec![(-1, int(1))])]);
        let pushed = pushforward_inf(&fml(&d, 2).unwrap(), sp, 2).unwrap();
        assert_eq!(pushed.generator_values, vec![int(1), int(0)]);
        assert!(!pushed.is_zero());

        let pushed = pushforward_inf(&[], sp, 2).unwrap();
        assert!(pushed.is_zero());
    }

    #[test]
    fn etale_examples() {
        let k = etale_kernel(&node());
        assert_eq!(
            k,
            vec![Divisor::from_terms([(c0(Point::int(0)), 1), (c0(Point::Infinity), -1)])]
        );
        assert!(etale_kernel(&cusp()).is_empty());
        let triple = CurveConfig::new(
            vec![ComponentId::new("C0")],
            vec![SingularPoint::ordinary(
                "p",
                vec![c0(Point::int(0)), c0(Point::int(1)), c0(Point::Infinity)],
            )],
            None,
        )
        .validate()
        .unwrap();
        assert_eq!(etale_kernel(&triple).len(), 2);
    }

    #[test]
    fn lie_examples() {
        assert!(lie_kernel(&node()).unwrap().is_empty());
        let k = lie_kernel(&cusp()).unwrap();
        assert_eq!(
            k,
            vec![InfinitesimalDivisor::from_parts([(c0(Point::int(0)), vec![(-1, int(1))])])]
        );
        let k = lie_kernel(&tacnode()).unwrap();
        assert_eq!(
            k,
            vec![InfinitesimalDivisor::from_parts([
                (c0(Point::int(0)), vec![(-1, int(1))]),
                (c0(Point::Infinity), vec![(-1, int(-1))]),
            ])]
        );
    }

    #[test]
    fn divisor_group_of_mixed_modulus() {
        let cfg = curve_from_modulus(&[(c0(Point::int(0)), 2), (c0(Point::Infinity), 1)]).unwrap();
        let g = divisor_group(&cfg).unwrap();
        assert_eq!((g.rank(), g.lie_dim()), (1, 1));
        assert_eq!(
            g.etale_basis[0],
            Divisor::from_terms([(c0(Point::int(0)), 1), (c0(Point::Infinity), -1)])
        );
    }

    #[test]
    fn oversized_conductor_still_gives_correct_kernel() {
        // declaring conductor 3 for the cusp enlarges the search space only
        let cfg = CurveConfig::new(
            vec![ComponentId::new("C0")],
            vec![SingularPoint::explicit(
                "p",
                vec![c0(Point::int(0))],
                vec![3],
                vec![vec![mono(2, 10)], vec![mono(3, 10)]],
            )],
            None,
        )
        .validate()
        .unwrap();
        assert_eq!(lie_kernel(&cfg).unwrap().len(), 1);
    }

    #[test]
    fn pairing_matrices_are_diagonal() {
        let m = pairing_matrix(4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j { int(i as i64 + 1) } else { int(0) };
                assert_eq!(m[i][j], expected);
            }
        }
    }
}
