//! Singular curves presented by their normalization: a disjoint union of
//! projective lines together with the data of each singular point (the
//! branches lying over it, conductor exponents, and generators of the
//! completed maximal ideal inside the product of the branch power series).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcfield::{format_rat, parse_rat, LaurentSeries, Point, Rat};
use crate::linalg::RowSpace;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentId(pub String);

impl ComponentId {
    pub fn new(id: impl Into<String>) -> Self {
        ComponentId(id.into())
    }
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A ℚ-rational point on one component of the normalization.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Place {
    pub component: ComponentId,
    pub point: Point,
}

impl Place {
    pub fn new(component: impl Into<String>, point: Point) -> Self {
        Place {
            component: ComponentId::new(component),
            point,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.component, self.point)
    }
}

/// Weil divisor on the normalization; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Divisor {
    support: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (Place, i64)>>(terms: I) -> Self {
        let mut d = Self::zero();
        for (p, n) in terms {
            d.add_term(p, n);
        }
        d
    }

    pub fn add_term(&mut self, p: Place, n: i64) {
        let e = self.support.entry(p.clone()).or_insert(0);
        *e += n;
        if *e == 0 {
            self.support.remove(&p);
        }
    }

    pub fn coeff(&self, p: &Place) -> i64 {
        self.support.get(p).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.support.iter().map(|(p, n)| (p, *n))
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, n) in other.terms() {
            d.add_term(p.clone(), n);
        }
        d
    }

    pub fn neg(&self) -> Divisor {
        Divisor::from_terms(self.terms().map(|(p, n)| (p.clone(), -n)))
    }

    pub fn scale(&self, k: i64) -> Divisor {
        Divisor::from_terms(self.terms().map(|(p, n)| (p.clone(), n * k)))
    }

    /// Restriction to one component.
    pub fn on_component(&self, c: &ComponentId) -> Divisor {
        Divisor::from_terms(
            self.terms()
                .filter(|(p, _)| &p.component == c)
                .map(|(p, n)| (p.clone(), n)),
        )
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms().map(|(p, n)| format!("{n:+}[{p}]")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Sum of coefficients on each component present in the support.
pub fn degree_per_component(d: &Divisor) -> BTreeMap<ComponentId, i64> {
    let mut out = BTreeMap::new();
    for (p, n) in d.terms() {
        *out.entry(p.component.clone()).or_insert(0) += n;
    }
    out
}

/// One generator of m̂_{C,p}: a power series per branch, in the branch's
/// local coordinate.
pub type BranchTuple = Vec<LaurentSeries>;

#[derive(Clone, Debug)]
pub struct SingularPoint {
    pub name: String,
    pub branches: Vec<Place>,
    pub conductors: Vec<u32>,
    pub generators: Vec<BranchTuple>,
    /// Seminormal gluing; generators and conductors are synthesized.
    pub ordinary: bool,
    span: Option<RowSpace>,
}

impl SingularPoint {
    pub fn ordinary(name: impl Into<String>, branches: Vec<Place>) -> Self {
        SingularPoint {
            name: name.into(),
            branches,
            conductors: Vec::new(),
            generators: Vec::new(),
            ordinary: true,
            span: None,
        }
    }

    pub fn explicit(
        name: impl Into<String>,
        branches: Vec<Place>,
        conductors: Vec<u32>,
        generators: Vec<BranchTuple>,
    ) -> Self {
        SingularPoint {
            name: name.into(),
            branches,
            conductors,
            generators,
            ordinary: false,
            span: None,
        }
    }

    pub fn max_conductor(&self) -> u32 {
        self.conductors.iter().copied().max().unwrap_or(0)
    }

    /// The span of m̂_{C,p} modulo degree `N + 1`, in coordinates
    /// `(branch, exponent)` ↦ `branch · N + exponent - 1`; available after
    /// validation.
    pub fn max_ideal_span(&self) -> &RowSpace {
        self.span.as_ref().expect("validated singular point")
    }
}

/// Index of the coefficient of `u^exponent` on `branch` in span coordinates.
pub fn span_index(branch: usize, exponent: i64, truncation: i64) -> usize {
    branch * truncation as usize + exponent as usize - 1
}

/// Flattens a branch tuple into span coordinates (exponents 1..=N).
pub fn tuple_to_vector(tuple: &[LaurentSeries], truncation: i64) -> Result<Vec<Rat>> {
    let mut v = vec![Rat::zero(); tuple.len() * truncation as usize];
    for (b, s) in tuple.iter().enumerate() {
        for e in 1..=truncation {
            v[span_index(b, e, truncation)] = s.coeff(e)?;
        }
    }
    Ok(v)
}

fn vector_to_tuple(v: &[Rat], branches: usize, truncation: i64) -> BranchTuple {
    (0..branches)
        .map(|b| {
            LaurentSeries::from_terms(
                (1..=truncation).map(|e| (e, v[span_index(b, e, truncation)].clone())),
                truncation,
            )
        })
        .collect()
}

/// k-span of the ideal generated by `generators` inside ⊕ m̂_q, modulo
/// degree `N + 1`: closes the generator span under multiplication by the
/// generators.
fn ideal_span(generators: &[BranchTuple], branches: usize, truncation: i64) -> Result<RowSpace> {
    let mut span = RowSpace::new(branches * truncation as usize);
    let mut queue = Vec::new();
    for g in generators {
        let v = tuple_to_vector(g, truncation)?;
        if span.insert(&v) {
            queue.push(v);
        }
    }
    while let Some(v) = queue.pop() {
        let tuple = vector_to_tuple(&v, branches, truncation);
        for g in generators {
            let prod: BranchTuple = tuple
                .iter()
                .zip(g)
                .map(|(a, b)| a.mul(b).truncate(truncation))
                .collect();
            let pv = tuple_to_vector(&prod, truncation)?;
            if span.insert(&pv) {
                queue.push(pv);
            }
        }
    }
    Ok(span)
}

#[derive(Clone, Debug)]
pub struct CurveConfig {
    pub components: Vec<ComponentId>,
    pub singular_points: Vec<SingularPoint>,
    truncation: Option<i64>,
    validated: bool,
    branch_owner: HashMap<Place, (usize, usize)>,
}

impl CurveConfig {
    /// Unvalidated configuration; `truncation = None` selects the default
    /// `max conductor + 2` during validation.
    pub fn new(
        components: Vec<ComponentId>,
        singular_points: Vec<SingularPoint>,
        truncation: Option<i64>,
    ) -> Self {
        CurveConfig {
            components,
            singular_points,
            truncation,
            validated: false,
            branch_owner: HashMap::new(),
        }
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// Working truncation order N.
    pub fn truncation(&self) -> i64 {
        self.truncation.unwrap_or_else(|| self.default_truncation())
    }

    fn default_truncation(&self) -> i64 {
        self.singular_points
            .iter()
            .map(|sp| sp.max_conductor() as i64)
            .max()
            .unwrap_or(0)
            + 2
    }

    pub fn has_component(&self, c: &ComponentId) -> bool {
        self.components.contains(c)
    }

    /// `(singular point index, branch index)` of a branch place.
    pub fn branch_owner(&self, p: &Place) -> Option<(usize, usize)> {
        self.branch_owner.get(p).copied()
    }

    pub fn is_branch(&self, p: &Place) -> bool {
        self.branch_owner.contains_key(p)
    }

    /// All branch places, grouped by singular point in declaration order.
    pub fn branch_places(&self) -> impl Iterator<Item = &Place> {
        self.singular_points.iter().flat_map(|sp| sp.branches.iter())
    }

    pub fn validate(mut self) -> Result<CurveConfig> {
        let mut seen = std::collections::HashSet::new();
        for c in &self.components {
            if !seen.insert(c.clone()) {
                return Err(Error::Schema(format!("component `{c}` declared twice")));
            }
        }
        let mut owner = HashMap::new();
        for (i, sp) in self.singular_points.iter_mut().enumerate() {
            if sp.branches.is_empty() {
                return Err(Error::InvalidSingularPoint {
                    point: sp.name.clone(),
                    detail: "no branches".into(),
                });
            }
            for (j, b) in sp.branches.iter().enumerate() {
                if !self.components.contains(&b.component) {
                    return Err(Error::UnknownComponent(b.component.0.clone()));
                }
                if owner.insert(b.clone(), (i, j)).is_some() {
                    return Err(Error::DuplicatedBranch(b.to_string()));
                }
            }
            if sp.ordinary {
                sp.conductors = vec![0; sp.branches.len()];
            } else if sp.conductors.len() != sp.branches.len() {
                return Err(Error::InvalidSingularPoint {
                    point: sp.name.clone(),
                    detail: format!(
                        "{} conductors for {} branches",
                        sp.conductors.len(),
                        sp.branches.len()
                    ),
                });
            }
        }
        let n = self.truncation();
        let needed = self.default_truncation();
        if n < needed {
            return Err(Error::TruncationTooSmall {
                truncation: n,
                needed,
            });
        }
        for sp in self.singular_points.iter_mut() {
            let b = sp.branches.len();
            if sp.ordinary {
                sp.generators = (0..b)
                    .map(|i| {
                        (0..b)
                            .map(|j| {
                                if i == j {
                                    LaurentSeries::monomial(Rat::one(), 1, n)
                                } else {
                                    LaurentSeries::zero(n)
                                }
                            })
                            .collect()
                    })
                    .collect();
            }
            let mut gens = Vec::with_capacity(sp.generators.len());
            for g in &sp.generators {
                if g.len() != b {
                    return Err(Error::InvalidSingularPoint {
                        point: sp.name.clone(),
                        detail: format!("generator has {} entries for {b} branches", g.len()),
                    });
                }
                if g.iter().any(|s| s.valuation().is_some_and(|v| v < 1)) {
                    return Err(Error::InvalidSingularPoint {
                        point: sp.name.clone(),
                        detail: "generators must lie in the maximal ideal".into(),
                    });
                }
                gens.push(
                    g.iter()
                        .map(|s| {
                            LaurentSeries::from_terms(
                                s.terms().map(|(e, c)| (e, c.clone())),
                                n,
                            )
                        })
                        .collect::<BranchTuple>(),
                );
            }
            sp.generators = gens;
            let span = ideal_span(&sp.generators, b, n)?;
            for (q, &cond) in sp.conductors.iter().enumerate() {
                for e in cond as i64 + 1..=n {
                    let mut v = vec![Rat::zero(); b * n as usize];
                    v[span_index(q, e, n)] = Rat::one();
                    if !span.contains(&v) {
                        return Err(Error::ConductorFails {
                            point: sp.name.clone(),
                            detail: format!(
                                "u^{e} on branch {} is not in the span of the generators",
                                sp.branches[q]
                            ),
                        });
                    }
                }
            }
            sp.span = Some(span);
        }
        self.truncation = Some(n);
        self.branch_owner = owner;
        self.validated = true;
        Ok(self)
    }

    /// Loads and validates a configuration from its JSON form.
    pub fn from_json(src: &str) -> Result<CurveConfig> {
        let spec: CurveSpec =
            serde_json::from_str(src).map_err(|e| Error::Schema(e.to_string()))?;
        spec.into_config()?.validate()
    }

    pub fn to_spec(&self) -> CurveSpec {
        CurveSpec {
            components: self
                .components
                .iter()
                .map(|c| ComponentSpec { id: c.0.clone() })
                .collect(),
            truncation: self.truncation,
            singular_points: self
                .singular_points
                .iter()
                .map(|sp| SingularPointSpec {
                    name: sp.name.clone(),
                    branches: sp.branches.iter().map(PlaceSpec::from_place).collect(),
                    kind: if sp.ordinary { "ordinary" } else { "explicit" }.into(),
                    conductors: (!sp.ordinary).then(|| sp.conductors.clone()),
                    generators: (!sp.ordinary).then(|| {
                        sp.generators
                            .iter()
                            .map(|g| {
                                g.iter()
                                    .map(|s| {
                                        s.terms()
                                            .map(|(e, c)| (e.to_string(), format_rat(c)))
                                            .collect()
                                    })
                                    .collect()
                            })
                            .collect()
                    }),
                })
                .collect(),
        }
    }
}

/// A point of the singular curve C.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurvePoint {
    Singular(String),
    Regular(Place),
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Singular(name) => f.write_str(name),
            CurvePoint::Regular(p) => write!(f, "{p}"),
        }
    }
}

/// Push-forward of Weil divisors along the normalization: branch places
/// collapse onto their singular point.
pub fn pushforward_weil(d: &Divisor, config: &CurveConfig) -> BTreeMap<CurvePoint, i64> {
    let mut out = BTreeMap::new();
    for (p, n) in d.terms() {
        let target = match config.branch_owner(p) {
            Some((i, _)) => CurvePoint::Singular(config.singular_points[i].name.clone()),
            None => CurvePoint::Regular(p.clone()),
        };
        *out.entry(target).or_insert(0) += n;
    }
    out.retain(|_, n| *n != 0);
    out
}

/// Curve with one singular point gluing the support of the modulus
/// `Σ n_i p_i`: the branch at `p_i` has conductor `n_i - 1` and generators
/// `u_i^{n_i}, …, u_i^{2 n_i - 1}`, so that m̂_C = ⊕ m̂_i^{n_i}.
pub fn curve_from_modulus(points: &[(Place, u32)]) -> Result<CurveConfig> {
    if points.is_empty() {
        return Err(Error::EmptyModulus);
    }
    let mut components: Vec<ComponentId> = Vec::new();
    for (p, n) in points {
        if *n == 0 {
            return Err(Error::InvalidSingularPoint {
                point: "p".into(),
                detail: format!("multiplicity 0 at {p}"),
            });
        }
        if !components.contains(&p.component) {
            components.push(p.component.clone());
        }
    }
    let b = points.len();
    let max_n = points.iter().map(|(_, n)| *n).max().unwrap_or(1) as i64;
    let n_trunc = max_n + 1;
    let mut generators = Vec::new();
    for (i, (_, n)) in points.iter().enumerate() {
        for e in *n as i64..2 * *n as i64 {
            generators.push(
                (0..b)
                    .map(|j| {
                        if i == j {
                            LaurentSeries::monomial(Rat::one(), e, n_trunc)
                        } else {
                            LaurentSeries::zero(n_trunc)
                        }
                    })
                    .collect(),
            );
        }
    }
    let sp = SingularPoint::explicit(
        "p",
        points.iter().map(|(p, _)| p.clone()).collect(),
        points.iter().map(|(_, n)| n - 1).collect(),
        generators,
    );
    CurveConfig::new(components, vec![sp], None).validate()
}

// JSON schema

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub components: Vec<ComponentSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<i64>,
    #[serde(default)]
    pub singular_points: Vec<SingularPointSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub id: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PlaceSpec {
    pub component: String,
    pub point: String,
}

impl PlaceSpec {
    fn from_place(p: &Place) -> Self {
        PlaceSpec {
            component: p.component.0.clone(),
            point: p.point.to_string(),
        }
    }

    fn to_place(&self) -> Result<Place> {
        Ok(Place::new(self.component.clone(), self.point.parse()?))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SingularPointSpec {
    pub name: String,
    pub branches: Vec<PlaceSpec>,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conductors: Option<Vec<u32>>,
    /// One entry per generator; each generator lists, per branch, a map from
    /// exponent to coefficient string.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<BTreeMap<String, String>>>>,
}

impl CurveSpec {
    pub fn into_config(self) -> Result<CurveConfig> {
        let components = self
            .components
            .iter()
            .map(|c| ComponentId::new(c.id.clone()))
            .collect();
        let mut points = Vec::new();
        for sp in self.singular_points {
            let branches = sp
                .branches
                .iter()
                .map(PlaceSpec::to_place)
                .collect::<Result<Vec<_>>>()?;
            match sp.kind.as_str() {
                "ordinary" => points.push(SingularPoint::ordinary(sp.name, branches)),
                "explicit" => {
                    let conductors = sp.conductors.ok_or_else(|| {
                        Error::Schema(format!("explicit point `{}` needs conductors", sp.name))
                    })?;
                    let raw = sp.generators.ok_or_else(|| {
                        Error::Schema(format!("explicit point `{}` needs generators", sp.name))
                    })?;
                    let mut generators = Vec::new();
                    for g in raw {
                        let mut tuple = Vec::new();
                        for m in g {
                            let mut terms = Vec::new();
                            for (e, c) in m {
                                let e: i64 = e.trim().parse().map_err(|_| {
                                    Error::Schema(format!("bad exponent `{e}`"))
                                })?;
                                terms.push((e, parse_rat(&c)?));
                            }
                            tuple.push(LaurentSeries::from_terms(terms, i64::MAX / 4));
                        }
                        generators.push(tuple);
                    }
                    points.push(SingularPoint::explicit(sp.name, branches, conductors, generators));
                }
                other => return Err(Error::Schema(format!("unknown kind `{other}`"))),
            }
        }
        Ok(CurveConfig::new(components, points, self.truncation))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::int;

    fn c0(p: Point) -> Place {
        Place::new("C0", p)
    }

    fn mono(e: i64) -> LaurentSeries {
        LaurentSeries::monomial(int(1), e, 100)
    }

    pub(crate) fn node() -> CurveConfig {
        CurveConfig::new(
            vec![ComponentId::new("C0")],
            vec![SingularPoint::ordinary("p", vec![c0(Point::int(0)), c0(Point::Infinity)])],
            None,
        )
        .validate()
        .unwrap()
    }

    fn cusp(conductor: u32) -> Result<CurveConfig> {
        CurveConfig::new(
            vec![ComponentId::new("C0")],
            vec![SingularPoint::explicit(
                "p",
                vec![c0(Point::int(0))],
                vec![conductor],
                vec![vec![mono(2)], vec![mono(3)]],
            )],
            None,
        )
        .validate()
    }

    #[test]
    fn node_validates_with_full_span() {
        let n = node();
        assert_eq!(n.truncation(), 2);
        let sp = &n.singular_points[0];
        assert_eq!(sp.conductors, vec![0, 0]);
        assert_eq!(sp.max_ideal_span().rank(), 4);
    }

    #[test]
    fn cusp_conductor_checks() {
        let c = cusp(1).unwrap();
        assert_eq!(c.truncation(), 3);
        // span of {u^2, u^3} mod u^4 is 2-dimensional in a 3-dimensional m̂/m̂^4
        assert_eq!(c.singular_points[0].max_ideal_span().rank(), 2);
        assert!(matches!(cusp(0), Err(Error::ConductorFails { .. })));
    }

    #[test]
    fn truncation_too_small() {
        let cfg = CurveConfig::new(
            vec![ComponentId::new("C0")],
            vec![SingularPoint::explicit(
                "p",
                vec![c0(Point::int(0))],
                vec![1],
                vec![vec![mono(2)], vec![mono(3)]],
            )],
            Some(2),
        );
        assert!(matches!(
            cfg.validate(),
            Err(Error::TruncationTooSmall { truncation: 2, needed: 3 })
        ));
    }

    #[test]
    fn duplicated_branch_rejected() {
        let cfg = CurveConfig::new(
            vec![ComponentId::new("C0")],
            vec![
                SingularPoint::ordinary("p", vec![c0(Point::int(0)), c0(Point::int(1))]),
                SingularPoint::ordinary("q", vec![c0(Point::int(1)), c0(Point::int(2))]),
            ],
            None,
        );
        assert!(matches!(cfg.validate(), Err(Error::DuplicatedBranch(_))));
    }

    #[test]
    fn unknown_component_rejected() {
        let cfg = CurveConfig::new(
            vec![ComponentId::new("C0")],
            vec![SingularPoint::ordinary("p", vec![Place::new("C9", Point::int(0))])],
            None,
        );
        assert!(matches!(cfg.validate(), Err(Error::UnknownComponent(_))));
    }

    #[test]
    fn pushforward_examples() {
        let n = node();
        let d = Divisor::from_terms([(c0(Point::int(0)), 1), (c0(Point::Infinity), -1)]);
        assert!(pushforward_weil(&d, &n).is_empty());

        let d = Divisor::from_terms([(c0(Point::int(2)), 1), (c0(Point::int(3)), -1)]);
        let pd = pushforward_weil(&d, &n);
        assert_eq!(pd.len(), 2);
        assert_eq!(pd[&CurvePoint::Regular(c0(Point::int(2)))], 1);

        let d = Divisor::from_terms([
            (c0(Point::int(0)), 1),
            (c0(Point::Infinity), 1),
            (c0(Point::int(1)), -2),
        ]);
        let pd = pushforward_weil(&d, &n);
        assert_eq!(pd[&CurvePoint::Singular("p".into())], 2);
        assert_eq!(pd[&CurvePoint::Regular(c0(Point::int(1)))], -2);
    }

    #[test]
    fn degrees_per_component() {
        let d = Divisor::from_terms([(c0(Point::int(0)), 1), (c0(Point::Infinity), -1)]);
        assert_eq!(degree_per_component(&d)[&ComponentId::new("C0")], 0);
        let d = Divisor::from_terms([(c0(Point::int(0)), 1), (c0(Point::int(1)), 1)]);
        assert_eq!(degree_per_component(&d)[&ComponentId::new("C0")], 2);
        let d = Divisor::from_terms([
            (c0(Point::int(0)), 1),
            (Place::new("C1", Point::int(0)), -3),
        ]);
        let deg = degree_per_component(&d);
        assert_eq!(deg[&ComponentId::new("C0")], 1);
        assert_eq!(deg[&ComponentId::new("C1")], -3);
    }

    #[test]
    fn modulus_curves() {
        let node_like =
            curve_from_modulus(&[(c0(Point::int(0)), 1), (c0(Point::Infinity), 1)]).unwrap();
        assert_eq!(node_like.singular_points[0].conductors, vec![0, 0]);
        assert_eq!(node_like.singular_points[0].max_ideal_span().rank(), 4);

        let cusp_like = curve_from_modulus(&[(c0(Point::int(0)), 2)]).unwrap();
        assert_eq!(cusp_like.singular_points[0].conductors, vec![1]);
        assert_eq!(cusp_like.singular_points[0].generators.len(), 2);

        let mixed =
            curve_from_modulus(&[(c0(Point::int(0)), 2), (c0(Point::Infinity), 1)]).unwrap();
        assert_eq!(mixed.singular_points[0].conductors, vec![1, 0]);
        assert!(matches!(curve_from_modulus(&[]), Err(Error::EmptyModulus)));
    }

    #[test]
    fn json_round_trip() {
        let src = r#"{"components":[{"id":"C0"}],"truncation":4,"singular_points":[
            {"name":"p","branches":[{"component":"C0","point":"0"},{"component":"C0","point":"inf"}],"kind":"ordinary"}]}"#;
        let cfg = CurveConfig::from_json(src).unwrap();
        assert_eq!(cfg.truncation(), 4);
        let again = CurveConfig::from_json(&serde_json::to_string(&cfg.to_spec()).unwrap()).unwrap();
        assert_eq!(again.to_spec(), cfg.to_spec());

        let tac = r#"{"components":[{"id":"C0"}],"singular_points":[
            {"name":"p","kind":"explicit","conductors":[1,1],
             "branches":[{"component":"C0","point":"0"},{"component":"C0","point":"inf"}],
             "generators":[[{"1":"1"},{"1":"1"}],[{"2":"1"},{"2":"-1"}]]}]}"#;
        let cfg = CurveConfig::from_json(tac).unwrap();
        assert_eq!(cfg.truncation(), 3);
        assert!(CurveConfig::from_json(r#"{"components":[]"#).is_err());
        assert!(CurveConfig::from_json(r#"{"components":[],"bogus":1}"#).is_err());
    }
}
