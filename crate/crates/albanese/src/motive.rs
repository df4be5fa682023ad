//! Linear algebraic group descriptors, 1-motives with trivial abelian part,
//! Cartier duality and the assembly of the generalized Albanese.
//!
//! Under Cartier duality a free lattice of rank t corresponds to the torus
//! G_m^t and a formal group whose Lie algebra has dimension v corresponds
//! to the vector group G_a^v. For a 1-motive `[F → L]` with zero map and no
//! abelian part the dual is `[L∨ → F∨]`; the pairing bases travel with the
//! dual so that dualizing twice returns the original data exactly.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::curve::{ComponentId, CurveConfig, Divisor, Place};
use crate::error::{Error, Result};
use crate::funcfield::{Point, Rat};
use crate::infdiv::{divisor_group, divisor_json, FormalGroupData, InfinitesimalDivisor};
use crate::lattice::integer_kernel;

/// `G_m^t × G_a^v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct LinearGroupDescriptor {
    pub torus_rank: usize,
    pub vectorial_dim: usize,
}

impl LinearGroupDescriptor {
    pub fn new(torus_rank: usize, vectorial_dim: usize) -> Self {
        LinearGroupDescriptor {
            torus_rank,
            vectorial_dim,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.torus_rank == 0 && self.vectorial_dim == 0
    }
}

impl Add for LinearGroupDescriptor {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        LinearGroupDescriptor::new(
            self.torus_rank + rhs.torus_rank,
            self.vectorial_dim + rhs.vectorial_dim,
        )
    }
}

impl fmt::Display for LinearGroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factor = |name: &str, k: usize| match k {
            0 => None,
            1 => Some(name.to_string()),
            _ => Some(format!("{name}^{k}")),
        };
        let parts: Vec<String> = [factor("G_m", self.torus_rank), factor("G_a", self.vectorial_dim)]
            .into_iter()
            .flatten()
            .collect();
        if parts.is_empty() {
            f.write_str("trivial group")
        } else {
            f.write_str(&parts.join(" x "))
        }
    }
}

/// Placeholder for the abelian part of a 1-motive. Only the trivial case is
/// supported by duality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum AbelianPart {
    #[default]
    Trivial,
    Nontrivial { dimension: usize },
}

pub fn cartier_dual(f: &FormalGroupData) -> LinearGroupDescriptor {
    LinearGroupDescriptor::new(f.rank(), f.lie_dim())
}

/// `[F → G]` with `G = L × (abelian part)`. `target_pairing` is the formal
/// group whose Cartier dual is `L`, carried along so duality is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneMotive {
    pub formal: FormalGroupData,
    pub target: LinearGroupDescriptor,
    pub target_pairing: FormalGroupData,
    pub abelian: AbelianPart,
    /// Matrix of `F(k) → L`, `torus_rank` rows by `rank F` columns.
    pub etale_map: Vec<Vec<i64>>,
    /// Matrix of `Lie F → Lie L`, `vectorial_dim` rows by `dim Lie F` columns.
    pub lie_map: Vec<Vec<Rat>>,
}

impl OneMotive {
    /// `[F → L]` with the zero map, where `L` is the Cartier dual of
    /// `target_pairing`.
    pub fn with_zero_map(formal: FormalGroupData, target_pairing: FormalGroupData) -> Self {
        let target = cartier_dual(&target_pairing);
        OneMotive {
            etale_map: vec![vec![0; formal.rank()]; target.torus_rank],
            lie_map: vec![vec![Rat::zero(); formal.lie_dim()]; target.vectorial_dim],
            formal,
            target,
            target_pairing,
            abelian: AbelianPart::Trivial,
        }
    }

    pub fn is_map_zero(&self) -> bool {
        self.etale_map.iter().flatten().all(|&x| x == 0)
            && self.lie_map.iter().flatten().all(Zero::is_zero)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "formal": {
                "rank": self.formal.rank(),
                "lie_dim": self.formal.lie_dim(),
            },
            "target": {
                "torus_rank": self.target.torus_rank,
                "vectorial_dim": self.target.vectorial_dim,
                "abelian_dim": match self.abelian {
                    AbelianPart::Trivial => 0,
                    AbelianPart::Nontrivial { dimension } => dimension,
                },
            },
        })
    }
}

impl fmt::Display for OneMotive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let formal = if self.formal.is_trivial() {
            "0".to_string()
        } else {
            let mut parts = Vec::new();
            if self.formal.rank() > 0 {
                parts.push(format!("Z^{}", self.formal.rank()));
            }
            if self.formal.lie_dim() > 0 {
                parts.push(format!("Ĝ_a^{}", self.formal.lie_dim()));
            }
            parts.join(" x ")
        };
        let target = if self.target.is_trivial() {
            "0".to_string()
        } else {
            self.target.to_string()
        };
        write!(f, "[{formal} -> {target}]")
    }
}

/// Dual of a 1-motive with trivial abelian part and zero map.
pub fn dualize(m: &OneMotive) -> Result<OneMotive> {
    if m.abelian != AbelianPart::Trivial {
        return Err(Error::UnsupportedAbelianPart);
    }
    if !m.is_map_zero() {
        return Err(Error::DimensionMismatch(
            "duality is implemented for the zero map only".into(),
        ));
    }
    if cartier_dual(&m.target_pairing) != m.target {
        return Err(Error::DimensionMismatch(format!(
            "target {} does not match its pairing data",
            m.target
        )));
    }
    Ok(OneMotive {
        formal: m.target_pairing.clone(),
        target: cartier_dual(&m.formal),
        target_pairing: m.formal.clone(),
        abelian: AbelianPart::Trivial,
        etale_map: transpose(&m.etale_map, m.formal.rank()),
        lie_map: transpose(&m.lie_map, m.formal.lie_dim()),
    })
}

fn transpose<T: Clone>(m: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    (0..ncols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Dualizing twice returns the same structural data.
pub fn double_dual_check(m: &OneMotive) -> Result<bool> {
    Ok(&dualize(&dualize(m)?)? == m)
}

/// The generalized Albanese of a curve with rational components: the
/// Cartier dual of the formal divisor group, with the bases realizing the
/// universal map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlbaneseStructure {
    pub group: LinearGroupDescriptor,
    pub etale_basis: Vec<Divisor>,
    pub lie_basis: Vec<InfinitesimalDivisor>,
    /// One regular point per component, in component order.
    pub base_points: Vec<Place>,
}

impl AlbaneseStructure {
    pub fn to_json(&self) -> Value {
        json!({
            "torus_rank": self.group.torus_rank,
            "vectorial_dim": self.group.vectorial_dim,
            "etale_basis": self.etale_basis.iter().map(divisor_json).collect::<Vec<_>>(),
            "lie_basis": self.lie_basis.iter().map(InfinitesimalDivisor::to_json).collect::<Vec<_>>(),
            "base_points": self.base_points.iter().map(|p| json!({
                "component": p.component.0,
                "point": p.point.to_string(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn formal_group(&self) -> FormalGroupData {
        FormalGroupData {
            etale_basis: self.etale_basis.clone(),
            lie_basis: self.lie_basis.clone(),
        }
    }
}

/// `[Divf⁰ → Pic⁰_Z]` for the curve; Pic⁰ of a union of projective lines is
/// trivial, so the target is zero.
pub fn divisor_motive(config: &CurveConfig) -> Result<OneMotive> {
    Ok(OneMotive::with_zero_map(
        divisor_group(config)?,
        FormalGroupData::default(),
    ))
}

/// Smallest nonnegative integer coordinate on each component that is not a
/// branch place.
pub fn base_points(config: &CurveConfig) -> Vec<Place> {
    config
        .components
        .iter()
        .map(|c| {
            (0i64..)
                .map(|k| Place {
                    component: c.clone(),
                    point: Point::int(k),
                })
                .find(|p| !config.is_branch(p))
                .expect("finitely many branch places")
        })
        .collect()
}

pub fn albanese(config: &CurveConfig) -> Result<AlbaneseStructure> {
    let dual = dualize(&divisor_motive(config)?)?;
    let f = dual.target_pairing;
    Ok(AlbaneseStructure {
        group: dual.target,
        etale_basis: f.etale_basis,
        lie_basis: f.lie_basis,
        base_points: base_points(config),
    })
}

/// Formal group whose k-points are the degree-zero-per-component divisors
/// supported on `support`, with trivial infinitesimal part.
pub fn formal_group_from_support(
    config: &CurveConfig,
    support: &[Place],
) -> Result<FormalGroupData> {
    let mut seen = BTreeSet::new();
    for p in support {
        if !config.has_component(&p.component) {
            return Err(Error::UnknownComponent(p.component.0.clone()));
        }
        if !seen.insert(p.clone()) {
            return Err(Error::DuplicatePlace(p.to_string()));
        }
    }
    let comps: BTreeSet<&ComponentId> = support.iter().map(|p| &p.component).collect();
    let rows: Vec<Vec<BigInt>> = comps
        .iter()
        .map(|c| {
            support
                .iter()
                .map(|p| if &&p.component == c { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let etale_basis = integer_kernel(&rows, support.len())
        .into_iter()
        .map(|v| {
            Divisor::from_terms(support.iter().zip(&v).map(|(p, n)| {
                (p.clone(), i64::try_from(n).expect("small kernel entries"))
            }))
        })
        .collect();
    Ok(FormalGroupData {
        etale_basis,
        lie_basis: Vec::new(),
    })
}

/// Formal group with étale basis `[i] - [0]` (i = 1..t) and Lie basis
/// `u^{-k}` at 0 (k = 1..v) on a component `C0`.
pub fn standard_formal_group(t: usize, v: usize) -> FormalGroupData {
    let at = |p: Point| Place::new("C0", p);
    FormalGroupData {
        etale_basis: (1..=t as i64)
            .map(|i| Divisor::from_terms([(at(Point::int(i)), 1), (at(Point::int(0)), -1)]))
            .collect(),
        lie_basis: (1..=v as i64)
            .map(|k| InfinitesimalDivisor::from_parts([(at(Point::int(0)), vec![(-k, Rat::one())])]))
            .collect(),
    }
}
