//! Seeded property suites over the whole library, as run by `albx verify`.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::chow::{abel_jacobi, coordinates, div_c, interpolate_cycle, random_cycle, UnitSampler};
use crate::curve::{curve_from_modulus, degree_per_component, pushforward_weil, CurveConfig, Place};
use crate::error::Result;
use crate::funcfield::{Point, RatFunc};
use crate::linalg::det;
use crate::infdiv::{divisor_group, fml, pairing_matrix, pushforward_inf};
use crate::motive::{albanese, divisor_motive, double_dual_check, standard_formal_group, OneMotive};
use crate::sample::{random_nonzero_rat, random_rat, random_split_func};
use crate::symbols::{
    evaluate_on_divisor, is_modulus, random_unit_mod, reciprocity_check, residue_symbol,
    tame_symbol, Modulus, SymbolTag,
};

/// Outcome of one property over a number of checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyResult {
    pub name: String,
    pub checks: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl PropertyResult {
    fn new(name: impl Into<String>) -> Self {
        PropertyResult {
            name: name.into(),
            checks: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, outcome: Result<bool>, context: impl FnOnce() -> String) {
        self.checks += 1;
        let message = match outcome {
            Ok(true) => return,
            Ok(false) => context(),
            Err(e) => format!("{}: {e}", context()),
        };
        self.failures += 1;
        self.first_failure.get_or_insert(message);
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VerifyReport {
    pub properties: Vec<PropertyResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyResult::passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "properties": self.properties.iter().map(|p| json!({
                "name": p.name,
                "checks": p.checks,
                "failures": p.failures,
                "first_failure": p.first_failure,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.properties {
            out.push_str(&format!(
                "{:<4} {:<44} {:>5} checks, {} failures\n",
                if p.passed() { "ok" } else { "FAIL" },
                p.name,
                p.checks,
                p.failures
            ));
            if let Some(f) = &p.first_failure {
                out.push_str(&format!("     first failure: {f}\n"));
            }
        }
        out.push_str(if self.passed() { "all properties hold\n" } else { "some properties failed\n" });
        out
    }
}

/// The built-in fixtures: node, cusp, tacnode, ordinary triple and
/// quadruple points, and two lines meeting in a node and a tacnode.
pub fn default_fixtures() -> Vec<(&'static str, &'static str)> {
    vec![
        ("node", include_str!("../fixtures/node.json")),
        ("cusp", include_str!("../fixtures/cusp.json")),
        ("tacnode", include_str!("../fixtures/tacnode.json")),
        ("triple", include_str!("../fixtures/triple.json")),
        ("quadruple", include_str!("../fixtures/quadruple.json")),
        ("two_lines", include_str!("../fixtures/two_lines.json")),
    ]
}

fn rng_for(seed: u64, salt: &str) -> ChaCha8Rng {
    let h = salt.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    });
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

fn random_point<R: Rng + ?Sized>(rng: &mut R, candidates: &[Point]) -> Point {
    if candidates.is_empty() || rng.gen_ratio(1, 5) {
        Point::finite(random_rat(rng, 10))
    } else {
        candidates[rng.gen_range(0..candidates.len())].clone()
    }
}

fn support(fs: &[&RatFunc]) -> Result<Vec<Point>> {
    let mut pts = std::collections::BTreeSet::new();
    for f in fs {
        if !f.is_zero() {
            pts.extend(f.split()?.divisor.into_iter().map(|(p, _)| p));
        }
    }
    pts.insert(Point::Infinity);
    Ok(pts.into_iter().collect())
}

pub fn reciprocity(trials: usize, seed: u64) -> Vec<PropertyResult> {
    let mut rng = rng_for(seed, "reciprocity");
    let mut gm = PropertyResult::new("symbols.reciprocity.gm");
    let mut ga = PropertyResult::new("symbols.reciprocity.ga");
    for _ in 0..trials {
        let psi = random_split_func(&mut rng, 5, 10);
        let f = random_split_func(&mut rng, 5, 10);
        let ctx = || format!("psi = {psi}, f = {f}");
        gm.record(reciprocity_check(&psi, &f, SymbolTag::Gm).map(|r| r.holds()), ctx);
        ga.record(reciprocity_check(&psi, &f, SymbolTag::Ga).map(|r| r.holds()), ctx);
    }
    vec![gm, ga]
}

pub fn symbol_laws(trials: usize, seed: u64) -> Vec<PropertyResult> {
    let mut rng = rng_for(seed, "symbol laws");
    let mut bilinear = PropertyResult::new("symbols.bilinearity");
    let mut additive = PropertyResult::new("symbols.additivity_in_psi");
    let mut value = PropertyResult::new("symbols.value_property");
    for _ in 0..trials {
        let phi = random_split_func(&mut rng, 3, 10);
        let psi = random_split_func(&mut rng, 3, 10);
        let f = random_split_func(&mut rng, 3, 10);
        let g = random_split_func(&mut rng, 3, 10);
        let fg = &f * &g;
        let pts = support(&[&phi, &psi, &f, &g]).unwrap_or_default();
        let p = random_point(&mut rng, &pts);
        let ctx = || format!("phi = {phi}, psi = {psi}, f = {f}, g = {g}, p = {p}");
        bilinear.record(
            (|| {
                Ok(tame_symbol(&psi, &fg, &p)? == tame_symbol(&psi, &f, &p)? * tame_symbol(&psi, &g, &p)?
                    && residue_symbol(&psi, &fg, &p)?
                        == residue_symbol(&psi, &f, &p)? + residue_symbol(&psi, &g, &p)?)
            })(),
            ctx,
        );
        additive.record(
            (|| {
                Ok(tame_symbol(&(&phi * &psi), &f, &p)?
                    == tame_symbol(&phi, &f, &p)? * tame_symbol(&psi, &f, &p)?
                    && residue_symbol(&(&phi + &psi), &f, &p)?
                        == residue_symbol(&phi, &f, &p)? + residue_symbol(&psi, &f, &p)?)
            })(),
            ctx,
        );
        // value property at a zero or pole of f where psi is a regular unit
        value.record(
            (|| {
                let Some((c, m)) = f
                    .split()?
                    .divisor
                    .into_iter()
                    .find(|(c, _)| psi.val_at(c).is_ok_and(|v| v == 0))
                else {
                    return Ok(true);
                };
                let at = psi.eval_at(&c)?;
                Ok(tame_symbol(&psi, &f, &c)? == crate::funcfield::rat_pow(&at, m)?
                    && residue_symbol(&psi, &f, &c)? == crate::funcfield::int(m) * at)
            })(),
            ctx,
        );
    }
    vec![bilinear, additive, value]
}

pub fn modulus_vanishing(trials: usize, seed: u64) -> Vec<PropertyResult> {
    let mut rng = rng_for(seed, "modulus");
    let mut ga = PropertyResult::new("symbols.modulus_vanishing.ga");
    let mut gm = PropertyResult::new("symbols.modulus_vanishing.gm");
    for _ in 0..trials {
        // G_a: psi = P(1/(t - s)) with pole order k at s, modulus (k + 1)[s]
        let s = random_rat(&mut rng, 6);
        let k = rng.gen_range(1..=3);
        let inv = RatFunc::linear(&s).recip().expect("nonzero");
        let mut psi = RatFunc::zero();
        for e in 1..=k {
            let c = random_nonzero_rat(&mut rng, 5);
            psi = &psi + &(&RatFunc::constant(c) * &inv.pow(e).expect("nonzero"));
        }
        let m = Modulus::new([(Point::finite(s.clone()), k as u32 + 1)]).expect("positive");
        let ctx = || format!("psi = {psi}, modulus = {k}+1 at {s}");
        ga.record(
            (|| {
                if !is_modulus(&psi, &m, SymbolTag::Ga, &mut rng, 1)? {
                    return Ok(false);
                }
                let (a, b) = random_unit_mod(&mut rng, &m)?;
                Ok(evaluate_on_divisor(&psi, &a, &b, SymbolTag::Ga)?.is_zero())
            })(),
            ctx,
        );
        // G_m: psi with zeros and poles only at two points of the modulus
        let s2 = loop {
            let r = random_rat(&mut rng, 6);
            if r != s {
                break r;
            }
        };
        let e1: i64 = rng.gen_range(-3..=3);
        let e2: i64 = rng.gen_range(-3..=3);
        let psi = &RatFunc::linear(&s).pow(e1).expect("nonzero")
            * &(&RatFunc::linear(&s2).pow(e2).expect("nonzero")
                * &RatFunc::constant(random_nonzero_rat(&mut rng, 5)));
        let mut terms = vec![(Point::finite(s.clone()), 1), (Point::finite(s2.clone()), 1)];
        if e1 + e2 != 0 {
            terms.push((Point::Infinity, 1));
        }
        let m = Modulus::new(terms).expect("distinct points");
        let ctx = || format!("psi = {psi}");
        gm.record(
            (|| {
                if !is_modulus(&psi, &m, SymbolTag::Gm, &mut rng, 1)? {
                    return Ok(false);
                }
                let (a, b) = random_unit_mod(&mut rng, &m)?;
                Ok(evaluate_on_divisor(&psi, &a, &b, SymbolTag::Gm)?.is_one())
            })(),
            ctx,
        );
    }
    vec![ga, gm]
}

pub fn perfect_pairing() -> PropertyResult {
    let mut r = PropertyResult::new("infdiv.perfect_pairing");
    for nu in 1..=6 {
        r.record(pairing_matrix(nu).map(|m| !det(&m).is_zero()), || format!("nu = {nu}"));
    }
    r
}

pub fn duality(trials: usize, seed: u64) -> PropertyResult {
    let mut rng = rng_for(seed, "duality");
    let mut r = PropertyResult::new("motive.double_dual");
    for _ in 0..trials {
        let (t, v) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
        let (t2, v2) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
        let m = OneMotive::with_zero_map(standard_formal_group(t, v), standard_formal_group(t2, v2));
        r.record(double_dual_check(&m), || format!("(t, v) = ({t}, {v}), target ({t2}, {v2})"));
    }
    r
}

pub fn modulus_formula(trials: usize, seed: u64) -> PropertyResult {
    let mut rng = rng_for(seed, "modulus formula");
    let mut r = PropertyResult::new("curve.modulus_formula");
    for _ in 0..trials {
        let k = rng.gen_range(1..=4);
        let mut pts: Vec<(Place, u32)> = Vec::new();
        while pts.len() < k {
            let point = if rng.gen_ratio(1, 6) { Point::Infinity } else { Point::finite(random_rat(&mut rng, 8)) };
            let place = Place::new("C0", point);
            if pts.iter().all(|(p, _)| p != &place) {
                pts.push((place, rng.gen_range(1..=4)));
            }
        }
        let expected_lie: usize = pts.iter().map(|(_, n)| *n as usize - 1).sum();
        r.record(
            curve_from_modulus(&pts)
                .and_then(|cfg| divisor_group(&cfg))
                .map(|g| g.rank() == k - 1 && g.lie_dim() == expected_lie),
            || format!("modulus {pts:?}"),
        );
    }
    r
}

/// Kernel, Abel–Jacobi and duality properties on one curve.
pub fn curve_suites(name: &str, config: &CurveConfig, trials: usize, seed: u64) -> Vec<PropertyResult> {
    let mut rng = rng_for(seed, name);
    let mut kernels = PropertyResult::new(format!("{name}.kernel_bases"));
    let mut aj_kernel = PropertyResult::new(format!("{name}.abel_jacobi_kernel"));
    let mut homomorphism = PropertyResult::new(format!("{name}.abel_jacobi_homomorphism"));
    let mut scaling = PropertyResult::new(format!("{name}.scaling_invariance"));
    let mut dual = PropertyResult::new(format!("{name}.double_dual"));

    let alb = match albanese(config) {
        Ok(a) => a,
        Err(e) => {
            kernels.record(Err(e), || "albanese".into());
            return vec![kernels];
        }
    };
    for omega in &alb.etale_basis {
        kernels.record(
            Ok(degree_per_component(omega).values().all(|&n| n == 0)
                && pushforward_weil(omega, config).is_empty()),
            || format!("etale element {omega}"),
        );
    }
    let n = config.truncation();
    for delta in &alb.lie_basis {
        kernels.record(
            (|| {
                let phis = fml(delta, n)?;
                for sp in &config.singular_points {
                    if !pushforward_inf(&phis, sp, n)?.is_zero() {
                        return Ok(false);
                    }
                }
                Ok(true)
            })(),
            || format!("lie element {delta}"),
        );
    }
    dual.record(divisor_motive(config).and_then(|m| double_dual_check(&m)), || "divisor motive".into());

    match UnitSampler::new(config) {
        Ok(sampler) => {
            for _ in 0..trials {
                let h = sampler.sample(config, &mut rng);
                let ctx = || format!("{h:?}");
                aj_kernel.record(
                    h.clone().and_then(|h| {
                        let d = div_c(&h, config)?;
                        Ok(abel_jacobi(&d, config, &alb)?.is_identity())
                    }),
                    ctx,
                );
            }
        }
        Err(e) => aj_kernel.record(Err(e), || "unit sampler".into()),
    }

    for _ in 0..trials {
        let d1 = random_cycle(config, &mut rng, 10);
        let d2 = random_cycle(config, &mut rng, 10);
        homomorphism.record(
            (|| {
                let sum = crate::chow::ZeroCycle::new(d1.divisor().add(d2.divisor()), config)?;
                let lhs = abel_jacobi(&sum, config, &alb)?;
                let rhs = abel_jacobi(&d1, config, &alb)?.combine(&abel_jacobi(&d2, config, &alb)?);
                Ok(lhs == rhs)
            })(),
            || format!("D1 = {d1}, D2 = {d2}"),
        );
        scaling.record(
            (|| {
                let f = interpolate_cycle(&d1, config)?;
                let mut scaled = f.clone();
                for c in &config.components {
                    scaled = scaled.scale(c, &random_nonzero_rat(&mut rng, 10));
                }
                Ok(coordinates(&f, &alb)? == coordinates(&scaled, &alb)?)
            })(),
            || format!("D = {d1}"),
        );
    }
    vec![kernels, aj_kernel, homomorphism, scaling, dual]
}

/// All suites; `curves` defaults to the built-in fixtures when empty.
pub fn run(curves: &[(String, CurveConfig)], trials: usize, seed: u64) -> VerifyReport {
    let mut properties = Vec::new();
    properties.extend(reciprocity(trials, seed));
    properties.extend(symbol_laws(trials, seed));
    properties.extend(modulus_vanishing(trials, seed));
    properties.push(perfect_pairing());
    properties.push(duality(trials, seed));
    properties.push(modulus_formula(trials, seed));
    for (name, cfg) in curves {
        properties.extend(curve_suites(name, cfg, trials, seed));
    }
    properties.sort_by(|a, b| a.name.cmp(&b.name));
    VerifyReport { properties }
}

/// Loads the built-in fixtures.
pub fn fixture_curves() -> Result<Vec<(String, CurveConfig)>> {
    default_fixtures()
        .into_iter()
        .map(|(name, src)| Ok((name.to_string(), CurveConfig::from_json(src)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_fixtures() {
        let curves = fixture_curves().unwrap();
        let report = run(&curves, 5, 7);
        assert!(report.passed(), "{}", report.to_text());
    }
}
