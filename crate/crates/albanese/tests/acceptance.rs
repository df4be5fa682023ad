//! Acceptance criteria, one pass/fail line each. Runs without the libtest
//! harness so every line is printed; exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::time::Instant;

use albanese::chow::{abel_jacobi, coordinates, div_c, interpolate_cycle, random_cycle, rationally_equivalent, UnitSampler, ZeroCycle};
use albanese::curve::{curve_from_modulus, ComponentId, CurveConfig, Divisor, Place};
use albanese::funcfield::{frac, int, Point, Rat};
use albanese::infdiv::{divisor_group, pairing_matrix};
use albanese::linalg::det;
use albanese::motive::{albanese, divisor_motive, double_dual_check, standard_formal_group, OneMotive};
use albanese::sample::{random_nonzero_rat, random_rat, random_split_func};
use albanese::symbols::{reciprocity_check, SymbolTag};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const ZOO: [(&str, (usize, usize)); 5] = [
    ("node", (1, 0)),
    ("cusp", (0, 1)),
    ("tacnode", (1, 1)),
    ("triple", (2, 0)),
    ("quadruple", (3, 0)),
];

fn fixture_src(name: &str) -> String {
    let path = format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).expect("fixture")
}

fn fixture(name: &str) -> CurveConfig {
    CurveConfig::from_json(&fixture_src(name)).expect("valid fixture")
}

// Independent oracles, written against the raw JSON.

/// Rank of a rational matrix by plain elimination.
fn rank(mut m: Vec<Vec<Rat>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let k = &m[i][c] / &m[r][c];
                let row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(row) {
                    *x -= &k * y;
                }
            }
        }
        r += 1;
    }
    r
}

struct RawPoint {
    branches: Vec<(String, String)>,
    conductors: Vec<usize>,
    /// generator tuples as dense per-branch coefficient lists, index = exponent
    generators: Vec<Vec<Vec<Rat>>>,
}

fn parse_raw(src: &str) -> (Vec<String>, Vec<RawPoint>, usize) {
    let v: Value = serde_json::from_str(src).unwrap();
    let comps = v["components"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap().to_string()).collect();
    let mut pts = Vec::new();
    let mut max_n = 0;
    for sp in v["singular_points"].as_array().unwrap() {
        let branches: Vec<(String, String)> = sp["branches"]
            .as_array()
            .unwrap()
            .iter()
            .map(|b| (b["component"].as_str().unwrap().to_string(), b["point"].as_str().unwrap().to_string()))
            .collect();
        let nb = branches.len();
        let (conductors, generators) = if sp["kind"] == "ordinary" {
            let gens = (0..nb)
                .map(|i| (0..nb).map(|j| if i == j { vec![int(0), int(1)] } else { vec![] }).collect())
                .collect();
            (vec![0; nb], gens)
        } else {
            let conductors = sp["conductors"].as_array().unwrap().iter().map(|c| c.as_u64().unwrap() as usize).collect();
            let gens = sp["generators"]
                .as_array()
                .unwrap()
                .iter()
                .map(|g| {
                    g.as_array()
                        .unwrap()
                        .iter()
                        .map(|b| {
                            let mut dense = Vec::new();
                            for (e, c) in b.as_object().unwrap() {
                                let e: usize = e.parse().unwrap();
                                if dense.len() <= e {
                                    dense.resize(e + 1, int(0));
                                }
                                let (n, d) = c.as_str().unwrap().split_once('/').unwrap_or((c.as_str().unwrap(), "1"));
                                dense[e] = frac(n.parse().unwrap(), d.parse().unwrap());
                            }
                            dense
                        })
                        .collect()
                })
                .collect();
            (conductors, gens)
        };
        max_n = max_n.max(conductors.iter().copied().max().unwrap_or(0));
        pts.push(RawPoint { branches, conductors, generators });
    }
    (comps, pts, max_n + 2)
}

/// Étale rank: kernel dimension of (degree rows ; push-forward rows) over
/// the branch places.
fn oracle_etale_rank(src: &str) -> usize {
    let (comps, pts, _) = parse_raw(src);
    let places: Vec<(usize, &(String, String))> =
        pts.iter().enumerate().flat_map(|(i, p)| p.branches.iter().map(move |b| (i, b))).collect();
    let mut rows = Vec::new();
    for c in &comps {
        rows.push(places.iter().map(|(_, b)| if &b.0 == c { int(1) } else { int(0) }).collect());
    }
    for i in 0..pts.len() {
        rows.push(places.iter().map(|(j, _)| if *j == i { int(1) } else { int(0) }).collect());
    }
    places.len() - rank(rows)
}

/// Lie dimension: principal parts of pole order at most the conductor,
/// modulo those pairing nontrivially with the ideal span, built densely.
fn oracle_lie_dim(src: &str) -> usize {
    let (_, pts, n) = parse_raw(src);
    let mut total = 0;
    for p in &pts {
        let nb = p.branches.len();
        let trunc = |v: &[Rat]| -> Vec<Rat> {
            (1..=n).map(|e| v.get(e).cloned().unwrap_or_else(|| int(0))).collect()
        };
        let flat = |t: &[Vec<Rat>]| -> Vec<Rat> { t.iter().flat_map(|b| trunc(b)).collect() };
        let mul = |a: &[Vec<Rat>], b: &[Vec<Rat>]| -> Vec<Vec<Rat>> {
            a.iter()
                .zip(b)
                .map(|(x, y)| {
                    let mut out = vec![int(0); n + 1];
                    for (i, xi) in x.iter().enumerate() {
                        for (j, yj) in y.iter().enumerate() {
                            if i + j <= n {
                                out[i + j] += xi * yj;
                            }
                        }
                    }
                    out
                })
                .collect()
        };
        // all products of up to n generators span the ideal mod u^{n+1}
        let mut layer: Vec<Vec<Vec<Rat>>> = p.generators.clone();
        let mut span: Vec<Vec<Rat>> = layer.iter().map(|t| flat(t)).collect();
        for _ in 1..n {
            let mut next = Vec::new();
            for a in &layer {
                for g in &p.generators {
                    next.push(mul(a, g));
                }
            }
            span.extend(next.iter().map(|t| flat(t)));
            layer = next;
        }
        // unknowns (branch q, pole order k ≤ n_q); constraint for each
        // spanning vector g: Σ a_{q,k} · k · g_{q,k} = 0
        let unknowns: Vec<(usize, usize)> =
            (0..nb).flat_map(|q| (1..=p.conductors[q]).map(move |k| (q, k))).collect();
        let rows: Vec<Vec<Rat>> = span
            .iter()
            .map(|g| unknowns.iter().map(|&(q, k)| int(k as i64) * &g[q * n + k - 1]).collect())
            .collect();
        total += unknowns.len() - if unknowns.is_empty() { 0 } else { rank(rows) };
    }
    total
}

// Criteria

fn reciprocity_suite() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let start = Instant::now();
    for i in 0..200 {
        let psi = random_split_func(&mut rng, 5, 10);
        let f = random_split_func(&mut rng, 5, 10);
        let gm = reciprocity_check(&psi, &f, SymbolTag::Gm).map_err(|e| e.to_string())?;
        let ga = reciprocity_check(&psi, &f, SymbolTag::Ga).map_err(|e| e.to_string())?;
        if !gm.aggregate.is_one() || !ga.aggregate.is_zero() {
            return Err(format!("pair {i}: psi = {psi}, f = {f}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed.as_secs_f64() >= 10.0 {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("200 pairs, product 1 and sum 0, {:.2}s", elapsed.as_secs_f64()))
}

fn singularity_zoo() -> Result<String, String> {
    let mut seen = Vec::new();
    for (name, expected) in ZOO {
        let src = fixture_src(name);
        let alb = albanese(&fixture(name)).map_err(|e| e.to_string())?;
        let got = (alb.group.torus_rank, alb.group.vectorial_dim);
        let oracle = (oracle_etale_rank(&src), oracle_lie_dim(&src));
        if got != expected || oracle != expected {
            return Err(format!("{name}: library {got:?}, oracle {oracle:?}, expected {expected:?}"));
        }
        seen.push(format!("{name} {got:?}"));
    }
    Ok(seen.join(", "))
}

fn modulus_formula() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for i in 0..20 {
        let k = rng.gen_range(1..=4);
        let mut pts: Vec<(Place, u32)> = Vec::new();
        while pts.len() < k {
            let point = if rng.gen_ratio(1, 5) { Point::Infinity } else { Point::finite(random_rat(&mut rng, 9)) };
            let place = Place::new("C0", point);
            if pts.iter().all(|(p, _)| *p != place) {
                pts.push((place, rng.gen_range(1..=4)));
            }
        }
        let g = curve_from_modulus(&pts).and_then(|c| divisor_group(&c)).map_err(|e| e.to_string())?;
        let lie: usize = pts.iter().map(|(_, n)| *n as usize - 1).sum();
        if g.lie_dim() != lie || g.rank() != k - 1 {
            return Err(format!("modulus {i}: got ({}, {}), expected ({}, {lie})", g.rank(), g.lie_dim(), k - 1));
        }
    }
    Ok("20 moduli, rank #Supp - 1 and Lie dim sum(n_i - 1)".into())
}

fn abel_jacobi_kernel() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut nontrivial = 0;
    for (name, _) in ZOO {
        let cfg = fixture(name);
        let alb = albanese(&cfg).map_err(|e| e.to_string())?;
        let sampler = UnitSampler::new(&cfg).map_err(|e| e.to_string())?;
        for i in 0..100 {
            let h = sampler.sample(&cfg, &mut rng).map_err(|e| format!("{name}: {e}"))?;
            let d = div_c(&h, &cfg).map_err(|e| e.to_string())?;
            if !d.is_zero() {
                nontrivial += 1;
            }
            let p = abel_jacobi(&d, &cfg, &alb).map_err(|e| e.to_string())?;
            if !p.is_identity() {
                return Err(format!("{name} unit {i}: h = {h}, AJ = {p}"));
            }
        }
    }
    Ok(format!("500 units, {nontrivial} with nonzero divisor, all map to identity"))
}

fn nodal_cross_ratio() -> Result<String, String> {
    let cfg = fixture("node");
    let alb = albanese(&cfg).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..20 {
        let a = random_nonzero_rat(&mut rng, 12);
        let b = if i % 5 == 0 { a.clone() } else { random_nonzero_rat(&mut rng, 12) };
        let d = Divisor::from_terms([
            (Place::new("C0", Point::finite(a.clone())), 1),
            (Place::new("C0", Point::finite(b.clone())), -1),
        ]);
        let z = ZeroCycle::new(d, &cfg).map_err(|e| e.to_string())?;
        let p = abel_jacobi(&z, &cfg, &alb).map_err(|e| e.to_string())?;
        let verdict = rationally_equivalent(&z, &cfg).map_err(|e| e.to_string())?;
        if p.torus != vec![&a / &b] || !p.vectorial.is_empty() || verdict != (a == b) {
            return Err(format!("a = {a}, b = {b}: AJ = {p}, verdict {verdict}"));
        }
    }
    Ok("20 pairs, AJ([a]-[b]) = a/b, equivalent iff a = b".into())
}

fn perfect_pairing() -> Result<String, String> {
    for nu in 1..=6i64 {
        let m = pairing_matrix(nu).map_err(|e| e.to_string())?;
        // Res(u^{-i} d(u^j)) = j when i = j, else 0
        let oracle: Vec<Vec<Rat>> = (1..=nu)
            .map(|i| (1..=nu).map(|j| if i == j { int(j) } else { int(0) }).collect())
            .collect();
        let factorial: Rat = (1..=nu).map(int).product();
        if m != oracle || det(&m) != factorial || rank(m.clone()) != nu as usize {
            return Err(format!("nu = {nu}"));
        }
    }
    Ok("nu = 1..6 invertible".into())
}

fn duality_involution() -> Result<String, String> {
    for (name, _) in ZOO {
        let m = divisor_motive(&fixture(name)).map_err(|e| e.to_string())?;
        if !double_dual_check(&m).map_err(|e| e.to_string())? {
            return Err(name.into());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..50 {
        let (t, v) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
        let (t2, v2) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
        let m = OneMotive::with_zero_map(standard_formal_group(t, v), standard_formal_group(t2, v2));
        if !double_dual_check(&m).map_err(|e| e.to_string())? {
            return Err(format!("({t}, {v}) -> ({t2}, {v2})"));
        }
    }
    Ok("5 zoo motives and 50 random structures".into())
}

fn scaling_invariance() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let configs: Vec<(&str, CurveConfig)> = ZOO.iter().map(|(n, _)| (*n, fixture(n))).collect();
    let albs: BTreeMap<&str, _> = configs.iter().map(|(n, c)| (*n, albanese(c).unwrap())).collect();
    for i in 0..50 {
        let (name, cfg) = &configs[i % configs.len()];
        let d = random_cycle(cfg, &mut rng, 10);
        let f = interpolate_cycle(&d, cfg).map_err(|e| e.to_string())?;
        let c = random_nonzero_rat(&mut rng, 20);
        let scaled = f.scale(&ComponentId::new("C0"), &c);
        let a = coordinates(&f, &albs[name]).map_err(|e| e.to_string())?;
        let b = coordinates(&scaled, &albs[name]).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("{name}: D = {d}, c = {c}"));
        }
    }
    Ok("50 cycles".into())
}

type Criterion = (&'static str, fn() -> Result<String, String>);

fn main() {
    let criteria: [Criterion; 8] = [
        ("reciprocity suite", reciprocity_suite),
        ("singularity zoo", singularity_zoo),
        ("modulus formula", modulus_formula),
        ("abel-jacobi kernel", abel_jacobi_kernel),
        ("nodal cross-ratio", nodal_cross_ratio),
        ("perfect pairing", perfect_pairing),
        ("duality involution", duality_involution),
        ("scaling invariance", scaling_invariance),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS  {}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {}. {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
