//! Random Cartier units and their divisors, which lie in the kernel of the
//! Abel-Jacobi map.

use albanese::chow::{abel_jacobi, div_c, UnitSampler};
use albanese::curve::CurveConfig;
use albanese::motive::albanese;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> albanese::Result<()> {
    let path = format!("{}/fixtures/tacnode.json", env!("CARGO_MANIFEST_DIR"));
    let config = CurveConfig::from_json(&std::fs::read_to_string(path).expect("fixture"))?;
    let alb = albanese(&config)?;
    let sampler = UnitSampler::new(&config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    println!("unit lattice rank {}", sampler.rank());
    for _ in 0..5 {
        let h = sampler.sample(&config, &mut rng)?;
        let d = div_c(&h, &config)?;
        println!("h = {h}\n  div = {d}\n  AJ = {}", abel_jacobi(&d, &config, &alb)?);
    }
    Ok(())
}
