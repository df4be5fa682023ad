//! Albanese structure of the node, cusp and tacnode.

use albanese::curve::CurveConfig;
use albanese::motive::{albanese, divisor_motive, dualize};

fn main() -> albanese::Result<()> {
    for name in ["node", "cusp", "tacnode", "triple", "quadruple", "two_lines"] {
        let path = format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
        let config = CurveConfig::from_json(&std::fs::read_to_string(path).expect("fixture"))?;
        let alb = albanese(&config)?;
        let motive = divisor_motive(&config)?;
        println!("{name:<10} Alb = {:<12} motive {motive}  dual {}", alb.group.to_string(), dualize(&motive)?);
    }
    Ok(())
}
