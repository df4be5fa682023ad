//! Abel-Jacobi coordinates and rational equivalence of 0-cycles.

use albanese::chow::chow_report;
use albanese::chow::ZeroCycle;
use albanese::curve::CurveConfig;

fn main() -> albanese::Result<()> {
    for (name, cycles) in [
        ("node", vec!["C0:2=+1,C0:3=-1", "C0:1=+1,C0:4=+1,C0:2=-2", "C0:5=+1"]),
        ("cusp", vec!["C0:2=+1,C0:3=-1", "C0:1=+1,C0:-1=+1,C0:inf=-2"]),
        ("tacnode", vec!["C0:1=+1,C0:2=-1"]),
    ] {
        let path = format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
        let config = CurveConfig::from_json(&std::fs::read_to_string(path).expect("fixture"))?;
        for src in cycles {
            let report = chow_report(&ZeroCycle::parse(src, &config)?, &config)?;
            let coords = report.coordinates.map_or("undefined".to_string(), |c| c.to_string());
            println!("{name:<8} {src:<28} AJ = {coords:<16} equivalent to 0: {}", report.equivalent);
        }
    }
    Ok(())
}
