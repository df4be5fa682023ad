//! Curves obtained by gluing the support of a modulus, and the modulus test
//! for rational maps to G_m and G_a.

use albanese::curve::{curve_from_modulus, Place};
use albanese::funcfield::{int, parse_ratfunc, Point};
use albanese::infdiv::divisor_group;
use albanese::symbols::{is_modulus, Modulus, SymbolTag};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> albanese::Result<()> {
    let m = [
        (Place::new("C0", Point::int(0)), 3),
        (Place::new("C0", Point::int(1)), 1),
        (Place::new("C0", Point::Infinity), 2),
    ];
    let g = divisor_group(&curve_from_modulus(&m)?)?;
    println!("modulus 3[0] + [1] + 2[inf]: rank {}, Lie dimension {}", g.rank(), g.lie_dim());

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (psi, tag, m) in [
        ("1/t^2", SymbolTag::Ga, "3[0]"),
        ("1/t^3", SymbolTag::Ga, "3[0]"),
        ("t", SymbolTag::Gm, "[0] + [inf]"),
        ("(t-1)/(t+1)", SymbolTag::Gm, "[1] + [-1]"),
    ] {
        let modulus = match m {
            "3[0]" => Modulus::new([(Point::finite(int(0)), 3)])?,
            "[0] + [inf]" => Modulus::new([(Point::int(0), 1), (Point::Infinity, 1)])?,
            _ => Modulus::new([(Point::int(1), 1), (Point::int(-1), 1)])?,
        };
        let psi = parse_ratfunc(psi)?;
        println!("{tag} {psi}: {m} is a modulus: {}", is_modulus(&psi, &modulus, tag, &mut rng, 8)?);
    }
    Ok(())
}
