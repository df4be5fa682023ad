//! Cartier duality of formal groups and of 1-motives.

use albanese::motive::{cartier_dual, double_dual_check, dualize, standard_formal_group, OneMotive};

fn main() -> albanese::Result<()> {
    let g = standard_formal_group(2, 3);
    let d = cartier_dual(&g);
    println!("formal group of rank {} and Lie dimension {} has Cartier dual {d}", g.rank(), g.lie_dim());
    let m = OneMotive::with_zero_map(standard_formal_group(1, 2), standard_formal_group(2, 0));
    println!("M = {m}\nM^v = {}\nM^vv = M: {}", dualize(&m)?, double_dual_check(&m)?);
    Ok(())
}
