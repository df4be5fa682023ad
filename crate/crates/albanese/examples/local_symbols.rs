//! Local symbols and the reciprocity law on the projective line.

use albanese::funcfield::{format_rat, parse_ratfunc, Point};
use albanese::symbols::{local_symbol, reciprocity_check, SymbolTag};

fn main() -> albanese::Result<()> {
    let psi = parse_ratfunc("t*(t-2)/(t+1)")?;
    let f = parse_ratfunc("(t-1)^2/(t-3)")?;
    for tag in [SymbolTag::Gm, SymbolTag::Ga] {
        let report = reciprocity_check(&psi, &f, tag)?;
        println!("{tag}: psi = {psi}, f = {f}");
        for (p, v) in &report.values {
            println!("  {p:<6} {}", format_rat(v));
        }
        println!("  aggregate {}", format_rat(&report.aggregate));
    }
    let v = local_symbol(SymbolTag::Ga, &parse_ratfunc("1/t^2")?, &parse_ratfunc("1+t")?, &Point::int(0))?;
    println!("(1/t^2, 1+t)_0 in G_a = {v}");
    Ok(())
}
