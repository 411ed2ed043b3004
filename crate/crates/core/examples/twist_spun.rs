//! The twist-spun trefoil groups G_n and the orders of G_n / <<t^m>>.

use cobord::abelian::abelian_invariants;
use cobord::builders::{hatx_quotient_order, twist_spun_trefoil};
use cobord::coset::EnumerationLimits;

fn main() -> anyhow::Result<()> {
    for n in 1..=5 {
        let g = twist_spun_trefoil(n)?;
        println!("{g}  H1 = {}", abelian_invariants(&g));
    }
    println!();
    print!("{:>4}", "n\\m");
    for m in 1..=6 {
        print!("{m:>6}");
    }
    println!();
    for n in 1..=4 {
        print!("{n:>4}");
        for m in 1..=6 {
            print!("{:>6}", hatx_quotient_order(n, m, EnumerationLimits::default())?.to_string());
        }
        println!();
    }
    Ok(())
}
