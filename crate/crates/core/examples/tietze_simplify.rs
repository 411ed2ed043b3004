//! Simplify the three handle relations in x, y, t by Tietze moves, then push
//! the word t^3 through the elimination map and compute the quotient order.

use cobord::abelian::abelian_invariants;
use cobord::coset::{group_order, EnumerationLimits};
use cobord::parse::{parse_presentation, parse_word};

fn main() -> anyhow::Result<()> {
    let p = parse_presentation("< x, y, t | x^-1 y t^-1 x^-1 t, x^-1 y x y, t x t^-1 y^-1 >")?;
    let s = p.simplify(100);
    println!("input:      {p}");
    println!("simplified: {} ({} steps)", s.presentation, s.steps);
    for (g, w) in &s.eliminations {
        println!("  {g} = {w}");
    }
    println!("abelianization: {}", abelian_invariants(&s.presentation));

    let t3 = s.transport(&parse_word("t^3", Some(p.generators()))?);
    let q = s.presentation.add_relators(&[t3])?;
    println!("order after adding t^3: {}", group_order(&q, EnumerationLimits::default())?);
    Ok(())
}
