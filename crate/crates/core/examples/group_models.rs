//! Concrete groups as word-problem oracles: a homomorphism from the
//! presentation G onto SL(2, Z/3), closure orders and a failing relator.

use cobord::coset::{quotient_order, EnumerationLimits};
use cobord::models::{check_hom, closure_order, element_order, sl2_3, GroupModel, Homomorphism};
use cobord::parse::{parse_presentation, parse_word};

fn main() -> anyhow::Result<()> {
    let g = parse_presentation("< t, a | t^3 = a^3, a t a = t a t >")?;
    let m = GroupModel::ModPMatrix(sl2_3());

    let h = Homomorphism::from_text(g.clone(), m.clone(), &[("t", "[[1,1],[0,1]]"), ("a", "[[1,0],[2,1]]")])?;
    println!("relators hold: {:?}", check_hom(&h)?);
    let images: Vec<_> = h.images.values().cloned().collect();
    println!("order of the image: {}", closure_order(&m, &images, 10_000));
    println!("order of t's image: {}", element_order(&m, &images[1], 100));
    let t3 = parse_word("t^3", Some(g.generators()))?;
    println!("|G / <<t^3>>| = {}", quotient_order(&g, &[t3], EnumerationLimits::default())?);

    let bad = Homomorphism::from_text(g, m, &[("t", "[[1,0],[0,1]]"), ("a", "[[1,0],[2,1]]")])?;
    println!("with t -> I: {:?}", check_hom(&bad)?);
    Ok(())
}
