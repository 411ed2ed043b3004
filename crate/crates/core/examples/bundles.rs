//! Mapping tori and bundles over the Klein bottle.

use std::collections::BTreeMap;

use cobord::abelian::abelian_invariants;
use cobord::builders::{klein_bundle, mapping_torus};
use cobord::coset::{group_order, EnumerationLimits};
use cobord::parse::{parse_presentation, parse_word};
use cobord::presentation::Presentation;
use cobord::words::{Generator, Word};

fn map(p: &Presentation, pairs: &[(&str, &str)]) -> anyhow::Result<BTreeMap<Generator, Word>> {
    pairs
        .iter()
        .map(|(g, w)| Ok((p.generator(g).expect("generator").clone(), parse_word(w, Some(p.generators()))?)))
        .collect()
}

fn main() -> anyhow::Result<()> {
    let q8 = parse_presentation("< u, v | u v u = v, v u v = u >")?;
    let mt = mapping_torus(&q8, &map(&q8, &[("u", "v u"), ("v", "u")])?)?;
    println!("{} [{:?}]", mt.presentation, mt.status);

    let f2 = parse_presentation("< tau, xi | >")?;
    let kb = klein_bundle(
        &f2,
        &map(&f2, &[("tau", "xi"), ("xi", "tau xi")])?,
        &map(&f2, &[("tau", "tau^-1"), ("xi", "xi^-1")])?,
    )?;
    let m = kb.presentation;
    println!("{m}");
    let h = m.add_relators(&[parse_word("x t x^-1 t", Some(m.generators()))?])?;
    println!("with x t x^-1 t: order {}, H1 {}", group_order(&h, EnumerationLimits::default())?, abelian_invariants(&h));
    Ok(())
}
