//! Certify that G = <t, a | t^3 = a^3, ata = tat> is Q8 x| Z, with Z acting
//! by i -> j -> k -> i, using the four finite checks.

use cobord::coset::EnumerationLimits;
use cobord::models::{quaternion_order3, verify_virtually_cyclic_iso, Homomorphism, IsoCertificate};
use cobord::parse::{parse_presentation, parse_word};

fn main() -> anyhow::Result<()> {
    let g = parse_presentation("< t, a | t^3 = a^3, a t a = t a t >")?;
    let target = quaternion_order3();
    let w = |s: &str| parse_word(s, Some(g.generators()));

    let hom = Homomorphism::from_text(g.clone(), target.clone(), &[("t", "(1,1)"), ("a", "(-i,1)")])?;
    for s in ["a t a", "t a t", "t^3", "t a^-1", "a^-1 t"] {
        println!("{s:>8} -> {}", hom.image_label(&w(s)?)?);
    }
    let cert = IsoCertificate {
        hom,
        central_word: w("t^3")?,
        witnesses: vec![
            (target.parse_element("(i,0)")?, w("t a^-1")?),
            (target.parse_element("(k,0)")?, w("a^-1 t")?),
            (target.parse_element("(1,1)")?, w("t")?),
        ],
    };
    let report = verify_virtually_cyclic_iso(&cert, EnumerationLimits::default(), 1000)?;
    println!("{}", serde_json::to_string_pretty(&report)?);

    let wrong = Homomorphism::from_text(g, target, &[("t", "(1,1)"), ("a", "(i,1)")])?;
    let cert = IsoCertificate { hom: wrong, ..cert };
    let report = verify_virtually_cyclic_iso(&cert, EnumerationLimits::default(), 1000)?;
    println!("wrong lift fails at: {:?}: {}", report.first_failure(), report.relators.detail);
    Ok(())
}
