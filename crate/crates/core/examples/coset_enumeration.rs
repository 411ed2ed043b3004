//! Enumerate the cosets of the trivial subgroup of the quaternion group and
//! of a subgroup, under both strategies, and print the table as CSV.

use cobord::coset::{enumerate, EnumerationLimits, Strategy};
use cobord::parse::{parse_presentation, parse_word};

fn main() -> anyhow::Result<()> {
    let q8 = parse_presentation("< u, v | u v u = v, v u v = u >")?;
    for strategy in [Strategy::Hlt, Strategy::Felsch] {
        let limits = EnumerationLimits::default().with_strategy(strategy);
        let table = enumerate(&q8, &[], limits)?.complete().expect("Q8 is finite");
        println!("{strategy}: {} cosets (peak {})", table.n_cosets(), table.cosets_defined_peak());
    }

    let u = parse_word("u", Some(q8.generators()))?;
    let table = enumerate(&q8, &[u], EnumerationLimits::default())?.complete().expect("finite index");
    println!("index of <u>: {}", table.n_cosets());
    print!("{}", table.to_csv());

    for (g, perm) in table.permutation_rep()? {
        println!("{g} -> {perm:?}");
    }
    Ok(())
}
