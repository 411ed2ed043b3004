//! Exact checks on the monodromy matrices.

use cobord::monodromy::{fiber_monodromy_order, isotopy_family, isotopy_family_checks, verify_matrix_identities};
use num_rational::BigRational;

fn main() {
    for report in [verify_matrix_identities(), isotopy_family_checks()] {
        for c in &report.checks {
            println!("[{}] {:<50} {}", if c.pass { "ok" } else { "FAIL" }, c.name, c.witness);
        }
        for f in &report.flags {
            println!("[flag] {f}");
        }
    }
    let half = BigRational::new(1.into(), 2.into());
    println!("phi_(1/2) = {}", isotopy_family().eval(&half));
    println!("fiber monodromy order: {}", fiber_monodromy_order());
}
