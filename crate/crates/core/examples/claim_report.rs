//! Run the full claim registry and print the JSON report.

use cobord::claims::{run_claims, Context};
use cobord::coset::EnumerationLimits;

fn main() -> anyhow::Result<()> {
    let report = run_claims(None, &Context::new(EnumerationLimits::default()))?;
    println!("{}", report.to_json());
    std::process::exit(report.exit_code());
}
