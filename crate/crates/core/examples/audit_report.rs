//! Recomputes the quoted order-of-magnitude figures and prints the verdicts.

use sn_bifurcation::cli::{audit, Format};

fn main() -> std::io::Result<()> {
    let report = audit();
    for claim in &report.claims {
        println!(
            "{:<22} {:<13} {}",
            claim.claim_id,
            claim.verdict.as_str(),
            claim.computed_value
        );
    }
    println!();
    report.write(Format::Json, std::io::stdout().lock())
}
