//! Equilibrium width across a mass range, written as CSV to stdout.

use sn_bifurcation::cli::{emit_table, Format};
use sn_bifurcation::landscape::{sweep_mass, Window};
use sn_bifurcation::model::PhysicalParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = PhysicalParams::natural(1.0, 1.0)?;
    let masses: Vec<f64> = (0..13).map(|i| 10f64.powf(-1.0 + i as f64 / 6.0)).collect();
    let window = Window { lo: 1e-6, hi: 1e9 };
    let diagram = sweep_mass(&params, &masses, window)?;
    emit_table(&diagram.rows, Format::Csv, std::io::stdout().lock())?;
    for w in &diagram.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}
