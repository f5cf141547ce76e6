//! Find where a minimum and a maximum annihilate in a one-parameter family.
//!
//! The family `E'σ⁵ = 3μ − 7σ + 5σ² − σ³` has folds at μ = 1 and μ = 49/81.

use sn_bifurcation::landscape::{find_degenerate, stationary_points, Window};
use sn_bifurcation::model::EnergyModel;

fn family(mu: f64) -> sn_bifurcation::Result<EnergyModel> {
    // Integrated term by term from the gradient above.
    EnergyModel::from_pairs(
        &[(-0.75 * mu, -4.0), (7.0 / 3.0, -3.0), (-2.5, -2.0), (1.0, -1.0)],
        format!("fold(mu={mu})"),
    )
}

fn main() -> sn_bifurcation::Result<()> {
    let window = Window::new(0.05, 50.0)?;
    for mu in [0.5, 0.7, 0.9, 1.1] {
        let scan = stationary_points(&family(mu)?, window)?;
        let kinds: Vec<_> = scan
            .points
            .iter()
            .map(|p| format!("{:.4} {}", p.sigma, p.stability.as_str()))
            .collect();
        println!("mu = {mu:.2}: {}", kinds.join(", "));
    }
    for range in [(0.8, 1.5), (0.5, 0.8)] {
        let report = find_degenerate(family, range, window)?;
        match (report.mu_critical, report.sigma_critical) {
            (Some(mu), Some(sigma)) => println!("fold in {range:?}: mu_c = {mu:.10}, sigma_c = {sigma:.10}"),
            _ => println!("no fold in {range:?}: {}", report.diagnostics),
        }
    }
    Ok(())
}
