//! Order-of-magnitude numbers in SI units: critical mass for a cutoff
//! length, curvature at the minimum and the linearized departure time.

use sn_bifurcation::dynamics::collapse_timescale;
use sn_bifurcation::landscape::{stationary_points, Window};
use sn_bifurcation::model::{canonical_model, critical_mass_estimate, lambda_from_length, PhysicalParams};

fn main() -> sn_bifurcation::Result<()> {
    let l_reg = 1e-7;
    let probe = PhysicalParams::si(1e-17, 0.0)?;
    let m_c = critical_mass_estimate(&probe.constants, l_reg)?;
    println!("cutoff {l_reg:e} m  ->  m_c = {m_c:.4e} kg");

    for mass in [0.3 * m_c, m_c, 3.0 * m_c] {
        let base = PhysicalParams::si(mass, 0.0)?;
        let params = base.with_lambda(lambda_from_length(&base, l_reg)?)?;
        let model = canonical_model(&params);
        let scan = stationary_points(&model, Window::scaled(&params))?;
        let Some(min) = scan.points.first() else {
            println!("m = {mass:.3e} kg: no stationary point");
            continue;
        };
        let big_gamma = 1.0 / (1e3 * mass);
        let tau = collapse_timescale(big_gamma, min.curvature)?;
        println!(
            "m = {mass:.3e} kg: sigma* = {:.4e} m, E'' = {:.4e} J/m^2, tau = {:.4e} s",
            min.sigma, min.curvature, tau.tau
        );
    }
    Ok(())
}
