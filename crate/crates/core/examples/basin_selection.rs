//! Two starting widths on either side of a maximum end in different states.
//!
//! `E'σ⁵ = −(σ−1)(σ−2)(σ−4)` has a minimum at 2 between maxima at 1 and 4.

use sn_bifurcation::dynamics::{evolve_overdamped, DynamicsConfig};
use sn_bifurcation::model::EnergyModel;

fn main() -> sn_bifurcation::Result<()> {
    let model = EnergyModel::from_pairs(
        &[(1.0, -1.0), (-3.5, -2.0), (14.0 / 3.0, -3.0), (-2.0, -4.0)],
        "three-root",
    )?;
    let config = DynamicsConfig {
        sigma_floor: 1e-3,
        sigma_ceiling: 50.0,
        ..DynamicsConfig::default()
    };
    for sigma0 in [0.9, 1.1, 3.9, 4.1] {
        let traj = evolve_overdamped(&model, 1.0, sigma0, &config)?;
        println!("sigma0 = {sigma0}: {:?}", traj.terminal);
    }
    Ok(())
}
