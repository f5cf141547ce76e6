//! A free Gaussian packet spreads as σ(t) = σ√(1 + (ħt/mσ²)²).

use sn_bifurcation::field::{evolve_field, PdeConfig, RadialGrid, RadialState};
use sn_bifurcation::model::PhysicalParams;

fn main() -> sn_bifurcation::Result<()> {
    let mut config = PdeConfig::new(PhysicalParams::natural(1.0, 0.0)?);
    config.self_gravity = false;
    config.dt = 0.01;
    config.max_steps = 400;
    config.stride = 50;
    let state = RadialState::gaussian(RadialGrid::new(2048, 40.0)?, 1.0)?;
    for obs in evolve_field(&config, &state)? {
        let exact = (1.0 + obs.t * obs.t).sqrt();
        println!(
            "t = {:4.2}  width = {:.8}  exact = {:.8}  norm = {:.12}",
            obs.t, obs.sigma_eff, exact, obs.norm
        );
    }
    Ok(())
}
