//! Damped and overdamped relaxation of the width towards the minimum.

use sn_bifurcation::dynamics::{evolve_damped, evolve_overdamped, DynamicsConfig};
use sn_bifurcation::model::{canonical_model, PhysicalParams};

fn main() -> sn_bifurcation::Result<()> {
    let params = PhysicalParams::natural(1.0, 1.0)?;
    let model = canonical_model(&params);
    let config = DynamicsConfig::for_params(&params);

    let damped = evolve_damped(&model, &config, 10.0, 0.0)?;
    let over = evolve_overdamped(&model, 1.0, 10.0, &config)?;

    for (name, traj) in [("damped", &damped), ("overdamped", &over)] {
        let last = traj.last();
        println!(
            "{name:>10}: {:?} after {} steps, t = {:.3}, sigma = {:.9}",
            traj.terminal,
            traj.samples.len(),
            last.t,
            last.sigma
        );
    }

    println!("\ndamped trajectory, every 40th sample:");
    for s in damped.samples.iter().step_by(40).take(15) {
        println!("  t = {:8.3}  sigma = {:8.5}  E = {:+.6}", s.t, s.sigma, s.energy);
    }
    Ok(())
}
