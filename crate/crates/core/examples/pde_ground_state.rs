//! Imaginary-time ground state of the radial field equation, compared with
//! the best Gaussian.

use sn_bifurcation::field::{ground_state, PdeConfig};
use sn_bifurcation::landscape::{stationary_points, Window};
use sn_bifurcation::model::{canonical_model, PhysicalParams};

fn main() -> sn_bifurcation::Result<()> {
    for lambda in [0.0, 1.0, 5.0] {
        let params = PhysicalParams::natural(1.0, lambda)?;
        let gaussian = stationary_points(&canonical_model(&params), Window::scaled(&params))?.points[0];
        let g = ground_state(&PdeConfig::new(params))?;
        println!(
            "lambda = {lambda}: E = {:.8} (Gaussian {:.8}), width {:.5} (Gaussian {:.5}), {} steps",
            g.energy, gaussian.energy, g.observables.sigma_eff, gaussian.sigma, g.steps
        );
    }
    Ok(())
}
