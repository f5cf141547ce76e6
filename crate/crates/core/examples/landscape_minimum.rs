//! Locate the equilibrium width of the Gaussian landscape and compare the
//! numerical root with the closed form.
//!
//!     cargo run --example landscape_minimum -- 1.0 0.5

use sn_bifurcation::landscape::{canonical_root, evaluate, stationary_points, Window};
use sn_bifurcation::model::{canonical_model, PhysicalParams};

fn main() -> sn_bifurcation::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<f64>().expect("numeric argument"));
    let mass = args.next().unwrap_or(1.0);
    let lambda = args.next().unwrap_or(1.0);

    let params = PhysicalParams::natural(mass, lambda)?;
    let model = canonical_model(&params);
    let scan = stationary_points(&model, Window::scaled(&params))?;
    let (a, b, c) = model.canonical_coefficients().expect("three-term model");

    println!("m = {mass}, lambda = {lambda}");
    for p in &scan.points {
        println!(
            "  sigma = {:.10}  E = {:.10}  E'' = {:.4e}  ({})",
            p.sigma,
            p.energy,
            p.curvature,
            p.stability.as_str()
        );
    }
    println!("  closed form sigma* = {:.10}", canonical_root(a, b, c));

    for s in [0.5, 1.0, 2.0, 5.0, 20.0] {
        let sample = evaluate(&model, s * params.sigma0())?;
        println!("  E({:>5.2} sigma0) = {:+.6e}", s, sample.energy);
    }
    Ok(())
}
