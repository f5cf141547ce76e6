//! Acceptance gate: one line per criterion, non-zero exit if any fails.
//!
//! Oracles are written out here from closed forms rather than taken from the
//! library.

use std::f64::consts::PI;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use sn_bifurcation::cli::{audit, Verdict};
use sn_bifurcation::dynamics::{
    basin_experiment, evolve_damped, evolve_overdamped, DynamicsConfig, Terminal, Trajectory,
};
use sn_bifurcation::field::{
    energy_components, evolve_field, ground_state, FieldObservables, PdeConfig, RadialGrid, RadialState,
};
use sn_bifurcation::landscape::{find_degenerate, stationary_points, Stability, Window};
use sn_bifurcation::model::{canonical_model, critical_mass_estimate, Constants, EnergyModel, PhysicalParams};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn natural(m: f64, lambda: f64) -> PhysicalParams {
    PhysicalParams::natural(m, lambda).unwrap()
}

fn three_root() -> EnergyModel {
    EnergyModel::from_pairs(
        &[(-2.0, -4.0), (14.0 / 3.0, -3.0), (-3.5, -2.0), (1.0, -1.0)],
        "three-root",
    )
    .unwrap()
}

fn pure_sn_minimum() -> Outcome {
    let p = natural(1.0, 0.0);
    let scan = stationary_points(&canonical_model(&p), Window::scaled(&p)).map_err(|e| e.to_string())?;
    let [pt] = scan.points.as_slice() else {
        return Err(format!("expected one stationary point, got {}", scan.count()));
    };
    let sigma = 1.5 * (2.0 * PI).sqrt();
    let energy = -1.0 / (6.0 * PI);
    let (es, ee) = (rel(pt.sigma, sigma), rel(pt.energy, energy));
    check(
        es <= 1e-10 && ee <= 1e-10 && pt.stability == Stability::Minimum,
        format!(
            "sigma* = {:.10}, E = {:.10} (rel errors {es:.1e}, {ee:.1e})",
            pt.sigma, pt.energy
        ),
    )
}

fn closed_form_roots() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let m = 10f64.powf(rng.gen_range(-1.0..1.0));
        let lambda = 10f64.powf(rng.gen_range(-3.0..3.0));
        let p = natural(m, lambda);
        let a = 3.0 / (4.0 * m);
        let b = m * m / (2.0 * PI).sqrt();
        let c = lambda / (2.0 * PI).powf(1.5);
        let expected = (2.0 * a + (4.0 * a * a + 12.0 * b * c).sqrt()) / (2.0 * b);
        let scan = stationary_points(&canonical_model(&p), Window::scaled(&p)).map_err(|e| e.to_string())?;
        if scan.count() != 1 || scan.points[0].stability != Stability::Minimum {
            return Err(format!("m = {m}, lambda = {lambda}: {:?}", scan.points));
        }
        worst = worst.max(rel(scan.points[0].sigma, expected));
    }
    check(
        worst <= 1e-10,
        format!("50 models, one minimum each, worst rel error {worst:.1e}"),
    )
}

fn fold_detection() -> Outcome {
    let family = |mu: f64| {
        EnergyModel::from_pairs(
            &[(-0.75 * mu, -4.0), (7.0 / 3.0, -3.0), (-2.5, -2.0), (1.0, -1.0)],
            "fold",
        )
    };
    let rep = find_degenerate(family, (0.8, 1.5), Window::new(0.2, 10.0).unwrap()).map_err(|e| e.to_string())?;
    let sigma_c = rep.sigma_critical.unwrap_or(f64::NAN);
    let base = natural(1.0, 1.0);
    let canon = find_degenerate(
        |m| Ok(canonical_model(&base.with_mass(m)?)),
        (0.1, 10.0),
        Window::new(1e-6, 1e6).unwrap(),
    )
    .map_err(|e| e.to_string())?;
    check(
        rep.found && (sigma_c - 1.0).abs() <= 1e-6 && !canon.found,
        format!(
            "constructed fold at sigma = {sigma_c:.9}; canonical family found = {}",
            canon.found
        ),
    )
}

fn critical_mass() -> Outcome {
    let mc = critical_mass_estimate(&Constants::codata(), 1e-7).map_err(|e| e.to_string())?;
    check(
        rel(mc, 1.186e-17) <= 1e-2 && (1e-18..=1e-16).contains(&mc),
        format!("m_c = {mc:.4e} kg"),
    )
}

fn quadratic(k: f64, s0: f64) -> EnergyModel {
    EnergyModel::from_pairs(&[(0.5 * k, 2.0), (-k * s0, 1.0), (0.5 * k * s0 * s0, 0.0)], "quadratic").unwrap()
}

fn linear_rate() -> Outcome {
    let (k, big_gamma, s0) = (2.0, 0.5, 3.0);
    let traj = evolve_overdamped(&quadratic(k, s0), big_gamma, s0 + 1.0, &DynamicsConfig::default())
        .map_err(|e| e.to_string())?;
    // Least-squares slope of ln|σ − σ₀| over amplitudes 1 down to 1e-4.
    let pts: Vec<(f64, f64)> = traj
        .samples
        .iter()
        .map(|s| (s.t, (s.sigma - s0).abs()))
        .filter(|&(_, a)| (1e-4..=1.0).contains(&a))
        .map(|(t, a)| (t, a.ln()))
        .collect();
    let decades = (pts.first().unwrap().1 - pts.last().unwrap().1) / 10f64.ln();
    let n = pts.len() as f64;
    let (st, sy) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
    let (mt, my) = (st / n, sy / n);
    let slope =
        pts.iter().map(|p| (p.0 - mt) * (p.1 - my)).sum::<f64>() / pts.iter().map(|p| (p.0 - mt).powi(2)).sum::<f64>();
    let rate = -slope;
    check(
        decades >= 2.0 && rel(rate, big_gamma * k) <= 1e-2,
        format!(
            "fitted rate {rate:.6} vs Gamma k = {} over {decades:.1} decades ({} samples)",
            big_gamma * k,
            pts.len()
        ),
    )
}

fn dissipation() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let mut worst: f64 = f64::NEG_INFINITY;
    let mut steps = 0usize;
    for case in 0..20 {
        let (model, sigma0) = if rng.gen_bool(0.5) {
            let p = natural(
                10f64.powf(rng.gen_range(-0.5..0.5)),
                10f64.powf(rng.gen_range(-1.0..1.0)),
            );
            let m = canonical_model(&p);
            let s = rng.gen_range(0.3..30.0) * p.sigma0();
            (m, s)
        } else {
            (three_root(), rng.gen_range(1.2..6.0))
        };
        let damped = case % 2 == 1;
        let traj: Trajectory = if damped {
            let cfg = DynamicsConfig {
                m_eff: 10f64.powf(rng.gen_range(-1.0..1.0)),
                gamma: 10f64.powf(rng.gen_range(-1.0..1.0)),
                t_end: 2000.0,
                ..Default::default()
            };
            let v0 = rng.gen_range(-0.1..0.1);
            let t = evolve_damped(&model, &cfg, sigma0, v0).map_err(|e| format!("case {case}: {e}"))?;
            for w in t.samples.windows(2) {
                let h =
                    |s: &sn_bifurcation::dynamics::TrajectorySample| 0.5 * cfg.m_eff * s.sigma_dot.powi(2) + s.energy;
                let (h0, h1) = (h(&w[0]), h(&w[1]));
                worst = worst.max((h1 - h0) / h0.abs());
            }
            t
        } else {
            let g = 10f64.powf(rng.gen_range(-1.0..1.0));
            let t = evolve_overdamped(&model, g, sigma0, &DynamicsConfig::default())
                .map_err(|e| format!("case {case}: {e}"))?;
            for w in t.samples.windows(2) {
                worst = worst.max((w[1].energy - w[0].energy) / w[0].energy.abs());
            }
            t
        };
        steps += traj.samples.len() - 1;
    }
    check(
        worst <= 1e-9,
        format!("20 cases, {steps} accepted steps, largest relative rise {worst:.2e}"),
    )
}

fn basin_selection() -> Outcome {
    let cfg = DynamicsConfig::default();
    let a = basin_experiment(&three_root(), 1.0, (3.9, 4.1), &cfg).map_err(|e| e.to_string())?;
    let b = basin_experiment(&three_root(), 1.0, (3.9, 4.1), &cfg).map_err(|e| e.to_string())?;
    let bits = |t: &Trajectory| -> Vec<u64> {
        t.samples
            .iter()
            .flat_map(|s| [s.t, s.sigma, s.sigma_dot, s.energy, s.grad])
            .map(f64::to_bits)
            .collect()
    };
    let identical =
        bits(&a.trajectories.0) == bits(&b.trajectories.0) && bits(&a.trajectories.1) == bits(&b.trajectories.1);
    let ok = matches!(a.fates.0, Terminal::Converged { sigma } if (sigma - 2.0).abs() <= 1e-6)
        && a.fates.1 == Terminal::EscapedHigh
        && a.separated
        && identical;
    check(
        ok,
        format!(
            "fates {:?} / {:?}, separated = {}, bit-identical rerun = {identical}",
            a.fates.0, a.fates.1, a.separated
        ),
    )
}

fn quadrature_fidelity() -> Outcome {
    let lambda = 1.0;
    let params = natural(1.0, lambda);
    let mut worst: f64 = 0.0;
    for sigma in [0.5, 1.0, 2.0] {
        let grid = RadialGrid::new(4096, 12.0 * sigma).unwrap();
        let state = RadialState::gaussian(grid, sigma).unwrap();
        let obs = energy_components(&grid, &state, &params).map_err(|e| e.to_string())?;
        let t = 3.0 / (4.0 * sigma * sigma);
        let g = -1.0 / ((2.0 * PI).sqrt() * sigma);
        let r = lambda / ((2.0 * PI).powf(1.5) * sigma.powi(3));
        worst = worst
            .max(rel(obs.kinetic, t))
            .max(rel(obs.e_grav, g))
            .max(rel(obs.e_rep, r));
    }
    check(
        worst <= 1e-6,
        format!("sigma in {{0.5, 1, 2}}, worst rel error {worst:.2e}"),
    )
}

fn variational_dominance() -> Outcome {
    let bound = -1.0 / (6.0 * PI);
    let mut cfg = PdeConfig::new(natural(1.0, 0.0));
    cfg.n = 1024;
    let coarse = ground_state(&cfg).map_err(|e| e.to_string())?;
    cfg.n = 2048;
    let fine = ground_state(&cfg).map_err(|e| e.to_string())?;
    let change = rel(fine.energy, coarse.energy);
    check(
        coarse.energy <= bound + 1e-6 && fine.energy <= bound + 1e-6 && change <= 1e-4,
        format!(
            "E(n=1024) = {:.8}, E(n=2048) = {:.8}, bound {bound:.7}, refinement change {change:.1e}",
            coarse.energy, fine.energy
        ),
    )
}

fn energy_drift(obs: &[FieldObservables]) -> f64 {
    let e0 = obs[0].e_total;
    obs.iter().map(|o| (o.e_total - e0).abs()).fold(0.0, f64::max) / e0.abs()
}

fn real_time_integrity() -> Outcome {
    // Norm over 10⁴ self-consistent steps.
    let mut cfg = PdeConfig::new(natural(1.0, 1.0));
    cfg.max_steps = 10_000;
    cfg.stride = 50;
    let long = evolve_field(&cfg, &cfg.initial_state().unwrap()).map_err(|e| e.to_string())?;
    let norm_drift = long.iter().map(|o| (o.norm - 1.0).abs()).fold(0.0, f64::max);

    // Free spreading.
    let mut free = PdeConfig::new(natural(1.0, 0.0));
    free.self_gravity = false;
    free.dt = 0.01;
    free.max_steps = 300;
    let s0 = RadialState::gaussian(RadialGrid::new(2048, 40.0).unwrap(), 1.0).unwrap();
    let spread = evolve_field(&free, &s0).map_err(|e| e.to_string())?;
    let width_err = spread
        .iter()
        .map(|o| rel(o.sigma_eff, (1.0 + o.t * o.t).sqrt()))
        .fold(0.0, f64::max);

    // Energy drift under dt halving over the same interval.
    let horizon = 20.0;
    let mut run = |dt: f64| -> Result<f64, String> {
        cfg.dt = dt;
        cfg.max_steps = (horizon / dt).round() as usize;
        cfg.stride = 10;
        evolve_field(&cfg, &cfg.initial_state().unwrap())
            .map(|o| energy_drift(&o))
            .map_err(|e| e.to_string())
    };
    let (d1, d2) = (run(0.02)?, run(0.01)?);
    let ratio = d1 / d2;
    check(
        norm_drift <= 1e-8 && width_err <= 1e-3 && ratio >= 4.0 && d1 <= 1e-4,
        format!(
            "norm drift {norm_drift:.1e} over 1e4 steps; free width error {width_err:.1e}; energy drift {d1:.2e} -> {d2:.2e} (ratio {ratio:.4})"
        ),
    )
}

fn claims_audit() -> Outcome {
    let rep = audit();
    let verdict = |id: &str| rep.claim(id).map(|c| c.verdict);
    let mut ok = verdict("mc_order") == Some(Verdict::Consistent);
    let mut parts = vec![format!("mc_order {:?}", verdict("mc_order"))];
    for id in [
        "eq15_dimensions",
        "curvature_estimate",
        "tau_range",
        "fold_exists",
        "sigma_c_order",
    ] {
        let c = rep.claim(id);
        ok &= c.is_some_and(|c| c.verdict == Verdict::Inconsistent && !c.computed_value.is_empty());
        parts.push(format!("{id} {:?}", verdict(id)));
    }
    let curv = rep
        .claim("curvature_estimate")
        .and_then(|c| c.computed)
        .unwrap_or(f64::NAN);
    let tau = rep.claim("tau_range").and_then(|c| c.computed).unwrap_or(f64::NAN);
    ok &= rel(curv, 6.674e-24) <= 1e-3 && rel(tau, 1.5e9) <= 1e-2;
    check(
        ok,
        format!("{}; curvature {curv:.4e} J/m^2, tau {tau:.4e} s", parts.join(", ")),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("pure self-gravity Gaussian minimum", pure_sn_minimum),
        ("root solver vs closed form", closed_form_roots),
        ("fold detection", fold_detection),
        ("critical-mass estimate", critical_mass),
        ("overdamped linear rate", linear_rate),
        ("dissipation invariants", dissipation),
        ("basin selection", basin_selection),
        ("field quadrature fidelity", quadrature_fidelity),
        ("variational dominance", variational_dominance),
        ("real-time integrity", real_time_integrity),
        ("claims audit verdicts", claims_audit),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("[PASS] {:>2}. {name}: {d} ({secs:.1}s)", i + 1),
            Err(d) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name}: {d} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
