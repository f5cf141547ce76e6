//! Spherically symmetric solver for the Schrödinger–Newton equation with a
//! local repulsive term.
//!
//! The wave function is stored as `u(r) = r ψ(r)` on a uniform grid. The
//! gravitational potential is assembled by cumulative trapezoidal quadrature
//! of the enclosed mass and the outer shell integral; scalar observables use
//! Simpson's rule. Ground states come from imaginary-time propagation and
//! dynamics from a Strang split-step scheme.

mod grid;
mod kinetic;

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::landscape::canonical_root;
use crate::model::{canonical_model, PhysicalParams};

pub use grid::{RadialGrid, RadialState};

use grid::simpson;
use kinetic::{gradient_norm_sq, KineticPropagator, SineTransform, Time};

/// Densities must integrate to one within this tolerance.
const NORM_TOL: f64 = 1e-6;

/// The local functional is `(λ_f/2)∫ρ²` with Hamiltonian term `λ_f ρ`. The
/// landscape coefficient `λ/(2π)^{3/2}` is the Gaussian value of `λ∫ρ²`, so
/// `λ_f = 2λ` keeps the field energy and the reduced landscape on the same
/// footing.
const LOCAL_COUPLING_FACTOR: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Kinetic step diagonalized exactly in the sine basis.
    SplitStep,
    /// Kinetic step by Crank–Nicolson on the three-point Laplacian.
    CrankNicolson,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PdeConfig {
    pub params: PhysicalParams,
    pub n: usize,
    /// Outer radius; defaults to 12× the initial width.
    pub r_max: Option<f64>,
    /// Width of the Gaussian initial state; defaults to the minimum of the
    /// reduced energy landscape.
    pub initial_width: Option<f64>,
    pub dt: f64,
    pub max_steps: usize,
    pub energy_tol: f64,
    pub scheme: Scheme,
    /// Observables are emitted every `stride` real-time steps.
    pub stride: usize,
    /// Switches the gravitational potential off for free propagation tests.
    pub self_gravity: bool,
}

impl PdeConfig {
    pub fn new(params: PhysicalParams) -> Self {
        let t_unit = params.mass * params.sigma0().powi(2) / params.constants.hbar;
        Self {
            params,
            n: 1024,
            r_max: None,
            initial_width: None,
            dt: 0.02 * t_unit,
            max_steps: 100_000,
            energy_tol: 1e-12 * params.e0(),
            scheme: Scheme::SplitStep,
            stride: 10,
            self_gravity: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidParameter(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.energy_tol.is_finite() && self.energy_tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "energy_tol must be positive, got {}",
                self.energy_tol
            )));
        }
        if self.stride == 0 {
            return Err(Error::InvalidParameter("stride must be at least 1".into()));
        }
        if let Some(w) = self.initial_width {
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "initial_width must be positive, got {w}"
                )));
            }
        }
        self.grid().map(|_| ())
    }

    pub fn initial_width(&self) -> f64 {
        self.initial_width.unwrap_or_else(|| {
            let (a, b, c) = canonical_model(&self.params)
                .canonical_coefficients()
                .expect("canonical model has canonical shape");
            canonical_root(a, b, c)
        })
    }

    pub fn grid(&self) -> Result<RadialGrid> {
        RadialGrid::new(self.n, self.r_max.unwrap_or(12.0 * self.initial_width()))
    }

    pub fn initial_state(&self) -> Result<RadialState> {
        RadialState::gaussian(self.grid()?, self.initial_width())
    }

    fn couplings(&self) -> Couplings {
        let mut c = Couplings::from(&self.params);
        if !self.self_gravity {
            c.gm2 = 0.0;
        }
        c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldObservables {
    pub t: f64,
    pub norm: f64,
    pub sigma_eff: f64,
    #[serde(rename = "T")]
    pub kinetic: f64,
    pub e_grav: f64,
    pub e_rep: f64,
    pub e_total: f64,
}

#[derive(Debug, Clone, Copy)]
struct Couplings {
    hbar: f64,
    mass: f64,
    gm2: f64,
    lambda: f64,
}

impl From<&PhysicalParams> for Couplings {
    fn from(p: &PhysicalParams) -> Self {
        Self {
            hbar: p.constants.hbar,
            mass: p.mass,
            gm2: p.constants.g * p.mass * p.mass,
            lambda: LOCAL_COUPLING_FACTOR * p.lambda,
        }
    }
}

/// `U(r) = −Gm²[M(r)/r + ∫_r^{r_max} 4πρ r' dr']`, sampled at the grid nodes.
pub fn grav_potential(grid: &RadialGrid, density: &[f64], params: &PhysicalParams) -> Result<Vec<f64>> {
    if density.len() != grid.n {
        return Err(Error::InvalidParameter(format!(
            "expected {} density samples, got {}",
            grid.n,
            density.len()
        )));
    }
    if let Some(bad) = density.iter().find(|d| !(d.is_finite() && **d >= 0.0)) {
        return Err(Error::InvalidParameter(format!(
            "density must be finite and non-negative, got {bad}"
        )));
    }
    let mass: Vec<f64> = grid.radii().zip(density).map(|(r, d)| 4.0 * PI * d * r * r).collect();
    let norm = simpson(grid, &mass);
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::Unnormalized { norm });
    }
    Ok(potential(grid, density, Couplings::from(params).gm2))
}

fn potential(grid: &RadialGrid, density: &[f64], gm2: f64) -> Vec<f64> {
    let n = grid.n;
    let h = grid.dr();
    let mut enclosed = Vec::with_capacity(n);
    let mut inner = Vec::with_capacity(n);
    let (mut m_acc, mut i_acc) = (0.0, 0.0);
    let (mut f1_prev, mut f2_prev) = (0.0, 0.0);
    for (r, d) in grid.radii().zip(density) {
        let f2 = 4.0 * PI * d * r;
        let f1 = f2 * r;
        m_acc += 0.5 * h * (f1_prev + f1);
        i_acc += 0.5 * h * (f2_prev + f2);
        enclosed.push(m_acc);
        inner.push(i_acc);
        (f1_prev, f2_prev) = (f1, f2);
    }
    let total = i_acc;
    grid.radii()
        .enumerate()
        .map(|(i, r)| -gm2 * (enclosed[i] / r + total - inner[i]))
        .collect()
}

pub fn effective_width(grid: &RadialGrid, state: &RadialState) -> Result<f64> {
    state.check_normalized(NORM_TOL)?;
    Ok(width_of(grid, state))
}

fn width_of(grid: &RadialGrid, state: &RadialState) -> f64 {
    let f: Vec<f64> = grid
        .radii()
        .zip(&state.u)
        .map(|(r, z)| 4.0 * PI * z.norm_sqr() * r * r)
        .collect();
    (2.0 * simpson(grid, &f) / 3.0).sqrt()
}

pub fn energy_components(grid: &RadialGrid, state: &RadialState, params: &PhysicalParams) -> Result<FieldObservables> {
    state.check_normalized(NORM_TOL)?;
    let dst = SineTransform::new(grid.n);
    Ok(observe(grid, state, Couplings::from(params), &dst, 0.0))
}

fn observe(grid: &RadialGrid, state: &RadialState, c: Couplings, dst: &SineTransform, t: f64) -> FieldObservables {
    let density = state.density();
    let u_pot = potential(grid, &density, c.gm2);
    let shell = |g: &dyn Fn(usize, f64) -> f64| -> f64 {
        let f: Vec<f64> = grid
            .radii()
            .enumerate()
            .map(|(i, r)| 4.0 * PI * r * r * g(i, r))
            .collect();
        simpson(grid, &f)
    };
    let kinetic = c.hbar * c.hbar / (2.0 * c.mass) * 4.0 * PI * gradient_norm_sq(grid, dst, &state.u);
    let e_grav = 0.5 * shell(&|i, _| density[i] * u_pot[i]);
    let e_rep = 0.5 * c.lambda * shell(&|i, _| density[i] * density[i]);
    FieldObservables {
        t,
        norm: state.norm(),
        sigma_eff: width_of(grid, state),
        kinetic,
        e_grav,
        e_rep,
        e_total: kinetic + e_grav + e_rep,
    }
}

/// Multiplies by `exp(−i V δ/ħ)` (real time) or `exp(−V δ/ħ)` (imaginary
/// time) with `V = U + λρ` evaluated on the incoming state.
fn potential_step(grid: &RadialGrid, u: &mut [Complex64], c: Couplings, delta: f64, time: Time) {
    let density: Vec<f64> = u
        .iter()
        .enumerate()
        .map(|(i, z)| z.norm_sqr() / grid.r(i).powi(2))
        .collect();
    let u_pot = potential(grid, &density, c.gm2);
    for (i, z) in u.iter_mut().enumerate() {
        let phase = (u_pot[i] + c.lambda * density[i]) * delta / c.hbar;
        *z *= match time {
            Time::Real => Complex64::from_polar(1.0, -phase),
            Time::Imaginary => Complex64::new((-phase).exp(), 0.0),
        };
    }
}

fn kinetic_half(config: &PdeConfig, grid: &RadialGrid, time: Time) -> KineticPropagator {
    let c = config.couplings();
    let half = 0.5 * config.dt;
    match config.scheme {
        Scheme::SplitStep => KineticPropagator::spectral(grid, c.hbar, c.mass, half, time),
        Scheme::CrankNicolson => KineticPropagator::crank_nicolson(grid, c.hbar, c.mass, half, time),
    }
}

#[derive(Debug, Clone)]
pub struct GroundState {
    pub state: RadialState,
    pub energy: f64,
    pub observables: FieldObservables,
    pub steps: usize,
}

/// Imaginary-time relaxation from the configured Gaussian, renormalizing
/// after every step, until the per-step energy change drops to `energy_tol`.
pub fn ground_state(config: &PdeConfig) -> Result<GroundState> {
    config.validate()?;
    let grid = config.grid()?;
    let c = config.couplings();
    let dst = SineTransform::new(grid.n);
    let kin = kinetic_half(config, &grid, Time::Imaginary);
    let mut state = config.initial_state()?;
    let mut prev = observe(&grid, &state, c, &dst, 0.0).e_total;
    let mut change = f64::INFINITY;
    for step in 1..=config.max_steps {
        kin.apply(&mut state.u);
        potential_step(&grid, &mut state.u, c, config.dt, Time::Imaginary);
        kin.apply(&mut state.u);
        state.normalize()?;
        let obs = observe(&grid, &state, c, &dst, 0.0);
        if !obs.e_total.is_finite() {
            return Err(Error::NonFinite(format!("ground-state energy at step {step}")));
        }
        change = (obs.e_total - prev).abs();
        if change <= config.energy_tol {
            return Ok(GroundState {
                state,
                energy: obs.e_total,
                observables: obs,
                steps: step,
            });
        }
        prev = obs.e_total;
    }
    Err(Error::NoConvergence {
        steps: config.max_steps,
        energy: prev,
        change,
    })
}

/// Real-time propagation for `max_steps` steps of `dt`, emitting observables
/// at `t = 0`, every `stride` steps and at the final step.
pub fn evolve_field(config: &PdeConfig, state0: &RadialState) -> Result<Vec<FieldObservables>> {
    config.validate()?;
    state0.check_normalized(NORM_TOL)?;
    let grid = state0.grid;
    let c = config.couplings();
    let dst = SineTransform::new(grid.n);
    let kin = kinetic_half(config, &grid, Time::Real);
    let mut state = state0.clone();
    let mut out = vec![observe(&grid, &state, c, &dst, 0.0)];
    for step in 1..=config.max_steps {
        kin.apply(&mut state.u);
        potential_step(&grid, &mut state.u, c, config.dt, Time::Real);
        kin.apply(&mut state.u);
        let drift = (state.norm() - 1.0).abs();
        if drift.is_nan() || drift > NORM_TOL {
            return Err(Error::NormDrift { step, drift });
        }
        if step % config.stride == 0 || step == config.max_steps {
            out.push(observe(&grid, &state, c, &dst, step as f64 * config.dt));
        }
    }
    Ok(out)
}

/// Writes the state as CSV `r,re_u,im_u`.
pub fn write_state_csv(state: &RadialState, mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "r,re_u,im_u")?;
    for (r, z) in state.grid.radii().zip(&state.u) {
        writeln!(w, "{:.16e},{:.16e},{:.16e}", r, z.re, z.im)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn natural(lambda: f64) -> PhysicalParams {
        PhysicalParams::natural(1.0, lambda).unwrap()
    }

    fn gaussian(sigma: f64, n: usize) -> RadialState {
        RadialState::gaussian(RadialGrid::new(n, 12.0 * sigma).unwrap(), sigma).unwrap()
    }

    // Closed-form Gaussian expectations.
    fn kinetic_exact(sigma: f64) -> f64 {
        0.75 / (sigma * sigma)
    }
    fn grav_exact(sigma: f64) -> f64 {
        -1.0 / ((2.0 * PI).sqrt() * sigma)
    }
    fn rep_exact(sigma: f64, lambda: f64) -> f64 {
        lambda / ((2.0 * PI).powf(1.5) * sigma.powi(3))
    }

    #[test]
    fn gaussian_energy_components() {
        for sigma in [0.5, 1.0, 2.0] {
            let s = gaussian(sigma, 4096);
            let obs = energy_components(&s.grid, &s, &natural(1.0)).unwrap();
            assert_relative_eq!(obs.kinetic, kinetic_exact(sigma), max_relative = 1e-6);
            assert_relative_eq!(obs.e_grav, grav_exact(sigma), max_relative = 1e-6);
            assert_relative_eq!(obs.e_rep, rep_exact(sigma, 1.0), max_relative = 1e-6);
            assert_relative_eq!(obs.sigma_eff, sigma, max_relative = 1e-6);
        }
        let s = gaussian(1.0, 4096);
        let obs = energy_components(&s.grid, &s, &natural(1.0)).unwrap();
        assert_relative_eq!(obs.kinetic, 0.75, max_relative = 1e-6);
        assert_relative_eq!(obs.e_grav, -0.3989423, max_relative = 1e-6);
        assert_relative_eq!(obs.e_rep, 0.0634936, max_relative = 1e-6);
        let s2 = gaussian(2.0, 4096);
        assert_relative_eq!(
            energy_components(&s2.grid, &s2, &natural(0.0)).unwrap().kinetic,
            0.1875,
            max_relative = 1e-6
        );
    }

    #[test]
    fn potential_of_gaussian() {
        let s = gaussian(1.0, 4096);
        let u = grav_potential(&s.grid, &s.density(), &natural(0.0)).unwrap();
        assert!((u[0] + 2.0 / PI.sqrt()).abs() < 1e-4);
        let i10 = (10.0 / s.grid.dr()).round() as usize - 1;
        assert_relative_eq!(u[i10], -1.0 / s.grid.r(i10), max_relative = 1e-4);
    }

    #[test]
    fn potential_rejects_bad_density() {
        let s = gaussian(1.0, 256);
        let half: Vec<f64> = s.density().iter().map(|d| 0.5 * d).collect();
        assert!(matches!(
            grav_potential(&s.grid, &half, &natural(0.0)),
            Err(Error::Unnormalized { .. })
        ));
        let mut neg = s.density();
        neg[3] = -1.0;
        assert!(grav_potential(&s.grid, &neg, &natural(0.0)).is_err());
    }

    #[test]
    fn effective_width_checks_normalization() {
        assert_relative_eq!(
            effective_width(&gaussian(2.0, 2048).grid, &gaussian(2.0, 2048)).unwrap(),
            2.0,
            max_relative = 1e-6
        );
        let mut s = gaussian(1.0, 512);
        s.u.iter_mut().for_each(|z| *z *= 0.5f64.sqrt());
        assert!(matches!(effective_width(&s.grid, &s), Err(Error::Unnormalized { .. })));
    }

    #[test]
    fn ground_state_beats_gaussian_bound() {
        let g = ground_state(&PdeConfig::new(natural(0.0))).unwrap();
        assert!(g.energy <= -1.0 / (6.0 * PI), "{}", g.energy);
        assert!((g.state.norm() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn repulsion_broadens_ground_state() {
        let a = ground_state(&PdeConfig::new(natural(0.0))).unwrap();
        let b = ground_state(&PdeConfig::new(natural(1.0))).unwrap();
        assert!(b.observables.sigma_eff > a.observables.sigma_eff);
    }

    #[test]
    fn ground_state_budget_exhaustion_is_numerical() {
        let mut cfg = PdeConfig::new(natural(0.0));
        cfg.max_steps = 3;
        let err = ground_state(&cfg).unwrap_err();
        assert!(matches!(err, Error::NoConvergence { steps: 3, .. }) && err.is_numerical());
    }

    #[test]
    fn free_gaussian_spreads() {
        let mut cfg = PdeConfig::new(natural(0.0));
        cfg.self_gravity = false;
        cfg.dt = 0.01;
        cfg.max_steps = 300;
        cfg.stride = 10;
        let s = RadialState::gaussian(RadialGrid::new(2048, 40.0).unwrap(), 1.0).unwrap();
        for obs in evolve_field(&cfg, &s).unwrap() {
            assert_relative_eq!(obs.sigma_eff, (1.0 + obs.t * obs.t).sqrt(), max_relative = 1e-3);
        }
    }

    #[test]
    fn crank_nicolson_conserves_norm() {
        let mut cfg = PdeConfig::new(natural(1.0));
        cfg.scheme = Scheme::CrankNicolson;
        cfg.max_steps = 500;
        cfg.stride = 100;
        let s = cfg.initial_state().unwrap();
        let obs = evolve_field(&cfg, &s).unwrap();
        assert!(obs.iter().all(|o| (o.norm - 1.0).abs() < 1e-8));
        let e0 = obs[0].e_total;
        assert!(obs.iter().all(|o| (o.e_total - e0).abs() < 1e-3 * e0.abs()));
    }

    #[test]
    fn state_dump_layout() {
        let s = gaussian(1.0, 64);
        let mut buf = Vec::new();
        write_state_csv(&s, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("r,re_u,im_u\n"));
        assert_eq!(text.lines().count(), 65);
    }
}
