//! Reduced width dynamics on an energy landscape.
//!
//! Two modes are provided: the damped second-order equation
//! `M_eff σ̈ + γ σ̇ = −E'(σ)` and its overdamped limit, the gradient flow
//! `σ̇ = −Γ E'(σ)`. Both are integrated with an adaptive Dormand–Prince 5(4)
//! pair. Every accepted step is recorded, which makes the dissipation
//! properties directly checkable on the output.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{EnergyModel, PhysicalParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DynamicsConfig {
    /// Effective inertia of the width coordinate.
    pub m_eff: f64,
    /// Damping coefficient γ of the second-order mode.
    pub gamma: f64,
    /// Mobility Γ of the overdamped mode.
    pub big_gamma: f64,
    /// Initial step.
    pub dt: f64,
    pub t_end: f64,
    pub rel_tol: f64,
    /// Absolute error tolerance, in the units of the state components.
    pub abs_tol: f64,
    /// Convergence when the residual force drops below
    /// `conv_tol · Σ|terms of E'|`.
    pub conv_tol: f64,
    pub sigma_floor: f64,
    pub sigma_ceiling: f64,
    pub max_steps: usize,
}

impl Default for DynamicsConfig {
    fn default() -> Self {
        Self {
            m_eff: 1.5,
            gamma: 1.0,
            big_gamma: 1.0,
            dt: 1e-3,
            t_end: 1e20,
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            conv_tol: 1e-9,
            sigma_floor: 1e-6,
            sigma_ceiling: 1e6,
            max_steps: 1_000_000,
        }
    }
}

impl DynamicsConfig {
    /// Defaults adapted to `params`: inertia 3m/2, escape bounds and
    /// absolute tolerance scaled by σ₀.
    pub fn for_params(params: &PhysicalParams) -> Self {
        let s0 = params.sigma0();
        Self {
            m_eff: 1.5 * params.mass,
            abs_tol: 1e-12 * s0,
            sigma_floor: 1e-6 * s0,
            sigma_ceiling: 1e6 * s0,
            ..Self::default()
        }
    }

    fn validate_common(&self) -> Result<()> {
        let positive = [
            ("dt", self.dt),
            ("t_end", self.t_end),
            ("rel_tol", self.rel_tol),
            ("abs_tol", self.abs_tol),
            ("conv_tol", self.conv_tol),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.sigma_floor > 0.0 && self.sigma_floor < self.sigma_ceiling && self.sigma_ceiling.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "escape bounds must satisfy 0 < floor < ceiling, got [{}, {}]",
                self.sigma_floor, self.sigma_ceiling
            )));
        }
        if self.max_steps == 0 {
            return Err(Error::InvalidParameter("max_steps must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectorySample {
    pub t: f64,
    pub sigma: f64,
    pub sigma_dot: f64,
    pub energy: f64,
    pub grad: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Terminal {
    Converged { sigma: f64 },
    EscapedLow,
    EscapedHigh,
    Horizon,
}

impl Terminal {
    pub fn same_kind(&self, other: &Terminal) -> bool {
        std::mem::discriminant(self) == std::mem::discriminant(other)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
    pub terminal: Terminal,
}

impl Trajectory {
    pub fn last(&self) -> &TrajectorySample {
        self.samples.last().expect("trajectory always holds the initial sample")
    }
}

/// Right-hand side of a first-order system; `None` when the state left the
/// physical domain (σ ≤ 0) or produced non-finite values.
trait System<const N: usize> {
    fn rhs(&self, y: &[f64; N]) -> Option<[f64; N]>;
    fn sample(&self, t: f64, y: &[f64; N]) -> TrajectorySample;
    fn converged(&self, y: &[f64; N]) -> bool;
}

struct Damped<'a> {
    model: &'a EnergyModel,
    m_eff: f64,
    gamma: f64,
    conv_tol: f64,
}

impl System<2> for Damped<'_> {
    fn rhs(&self, y: &[f64; 2]) -> Option<[f64; 2]> {
        let [sigma, v] = *y;
        if sigma.is_nan() || sigma <= 0.0 {
            return None;
        }
        let a = (-self.model.gradient(sigma) - self.gamma * v) / self.m_eff;
        (a.is_finite() && v.is_finite()).then_some([v, a])
    }

    fn sample(&self, t: f64, y: &[f64; 2]) -> TrajectorySample {
        TrajectorySample {
            t,
            sigma: y[0],
            sigma_dot: y[1],
            energy: self.model.energy(y[0]),
            grad: self.model.gradient(y[0]),
        }
    }

    fn converged(&self, y: &[f64; 2]) -> bool {
        let [sigma, v] = *y;
        let residual = self.model.gradient(sigma).abs() + self.gamma * v.abs() + self.m_eff * v * v / sigma;
        residual <= self.conv_tol * self.model.gradient_scale(sigma)
    }
}

struct Overdamped<'a> {
    model: &'a EnergyModel,
    big_gamma: f64,
    conv_tol: f64,
}

impl System<1> for Overdamped<'_> {
    fn rhs(&self, y: &[f64; 1]) -> Option<[f64; 1]> {
        let sigma = y[0];
        if sigma.is_nan() || sigma <= 0.0 {
            return None;
        }
        let v = -self.big_gamma * self.model.gradient(sigma);
        v.is_finite().then_some([v])
    }

    fn sample(&self, t: f64, y: &[f64; 1]) -> TrajectorySample {
        let grad = self.model.gradient(y[0]);
        TrajectorySample {
            t,
            sigma: y[0],
            sigma_dot: -self.big_gamma * grad,
            energy: self.model.energy(y[0]),
            grad,
        }
    }

    fn converged(&self, y: &[f64; 1]) -> bool {
        self.model.gradient(y[0]).abs() <= self.conv_tol * self.model.gradient_scale(y[0])
    }
}

// Dormand–Prince 5(4) tableau. The systems are autonomous, so the stage
// times are not needed.
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// One trial step; returns the 5th-order solution and the scaled error norm.
fn dopri_step<const N: usize, S: System<N>>(
    sys: &S,
    y: &[f64; N],
    h: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Option<([f64; N], f64)> {
    let mut k = [[0.0; N]; 7];
    k[0] = sys.rhs(y)?;
    for s in 1..7 {
        let mut ys = *y;
        for (i, yi) in ys.iter_mut().enumerate() {
            *yi += h * (0..s).map(|j| A[s][j] * k[j][i]).sum::<f64>();
        }
        k[s] = sys.rhs(&ys)?;
    }
    let mut y_new = *y;
    let mut err2 = 0.0;
    for i in 0..N {
        y_new[i] += h * (0..7).map(|j| B[j] * k[j][i]).sum::<f64>();
        let e = h * (0..7).map(|j| E[j] * k[j][i]).sum::<f64>();
        let scale = abs_tol + rel_tol * y[i].abs().max(y_new[i].abs());
        err2 += (e / scale).powi(2);
    }
    let err = (err2 / N as f64).sqrt();
    (err.is_finite() && y_new.iter().all(|v| v.is_finite())).then_some((y_new, err))
}

fn integrate<const N: usize, S: System<N>>(sys: &S, y0: [f64; N], cfg: &DynamicsConfig) -> Result<Trajectory> {
    let mut t = 0.0;
    let mut y = y0;
    let mut h = cfg.dt.min(cfg.t_end);
    let mut samples = vec![sys.sample(t, &y)];

    let escaped = |sigma: f64| {
        if sigma < cfg.sigma_floor {
            Some(Terminal::EscapedLow)
        } else if sigma > cfg.sigma_ceiling {
            Some(Terminal::EscapedHigh)
        } else {
            None
        }
    };
    if let Some(term) = escaped(y[0]) {
        return Ok(Trajectory {
            samples,
            terminal: term,
        });
    }
    if sys.converged(&y) {
        return Ok(Trajectory {
            samples,
            terminal: Terminal::Converged { sigma: y[0] },
        });
    }

    let mut accepted = 0usize;
    loop {
        if t >= cfg.t_end {
            return Ok(Trajectory {
                samples,
                terminal: Terminal::Horizon,
            });
        }
        if accepted >= cfg.max_steps {
            return Err(Error::StepBudget {
                steps: accepted,
                t,
                sigma: y[0],
            });
        }
        let last_step = h >= cfg.t_end - t;
        if last_step {
            h = cfg.t_end - t;
        }
        if t + h <= t || h < 4.0 * f64::EPSILON * t.abs() {
            let last = samples.last().expect("non-empty");
            // Collapse through σ = 0 within an unresolvable time interval.
            if last.sigma_dot < 0.0 && last.sigma / last.sigma_dot.abs() <= 1e-8 * t.abs() {
                return Ok(Trajectory {
                    samples,
                    terminal: Terminal::EscapedLow,
                });
            }
            return Err(Error::StepUnderflow {
                t,
                sigma: last.sigma,
                sigma_dot: last.sigma_dot,
                h,
            });
        }

        match dopri_step(sys, &y, h, cfg.rel_tol, cfg.abs_tol) {
            Some((y_new, err)) if err <= 1.0 => {
                t = if last_step { cfg.t_end } else { t + h };
                y = y_new;
                accepted += 1;
                samples.push(sys.sample(t, &y));
                if let Some(term) = escaped(y[0]) {
                    return Ok(Trajectory {
                        samples,
                        terminal: term,
                    });
                }
                if sys.converged(&y) {
                    return Ok(Trajectory {
                        samples,
                        terminal: Terminal::Converged { sigma: y[0] },
                    });
                }
                let factor = if err == 0.0 {
                    5.0
                } else {
                    (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                };
                h *= factor;
            }
            Some((_, err)) => h *= (0.9 * err.powf(-0.2)).clamp(0.1, 0.9),
            None => h *= 0.25,
        }
    }
}

/// Integrates `M_eff σ̈ + γ σ̇ = −E'(σ)` from `(sigma0, sigma_dot0)`.
pub fn evolve_damped(model: &EnergyModel, config: &DynamicsConfig, sigma0: f64, sigma_dot0: f64) -> Result<Trajectory> {
    config.validate_common()?;
    if !(config.m_eff.is_finite() && config.m_eff > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "m_eff must be positive, got {}",
            config.m_eff
        )));
    }
    if !(config.gamma.is_finite() && config.gamma >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "gamma must be non-negative, got {}",
            config.gamma
        )));
    }
    check_initial(sigma0)?;
    if !sigma_dot0.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "initial velocity must be finite, got {sigma_dot0}"
        )));
    }
    let sys = Damped {
        model,
        m_eff: config.m_eff,
        gamma: config.gamma,
        conv_tol: config.conv_tol,
    };
    integrate(&sys, [sigma0, sigma_dot0], config)
}

/// Integrates the gradient flow `σ̇ = −Γ E'(σ)`; `config.big_gamma` is ignored
/// in favour of the explicit `big_gamma`.
pub fn evolve_overdamped(
    model: &EnergyModel,
    big_gamma: f64,
    sigma0: f64,
    config: &DynamicsConfig,
) -> Result<Trajectory> {
    config.validate_common()?;
    if !(big_gamma.is_finite() && big_gamma > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "mobility must be positive, got {big_gamma}"
        )));
    }
    check_initial(sigma0)?;
    let sys = Overdamped {
        model,
        big_gamma,
        conv_tol: config.conv_tol,
    };
    integrate(&sys, [sigma0], config)
}

fn check_initial(sigma0: f64) -> Result<()> {
    if !(sigma0.is_finite() && sigma0 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "initial width must be positive, got {sigma0}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimescaleEstimate {
    pub tau: f64,
    pub curvature_at_star: f64,
    pub mobility: f64,
}

/// Linearized departure time `τ = 1/(Γ |E''(σ*)|)`.
pub fn collapse_timescale(big_gamma: f64, curvature_at_star: f64) -> Result<TimescaleEstimate> {
    if !(big_gamma.is_finite() && big_gamma > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "mobility must be positive, got {big_gamma}"
        )));
    }
    if !curvature_at_star.is_finite() {
        return Err(Error::NonFinite(format!("curvature {curvature_at_star}")));
    }
    if curvature_at_star == 0.0 {
        return Err(Error::DegenerateCurvature);
    }
    let curvature = curvature_at_star.abs();
    Ok(TimescaleEstimate {
        tau: 1.0 / (big_gamma * curvature),
        curvature_at_star: curvature,
        mobility: big_gamma,
    })
}

/// Mobility `Γ = 1/(m ω)` for an internal angular frequency ω.
pub fn gamma_estimate(params: &PhysicalParams, omega: f64) -> Result<f64> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::InvalidParameter(format!("omega must be positive, got {omega}")));
    }
    Ok(1.0 / (params.mass * omega))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasinReport {
    pub initial_pair: (f64, f64),
    pub fates: (Terminal, Terminal),
    pub separated: bool,
    #[serde(skip)]
    pub trajectories: (Trajectory, Trajectory),
}

/// Runs the gradient flow from both widths of `sigma_pair` with identical
/// settings and compares where they end up.
pub fn basin_experiment(
    model: &EnergyModel,
    big_gamma: f64,
    sigma_pair: (f64, f64),
    config: &DynamicsConfig,
) -> Result<BasinReport> {
    let ta = evolve_overdamped(model, big_gamma, sigma_pair.0, config)?;
    let tb = evolve_overdamped(model, big_gamma, sigma_pair.1, config)?;
    let separated = match (ta.terminal, tb.terminal) {
        (Terminal::Converged { sigma: sa }, Terminal::Converged { sigma: sb }) => {
            (sa - sb).abs() > 10.0 * config.conv_tol * sa.abs().max(sb.abs())
        }
        (a, b) => !a.same_kind(&b),
    };
    Ok(BasinReport {
        initial_pair: sigma_pair,
        fates: (ta.terminal, tb.terminal),
        separated,
        trajectories: (ta, tb),
    })
}
