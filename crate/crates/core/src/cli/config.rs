//! JSON run configuration.
//!
//! ```json
//! {
//!   "units": "si",
//!   "constants": { "hbar": 1.054571817e-34, "G": 6.6743e-11 },
//!   "particle": { "mass_kg": 1e-17 },
//!   "repulsion": { "from_length": 1e-7 },
//!   "model": { "preset": "canonical", "window": [1e-12, 1.0], "masses": [1e-18, 1e-17] },
//!   "dynamics": { "sigma0": 1e-6, "big_gamma": 1e14 },
//!   "pde": { "n": 2048, "scheme": "split_step" },
//!   "output": { "format": "csv", "path": "out.csv" }
//! }
//! ```
//!
//! Every key is optional and unknown keys are rejected.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Deserialize;

use super::output::Format;
use crate::dynamics::DynamicsConfig;
use crate::field::{PdeConfig, Scheme};
use crate::landscape::{canonical_root, Window};
use crate::model::{canonical_model, lambda_from_length, Constants, EnergyModel, PhysicalParams, UnitSystem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<crate::Error> for ConfigError {
    fn from(e: crate::Error) -> Self {
        ConfigError(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Damped,
    #[default]
    Overdamped,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    units: Option<UnitSystem>,
    constants: Option<RawConstants>,
    particle: Option<RawParticle>,
    repulsion: Option<RawRepulsion>,
    model: Option<RawModel>,
    dynamics: Option<RawDynamics>,
    pde: Option<RawPde>,
    output: Option<RawOutput>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConstants {
    hbar: Option<f64>,
    #[serde(rename = "G")]
    g: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParticle {
    mass: Option<f64>,
    mass_kg: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRepulsion {
    lambda: Option<f64>,
    from_length: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Preset {
    Canonical,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    preset: Option<Preset>,
    terms: Option<Vec<[f64; 2]>>,
    window: Option<[f64; 2]>,
    masses: Option<Vec<f64>>,
    sigmas: Option<Vec<f64>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDynamics {
    mode: Option<Mode>,
    m_eff: Option<f64>,
    gamma: Option<f64>,
    big_gamma: Option<f64>,
    dt: Option<f64>,
    t_end: Option<f64>,
    rel_tol: Option<f64>,
    abs_tol: Option<f64>,
    conv_tol: Option<f64>,
    sigma_floor: Option<f64>,
    sigma_ceiling: Option<f64>,
    max_steps: Option<usize>,
    sigma0: Option<f64>,
    sigma_dot0: Option<f64>,
    basin_pair: Option<[f64; 2]>,
    omega: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPde {
    n: Option<usize>,
    r_max: Option<f64>,
    initial_width: Option<f64>,
    dt: Option<f64>,
    max_steps: Option<usize>,
    energy_tol: Option<f64>,
    scheme: Option<Scheme>,
    stride: Option<usize>,
    self_gravity: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    format: Option<Format>,
    path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelSpec {
    Canonical,
    Terms(Vec<(f64, f64)>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsSettings {
    pub config: DynamicsConfig,
    pub mode: Mode,
    pub sigma0: f64,
    pub sigma_dot0: f64,
    pub basin_pair: (f64, f64),
    /// Internal frequency for the mobility estimate Γ = 1/(mω).
    pub omega: f64,
}

/// A fully defaulted configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedConfig {
    pub params: PhysicalParams,
    /// Regularization length, when λ was derived from one.
    pub l_reg: Option<f64>,
    pub model_spec: ModelSpec,
    pub model: EnergyModel,
    pub window: Window,
    pub masses: Vec<f64>,
    pub sigmas: Vec<f64>,
    pub dynamics: DynamicsSettings,
    pub pde: PdeConfig,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Default for ResolvedConfig {
    fn default() -> Self {
        resolve(RawConfig::default()).expect("defaults resolve")
    }
}

/// SI defaults: a mesoscopic particle with a 100 nm regularization length.
const SI_MASS: f64 = 1e-17;
const SI_L_REG: f64 = 1e-7;

pub fn load_config(path: &Path) -> Result<ResolvedConfig, ConfigError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text).map_err(|e| ConfigError(format!("{}: {}", path.display(), e.0)))
}

pub fn parse_config(text: &str) -> Result<ResolvedConfig, ConfigError> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| ConfigError(e.to_string()))?;
    resolve(raw)
}

fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
}

fn positive(name: &str, v: f64) -> Result<f64, ConfigError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(ConfigError(format!("{name} must be positive, got {v}")))
    }
}

fn resolve(raw: RawConfig) -> Result<ResolvedConfig, ConfigError> {
    let units = raw.units.unwrap_or(UnitSystem::Natural);
    let si = units == UnitSystem::Si;

    let constants = match (&raw.constants, si) {
        (Some(_), false) => {
            return Err(ConfigError(
                "constants: only configurable with \"units\": \"si\"".into(),
            ))
        }
        (Some(c), true) => Constants::new(
            c.hbar.unwrap_or(Constants::codata().hbar),
            c.g.unwrap_or(Constants::codata().g),
        )?,
        (None, true) => Constants::codata(),
        (None, false) => Constants::natural(),
    };

    let mass = match raw.particle {
        None => {
            if si {
                SI_MASS
            } else {
                1.0
            }
        }
        Some(RawParticle {
            mass: Some(_),
            mass_kg: Some(_),
        }) => return Err(ConfigError("particle: give either mass or mass_kg, not both".into())),
        Some(RawParticle { mass_kg: Some(_), .. }) if !si => {
            return Err(ConfigError("particle.mass_kg requires \"units\": \"si\"".into()))
        }
        Some(RawParticle { mass: Some(m), .. }) | Some(RawParticle { mass_kg: Some(m), .. }) => m,
        Some(RawParticle {
            mass: None,
            mass_kg: None,
        }) => return Err(ConfigError("particle: expected mass or mass_kg".into())),
    };
    let base = PhysicalParams::new(mass, 0.0, constants, units)?;

    let (lambda, l_reg) = match raw.repulsion {
        None if si => (lambda_from_length(&base, SI_L_REG)?, Some(SI_L_REG)),
        None => (1.0, None),
        Some(RawRepulsion {
            lambda: Some(_),
            from_length: Some(_),
        }) => {
            return Err(ConfigError(
                "repulsion: give either lambda or from_length, not both".into(),
            ))
        }
        Some(RawRepulsion { lambda: Some(l), .. }) => (l, None),
        Some(RawRepulsion {
            from_length: Some(l), ..
        }) => (lambda_from_length(&base, l)?, Some(l)),
        Some(RawRepulsion {
            lambda: None,
            from_length: None,
        }) => return Err(ConfigError("repulsion: expected lambda or from_length".into())),
    };
    let params = base.with_lambda(lambda)?;
    let s0 = params.sigma0();

    let raw_model = raw.model.unwrap_or(RawModel {
        preset: None,
        terms: None,
        window: None,
        masses: None,
        sigmas: None,
    });
    let (model_spec, model) = match (raw_model.preset, raw_model.terms) {
        (Some(_), Some(_)) => return Err(ConfigError("model: give either preset or terms, not both".into())),
        (_, Some(terms)) => {
            let pairs: Vec<(f64, f64)> = terms.iter().map(|t| (t[0], t[1])).collect();
            let model = EnergyModel::from_pairs(&pairs, "custom")?;
            (ModelSpec::Terms(pairs), model)
        }
        (Some(Preset::Canonical) | None, None) => (ModelSpec::Canonical, canonical_model(&params)),
    };
    let window = match raw_model.window {
        Some([lo, hi]) => Window::new(lo, hi)?,
        None => Window::scaled(&params),
    };
    let masses = match raw_model.masses {
        Some(m) if m.is_empty() => return Err(ConfigError("model.masses must not be empty".into())),
        Some(m) => {
            m.iter()
                .try_for_each(|&x| positive("model.masses entry", x).map(|_| ()))?;
            m
        }
        None => log_spaced(0.1 * mass, 10.0 * mass, 9),
    };
    let sigmas = match raw_model.sigmas {
        Some(s) => {
            s.iter()
                .try_for_each(|&x| positive("model.sigmas entry", x).map(|_| ()))?;
            s
        }
        None => log_spaced(0.1 * s0, 100.0 * s0, 61),
    };

    let sigma_star = model
        .canonical_coefficients()
        .map(|(a, b, c)| canonical_root(a, b, c))
        .unwrap_or(s0);

    let d = raw.dynamics.unwrap_or_default();
    let defaults = DynamicsConfig::for_params(&params);
    let config = DynamicsConfig {
        m_eff: d.m_eff.unwrap_or(defaults.m_eff),
        gamma: d.gamma.unwrap_or(defaults.gamma),
        big_gamma: d.big_gamma.unwrap_or(defaults.big_gamma),
        dt: d.dt.unwrap_or(defaults.dt),
        t_end: d.t_end.unwrap_or(defaults.t_end),
        rel_tol: d.rel_tol.unwrap_or(defaults.rel_tol),
        abs_tol: d.abs_tol.unwrap_or(defaults.abs_tol),
        conv_tol: d.conv_tol.unwrap_or(defaults.conv_tol),
        sigma_floor: d.sigma_floor.unwrap_or(defaults.sigma_floor),
        sigma_ceiling: d.sigma_ceiling.unwrap_or(defaults.sigma_ceiling),
        max_steps: d.max_steps.unwrap_or(defaults.max_steps),
    };
    let basin_pair = d
        .basin_pair
        .map(|[a, b]| (a, b))
        .unwrap_or((0.5 * sigma_star, 2.0 * sigma_star));
    let dynamics = DynamicsSettings {
        config,
        mode: d.mode.unwrap_or_default(),
        sigma0: positive("dynamics.sigma0", d.sigma0.unwrap_or(10.0 * s0))?,
        sigma_dot0: d.sigma_dot0.unwrap_or(0.0),
        basin_pair: (
            positive("dynamics.basin_pair entry", basin_pair.0)?,
            positive("dynamics.basin_pair entry", basin_pair.1)?,
        ),
        omega: positive("dynamics.omega", d.omega.unwrap_or(if si { 1e3 } else { 1.0 }))?,
    };

    let p = raw.pde.unwrap_or_default();
    let pde_defaults = PdeConfig::new(params);
    let pde = PdeConfig {
        params,
        n: p.n.unwrap_or(pde_defaults.n),
        r_max: p.r_max,
        initial_width: p.initial_width,
        dt: p.dt.unwrap_or(pde_defaults.dt),
        max_steps: p.max_steps.unwrap_or(pde_defaults.max_steps),
        energy_tol: p.energy_tol.unwrap_or(pde_defaults.energy_tol),
        scheme: p.scheme.unwrap_or(pde_defaults.scheme),
        stride: p.stride.unwrap_or(pde_defaults.stride),
        self_gravity: p.self_gravity.unwrap_or(true),
    };
    pde.validate().map_err(|e| ConfigError(format!("pde: {e}")))?;

    let o = raw.output.unwrap_or_default();
    Ok(ResolvedConfig {
        params,
        l_reg,
        model_spec,
        model,
        window,
        masses,
        sigmas,
        dynamics,
        pde,
        format: o.format.unwrap_or_default(),
        out: o.path,
    })
}
