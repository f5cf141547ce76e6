//! Command-line front end: configuration, table output, the claims audit and
//! subcommand dispatch.
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical failure, 3
//! configuration error.

pub mod audit;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::dynamics::{basin_experiment, collapse_timescale, evolve_damped, evolve_overdamped, gamma_estimate};
use crate::error::Error;
use crate::field::{evolve_field, ground_state, write_state_csv};
use crate::landscape::{evaluate, find_degenerate, stationary_points, sweep_mass, Stability};
use crate::model::{canonical_model, critical_mass_estimate, UnitSystem};

pub use audit::{audit, AuditReport, ClaimRecord, Verdict};
pub use config::{load_config, parse_config, ConfigError, Mode, ResolvedConfig};
pub use output::{emit_table, Cell, Format, Record};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "sn-bifurcation",
    version,
    about = "Regularized Schrödinger–Newton width landscape, dynamics and field solver"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energy landscape samples on the configured width grid.
    Landscape {
        /// Emit the stationary points in the window instead of samples.
        #[arg(long, conflicts_with = "fold")]
        stationary: bool,
        /// Search the configured mass range for a fold of the canonical model.
        #[arg(long)]
        fold: bool,
    },
    /// Stationary points of the canonical model across the configured masses.
    Sweep,
    /// Reduced width dynamics from the configured initial width.
    Evolve {
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// Gradient flow from the two widths of the configured basin pair.
    Basin,
    /// Imaginary-time ground state of the field equation.
    PdeGround {
        /// Also write the converged state as `r,re_u,im_u`.
        #[arg(long)]
        state_out: Option<PathBuf>,
    },
    /// Real-time field evolution.
    PdeEvolve {
        /// Start from the ground state instead of the Gaussian.
        #[arg(long)]
        from_ground: bool,
        #[arg(long)]
        state_out: Option<PathBuf>,
    },
    /// Order-of-magnitude pipeline: λ, m_c, Γ, curvature and τ.
    Estimate {
        /// Order-unity factor applied to the critical mass.
        #[arg(long, default_value_t = 1.0)]
        prefactor: f64,
    },
    /// Recomputes the published order-of-magnitude claims.
    Audit,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Config(String),
    Numerical(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Numerical(_) => EXIT_NUMERICAL,
            Failure::Config(_) => EXIT_CONFIG,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Config(m) | Failure::Numerical(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Config(e.to_string())
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.0)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Config(format!("output: {e}"))
    }
}

/// Parses `argv` (including the program name), runs the command against
/// the process's standard streams and returns the exit code.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_io(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// As [`run_command`], with explicit output streams.
pub fn run_with_io<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            f.code()
        }
    }
}

fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let cfg = match &cli.config {
        Some(path) => load_config(path)?,
        None => ResolvedConfig::default(),
    };
    let format = cli.format.unwrap_or(cfg.format);
    let mut buf = Vec::new();

    match cli.command {
        Command::Landscape { stationary: true, .. } => {
            let scan = stationary_points(&cfg.model, cfg.window)?;
            warn(stderr, &scan.warnings);
            emit_table(&scan.points, format, &mut buf)?;
        }
        Command::Landscape { fold: true, .. } => {
            let (lo, hi) = mass_range(&cfg.masses)?;
            let base = cfg.params;
            let family = |m: f64| Ok(canonical_model(&base.with_mass(m)?));
            let report = find_degenerate(family, (lo, hi), cfg.window)?;
            emit_table(&[report], format, &mut buf)?;
        }
        Command::Landscape { .. } => {
            let samples = cfg
                .sigmas
                .iter()
                .map(|&s| evaluate(&cfg.model, s))
                .collect::<crate::Result<Vec<_>>>()?;
            emit_table(&samples, format, &mut buf)?;
        }
        Command::Sweep => {
            let diagram = sweep_mass(&cfg.params, &cfg.masses, cfg.window)?;
            warn(stderr, &diagram.warnings);
            emit_table(&diagram.rows, format, &mut buf)?;
        }
        Command::Evolve { mode } => {
            let d = &cfg.dynamics;
            let traj = match mode.unwrap_or(d.mode) {
                Mode::Damped => evolve_damped(&cfg.model, &d.config, d.sigma0, d.sigma_dot0)?,
                Mode::Overdamped => evolve_overdamped(&cfg.model, d.config.big_gamma, d.sigma0, &d.config)?,
            };
            emit_table(&traj.samples, format, &mut buf)?;
            let status = serde_json::to_string(&traj.terminal).expect("terminal serializes");
            let _ = writeln!(stderr, "{status}");
        }
        Command::Basin => {
            let d = &cfg.dynamics;
            let report = basin_experiment(&cfg.model, d.config.big_gamma, d.basin_pair, &d.config)?;
            emit_table(&[report], format, &mut buf)?;
        }
        Command::PdeGround { state_out } => {
            let g = ground_state(&cfg.pde)?;
            emit_table(&[g.observables], format, &mut buf)?;
            if let Some(path) = state_out {
                write_state(&path, &g.state)?;
            }
        }
        Command::PdeEvolve { from_ground, state_out } => {
            let state0 = if from_ground {
                ground_state(&cfg.pde)?.state
            } else {
                cfg.pde.initial_state()?
            };
            let series = evolve_field(&cfg.pde, &state0)?;
            emit_table(&series, format, &mut buf)?;
            if let Some(path) = state_out {
                write_state(&path, &state0)?;
            }
        }
        Command::Estimate { prefactor } => {
            if !(prefactor.is_finite() && prefactor > 0.0) {
                return Err(Failure::Usage(format!("--prefactor must be positive, got {prefactor}")));
            }
            let rows = estimate(&cfg, prefactor)?;
            emit_table(&rows, format, &mut buf)?;
        }
        Command::Audit => audit().write(format, &mut buf)?,
    }

    match cli.out.or(cfg.out) {
        Some(path) => std::fs::write(&path, &buf).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?,
        None => stdout.write_all(&buf)?,
    }
    Ok(())
}

fn warn(stderr: &mut dyn Write, warnings: &[String]) {
    for w in warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
}

fn mass_range(masses: &[f64]) -> Result<(f64, f64), Failure> {
    let lo = masses.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = masses.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo < hi {
        Ok((lo, hi))
    } else {
        Err(Failure::Config(
            "model.masses must span a range for the fold search".into(),
        ))
    }
}

fn write_state(path: &PathBuf, state: &crate::field::RadialState) -> Result<(), Failure> {
    let file = std::fs::File::create(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    write_state_csv(state, std::io::BufWriter::new(file))?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateRow {
    pub quantity: &'static str,
    pub value: Option<f64>,
    pub unit: &'static str,
    pub note: String,
}

impl Record for EstimateRow {
    fn header() -> &'static [&'static str] {
        &["quantity", "value", "unit", "note"]
    }
    fn cells(&self) -> Vec<Cell> {
        vec![
            self.quantity.into(),
            self.value.into(),
            self.unit.into(),
            self.note.as_str().into(),
        ]
    }
}

/// λ, m_c, Γ, the curvature scale Gm²/ℓ³ and the resulting τ, followed by
/// the same curvature and τ evaluated at the actual landscape minimum.
pub fn estimate(cfg: &ResolvedConfig, prefactor: f64) -> crate::Result<Vec<EstimateRow>> {
    let p = &cfg.params;
    let si = p.units == UnitSystem::Si;
    let unit = |s: &'static str| if si { s } else { "natural" };
    let gm2 = p.constants.g * p.mass * p.mass;
    let l_reg = cfg.l_reg.or_else(|| (p.lambda > 0.0).then(|| (p.lambda / gm2).sqrt()));
    let big_gamma = gamma_estimate(p, cfg.dynamics.omega)?;
    let row = |quantity, value, u, note: &str| EstimateRow {
        quantity,
        value,
        unit: unit(u),
        note: note.to_owned(),
    };

    let mut rows = vec![
        row("mass", Some(p.mass), "kg", ""),
        row(
            "lambda",
            Some(p.lambda),
            "J m^3",
            if cfg.l_reg.is_some() {
                "G m^2 l_reg^2"
            } else {
                "configured"
            },
        ),
        row(
            "l_reg",
            l_reg,
            "m",
            if cfg.l_reg.is_some() {
                "configured"
            } else {
                "sqrt(lambda/(G m^2))"
            },
        ),
    ];
    match l_reg {
        Some(l) => {
            let mc = prefactor * critical_mass_estimate(&p.constants, l)?;
            let curv = gm2 / l.powi(3);
            let tau = collapse_timescale(big_gamma, curv)?.tau;
            rows.push(row(
                "m_c",
                Some(mc),
                "kg",
                &format!("(hbar^2/(G l_reg))^(1/3) x {prefactor}"),
            ));
            rows.push(row(
                "big_gamma",
                Some(big_gamma),
                "s/kg",
                &format!("1/(m omega), omega = {}", cfg.dynamics.omega),
            ));
            rows.push(row("curvature_scale", Some(curv), "J/m^2", "G m^2/l_reg^3"));
            rows.push(row("tau_scale", Some(tau), "s", "1/(Gamma G m^2/l_reg^3)"));
        }
        None => {
            rows.push(row("m_c", None, "kg", "requires lambda > 0"));
            rows.push(row(
                "big_gamma",
                Some(big_gamma),
                "s/kg",
                &format!("1/(m omega), omega = {}", cfg.dynamics.omega),
            ));
        }
    }
    let scan = stationary_points(&cfg.model, cfg.window)?;
    let minimum = scan
        .points
        .iter()
        .filter(|s| s.stability == Stability::Minimum)
        .min_by(|a, b| a.energy.total_cmp(&b.energy));
    match minimum {
        Some(s) => {
            let tau = collapse_timescale(big_gamma, s.curvature)?.tau;
            rows.push(row("sigma_star", Some(s.sigma), "m", "lowest landscape minimum"));
            rows.push(row(
                "curvature_at_star",
                Some(s.curvature.abs()),
                "J/m^2",
                "|E''(sigma_star)|",
            ));
            rows.push(row("tau_at_star", Some(tau), "s", "1/(Gamma |E''(sigma_star)|)"));
        }
        None => rows.push(row("sigma_star", None, "m", "no minimum in window")),
    }
    Ok(rows)
}
