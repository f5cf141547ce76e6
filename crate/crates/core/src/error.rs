use thiserror::Error;

/// Errors produced by the library.
///
/// Variants split into two families: input violations (bad parameters,
/// malformed models, empty windows) and numerical failures (step underflow,
/// non-convergence, norm drift). [`Error::is_numerical`] tells them apart.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("model is not of the canonical shape: {0}")]
    NonCanonicalModel(String),

    #[error("empty search window [{lo}, {hi}]")]
    EmptyWindow { lo: f64, hi: f64 },

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("curvature is zero at a degenerate point; timescale undefined")]
    DegenerateCurvature,

    #[error("step size underflow at t = {t}, sigma = {sigma}, sigma_dot = {sigma_dot} (h = {h})")]
    StepUnderflow { t: f64, sigma: f64, sigma_dot: f64, h: f64 },

    #[error("step budget of {steps} exhausted at t = {t}, sigma = {sigma}")]
    StepBudget { steps: usize, t: f64, sigma: f64 },

    #[error("no convergence after {steps} steps (last energy {energy}, last change {change})")]
    NoConvergence { steps: usize, energy: f64, change: f64 },

    #[error("norm drift {drift:e} exceeds tolerance at step {step}")]
    NormDrift { step: usize, drift: f64 },

    #[error("state or density is not normalized (norm = {norm})")]
    Unnormalized { norm: f64 },
}

impl Error {
    /// True for failures of a numerical procedure, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::StepUnderflow { .. }
                | Error::StepBudget { .. }
                | Error::NoConvergence { .. }
                | Error::NormDrift { .. }
                | Error::NonFinite(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
