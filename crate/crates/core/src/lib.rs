//! Gaussian-reduced model of wave-function localization under
//! self-gravity with a short-distance repulsive regularization.
//!
//! - [`model`]: physical parameters, the power-law energy model and its
//!   canonical form, dimensionless rescaling and order-of-magnitude estimators.
//! - [`landscape`]: stationary points, fold detection and mass sweeps.
//! - [`dynamics`]: damped and overdamped width dynamics, collapse timescales
//!   and basin-selection experiments.
//! - [`field`]: radial Schrödinger–Newton solver with local repulsion.
//! - [`cli`]: configuration, table output, the claims audit and the
//!   `sn-bifurcation` command line.
//!
//! Runnable walkthroughs live in `examples/`.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod field;
pub mod landscape;
pub mod model;

pub use error::{Error, Result};
