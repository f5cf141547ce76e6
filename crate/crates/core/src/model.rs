//! Physical parameters, the power-law energy model and its canonical
//! Gaussian-reduced form, dimensionless rescaling, and the order-of-magnitude
//! estimators for the regularization coupling and the critical mass.
//!
//! Order-of-magnitude relations are implemented with a prefactor of exactly
//! one. Callers that want a different convention multiply the result.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// CODATA 2018 reduced Planck constant, J·s.
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// CODATA 2018 Newtonian constant of gravitation, m³·kg⁻¹·s⁻².
pub const G_SI: f64 = 6.674_30e-11;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub hbar: f64,
    #[serde(rename = "G")]
    pub g: f64,
}

impl Constants {
    pub fn new(hbar: f64, g: f64) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::InvalidParameter(format!("hbar must be positive, got {hbar}")));
        }
        if !(g.is_finite() && g > 0.0) {
            return Err(Error::InvalidParameter(format!("G must be positive, got {g}")));
        }
        Ok(Self { hbar, g })
    }

    pub const fn codata() -> Self {
        Self { hbar: HBAR_SI, g: G_SI }
    }

    pub const fn natural() -> Self {
        Self { hbar: 1.0, g: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitSystem {
    /// ħ = G = 1, mass measured as a ratio to the reference particle mass.
    Natural,
    Si,
}

/// Mass, repulsive coupling and the constants they are measured against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalParams {
    pub mass: f64,
    pub lambda: f64,
    pub constants: Constants,
    pub units: UnitSystem,
}

impl PhysicalParams {
    /// Builds validated parameters. In natural units the supplied constants
    /// are replaced by ħ = G = 1.
    pub fn new(mass: f64, lambda: f64, constants: Constants, units: UnitSystem) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::InvalidParameter(format!("mass must be positive, got {mass}")));
        }
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "repulsive coupling must be non-negative, got {lambda}"
            )));
        }
        let constants = match units {
            UnitSystem::Natural => Constants::natural(),
            UnitSystem::Si => Constants::new(constants.hbar, constants.g)?,
        };
        Ok(Self {
            mass,
            lambda,
            constants,
            units,
        })
    }

    pub fn natural(mass: f64, lambda: f64) -> Result<Self> {
        Self::new(mass, lambda, Constants::natural(), UnitSystem::Natural)
    }

    pub fn si(mass_kg: f64, lambda: f64) -> Result<Self> {
        Self::new(mass_kg, lambda, Constants::codata(), UnitSystem::Si)
    }

    pub fn with_mass(&self, mass: f64) -> Result<Self> {
        Self::new(mass, self.lambda, self.constants, self.units)
    }

    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        Self::new(self.mass, lambda, self.constants, self.units)
    }

    /// Reference length ħ²/(G m³).
    pub fn sigma0(&self) -> f64 {
        let Constants { hbar, g } = self.constants;
        hbar * hbar / (g * self.mass.powi(3))
    }

    /// Reference energy ħ²/(m σ₀²).
    pub fn e0(&self) -> f64 {
        let s0 = self.sigma0();
        self.constants.hbar.powi(2) / (self.mass * s0 * s0)
    }
}

/// One term `coeff · σ^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawTerm {
    pub coeff: f64,
    pub exponent: f64,
}

impl PowerLawTerm {
    pub fn new(coeff: f64, exponent: f64) -> Self {
        Self { coeff, exponent }
    }
}

#[inline]
fn pow(sigma: f64, exponent: f64) -> f64 {
    if exponent.fract() == 0.0 && exponent.abs() < 1024.0 {
        sigma.powi(exponent as i32)
    } else {
        sigma.powf(exponent)
    }
}

/// A reduced energy landscape `E(σ) = Σ kᵢ σ^eᵢ`.
///
/// Terms sharing an exponent are merged at construction, keeping the
/// position of the first occurrence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyModel {
    terms: Vec<PowerLawTerm>,
    label: String,
}

impl EnergyModel {
    pub fn new(terms: impl IntoIterator<Item = PowerLawTerm>, label: impl Into<String>) -> Result<Self> {
        let mut merged: Vec<PowerLawTerm> = Vec::new();
        for term in terms {
            if !term.coeff.is_finite() || !term.exponent.is_finite() {
                return Err(Error::NonFinite(format!(
                    "term {} * sigma^{}",
                    term.coeff, term.exponent
                )));
            }
            match merged.iter_mut().find(|t| t.exponent == term.exponent) {
                Some(existing) => existing.coeff += term.coeff,
                None => merged.push(term),
            }
        }
        if merged.is_empty() {
            return Err(Error::InvalidParameter("energy model needs at least one term".into()));
        }
        Ok(Self {
            terms: merged,
            label: label.into(),
        })
    }

    /// Convenience constructor from `(coeff, exponent)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)], label: impl Into<String>) -> Result<Self> {
        Self::new(pairs.iter().map(|&(k, e)| PowerLawTerm::new(k, e)), label)
    }

    pub fn terms(&self) -> &[PowerLawTerm] {
        &self.terms
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Coefficient of `σ^exponent`, if such a term exists.
    pub fn coefficient(&self, exponent: f64) -> Option<f64> {
        self.terms.iter().find(|t| t.exponent == exponent).map(|t| t.coeff)
    }

    pub fn energy(&self, sigma: f64) -> f64 {
        self.terms.iter().map(|t| t.coeff * pow(sigma, t.exponent)).sum()
    }

    pub fn gradient(&self, sigma: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coeff * t.exponent * pow(sigma, t.exponent - 1.0))
            .sum()
    }

    pub fn curvature(&self, sigma: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coeff * t.exponent * (t.exponent - 1.0) * pow(sigma, t.exponent - 2.0))
            .sum()
    }

    /// Sum of the magnitudes of the individual gradient terms at `sigma`:
    /// the natural force scale against which a vanishing gradient is judged.
    pub fn gradient_scale(&self, sigma: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| (t.coeff * t.exponent * pow(sigma, t.exponent - 1.0)).abs())
            .sum()
    }

    /// Same as [`gradient_scale`](Self::gradient_scale) for the second derivative.
    pub fn curvature_scale(&self, sigma: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| (t.coeff * t.exponent * (t.exponent - 1.0) * pow(sigma, t.exponent - 2.0)).abs())
            .sum()
    }

    /// Returns `(a, b, c)` when the model reads `a/σ² − b/σ + c/σ³` with
    /// `a, b > 0` and `c ≥ 0`.
    pub fn canonical_coefficients(&self) -> Option<(f64, f64, f64)> {
        if self.terms.iter().any(|t| ![-1.0, -2.0, -3.0].contains(&t.exponent)) {
            return None;
        }
        let a = self.coefficient(-2.0)?;
        let b = -self.coefficient(-1.0)?;
        let c = self.coefficient(-3.0).unwrap_or(0.0);
        (a > 0.0 && b > 0.0 && c >= 0.0).then_some((a, b, c))
    }
}

/// Gaussian-reduced energy `3ħ²/(4mσ²) − Gm²/(√(2π)σ) + λ/((2π)^{3/2}σ³)`.
///
/// With λ = 0 the σ⁻³ term is dropped, leaving the pure self-gravitating
/// reduction.
pub fn canonical_model(params: &PhysicalParams) -> EnergyModel {
    let Constants { hbar, g } = params.constants;
    let m = params.mass;
    let a = 3.0 * hbar * hbar / (4.0 * m);
    let b = g * m * m / (2.0 * PI).sqrt();
    let mut terms = vec![PowerLawTerm::new(a, -2.0), PowerLawTerm::new(-b, -1.0)];
    if params.lambda > 0.0 {
        terms.push(PowerLawTerm::new(params.lambda / (2.0 * PI).powf(1.5), -3.0));
    }
    let label = format!("canonical(m={}, lambda={})", params.mass, params.lambda);
    EnergyModel::new(terms, label).expect("canonical coefficients are finite for validated params")
}

/// Coupling at which the repulsive term balances self-gravity at width
/// `l_reg`: λ = G m² ℓ².
pub fn lambda_from_length(params: &PhysicalParams, l_reg: f64) -> Result<f64> {
    if !(l_reg.is_finite() && l_reg > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "regularization length must be positive, got {l_reg}"
        )));
    }
    Ok(params.constants.g * params.mass * params.mass * l_reg * l_reg)
}

/// Critical mass scale m_c = (ħ² / (G ℓ))^{1/3}.
pub fn critical_mass_estimate(constants: &Constants, l_reg: f64) -> Result<f64> {
    if !(l_reg.is_finite() && l_reg > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "regularization length must be positive, got {l_reg}"
        )));
    }
    Ok((constants.hbar * constants.hbar / (constants.g * l_reg)).cbrt())
}

/// `E(σ₀σ̃) = e0 · (A/σ̃² − B/σ̃ + C/σ̃³)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimensionlessModel {
    pub sigma0: f64,
    pub e0: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "C")]
    pub c: f64,
}

impl DimensionlessModel {
    pub fn energy(&self, sigma_tilde: f64) -> f64 {
        let s = sigma_tilde;
        self.a / (s * s) - self.b / s + self.c / (s * s * s)
    }

    /// The rescaled landscape as an [`EnergyModel`] in σ̃.
    pub fn energy_model(&self) -> EnergyModel {
        let mut terms = vec![PowerLawTerm::new(self.a, -2.0), PowerLawTerm::new(-self.b, -1.0)];
        if self.c > 0.0 {
            terms.push(PowerLawTerm::new(self.c, -3.0));
        }
        EnergyModel::new(terms, "dimensionless").expect("finite coefficients")
    }
}

/// Rescales a canonical-shaped model by σ₀ = ħ²/(Gm³) and e0 = ħ²/(mσ₀²).
pub fn to_dimensionless(model: &EnergyModel, params: &PhysicalParams) -> Result<DimensionlessModel> {
    let (a, b, c) = model.canonical_coefficients().ok_or_else(|| {
        Error::NonCanonicalModel(format!(
            "'{}' has exponents {:?}; rescaling needs a/σ² − b/σ + c/σ³",
            model.label(),
            model.terms().iter().map(|t| t.exponent).collect::<Vec<_>>()
        ))
    })?;
    let hbar2 = params.constants.hbar.powi(2);
    let m = params.mass;
    let sigma0 = params.sigma0();
    let e0 = params.e0();
    Ok(DimensionlessModel {
        sigma0,
        e0,
        a: a * m / hbar2,
        b: b * sigma0 * m / hbar2,
        c: c * m / (hbar2 * sigma0),
    })
}
