use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Uniform radial grid with nodes `r_i = i·Δr`, `i = 1..=n`, `Δr = r_max/n`.
///
/// The origin is not stored: with `u = rψ` the solution vanishes there.
/// The last node sits on `r_max`, where `u` is pinned to zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialGrid {
    pub n: usize,
    pub r_max: f64,
}

impl RadialGrid {
    pub const MIN_NODES: usize = 64;

    pub fn new(n: usize, r_max: f64) -> Result<Self> {
        if n < Self::MIN_NODES {
            return Err(Error::InvalidParameter(format!(
                "radial grid needs at least {} nodes, got {n}",
                Self::MIN_NODES
            )));
        }
        if !(r_max.is_finite() && r_max > 0.0) {
            return Err(Error::InvalidParameter(format!("r_max must be positive, got {r_max}")));
        }
        Ok(Self { n, r_max })
    }

    pub fn dr(&self) -> f64 {
        self.r_max / self.n as f64
    }

    /// Radius of storage index `i` (node `i + 1`).
    pub fn r(&self, i: usize) -> f64 {
        (i + 1) as f64 * self.dr()
    }

    pub fn radii(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|i| self.r(i))
    }
}

/// Composite Simpson rule over `[0, r_max]` for samples at `r_1..r_n`; the
/// integrand is taken to vanish at the origin. An odd interval count is
/// closed with a 3/8 panel.
pub(crate) fn simpson(grid: &RadialGrid, f: &[f64]) -> f64 {
    debug_assert_eq!(f.len(), grid.n);
    let h = grid.dr();
    let at = |j: usize| if j == 0 { 0.0 } else { f[j - 1] };
    let n = grid.n;
    let (even, tail) = if n.is_multiple_of(2) {
        (n, 0.0)
    } else {
        (
            n - 3,
            3.0 * h / 8.0 * (at(n - 3) + 3.0 * at(n - 2) + 3.0 * at(n - 1) + at(n)),
        )
    };
    let mut sum = at(0) + at(even);
    for j in 1..even {
        sum += if j % 2 == 1 { 4.0 } else { 2.0 } * at(j);
    }
    sum * h / 3.0 + tail
}

/// Discretized `u(r) = r ψ(r)` with `4π ∫ |u|² dr = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialState {
    pub grid: RadialGrid,
    pub u: Vec<Complex64>,
}

impl RadialState {
    /// Samples `ψ(r)` on the grid and normalizes.
    pub fn from_psi(grid: RadialGrid, psi: impl Fn(f64) -> Complex64) -> Result<Self> {
        let mut u: Vec<Complex64> = grid.radii().map(|r| r * psi(r)).collect();
        u[grid.n - 1] = Complex64::new(0.0, 0.0);
        let mut state = Self { grid, u };
        state.normalize()?;
        Ok(state)
    }

    /// Normalized Gaussian `(πσ²)^{-3/4} exp(−r²/2σ²)`.
    pub fn gaussian(grid: RadialGrid, sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "Gaussian width must be positive, got {sigma}"
            )));
        }
        let amp = (std::f64::consts::PI * sigma * sigma).powf(-0.75);
        Self::from_psi(grid, |r| {
            Complex64::new(amp * (-0.5 * r * r / (sigma * sigma)).exp(), 0.0)
        })
    }

    /// Wraps raw samples without rescaling; fails unless already normalized
    /// to within 10⁻⁸.
    pub fn from_u(grid: RadialGrid, u: Vec<Complex64>) -> Result<Self> {
        if u.len() != grid.n {
            return Err(Error::InvalidParameter(format!(
                "expected {} samples, got {}",
                grid.n,
                u.len()
            )));
        }
        let state = Self { grid, u };
        let norm = state.norm();
        if (norm - 1.0).abs() > 1e-8 {
            return Err(Error::Unnormalized { norm });
        }
        Ok(state)
    }

    pub fn norm(&self) -> f64 {
        let f: Vec<f64> = self
            .u
            .iter()
            .map(|z| 4.0 * std::f64::consts::PI * z.norm_sqr())
            .collect();
        simpson(&self.grid, &f)
    }

    pub(crate) fn normalize(&mut self) -> Result<()> {
        let norm = self.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Unnormalized { norm });
        }
        let s = norm.sqrt().recip();
        self.u.iter_mut().for_each(|z| *z *= s);
        Ok(())
    }

    pub(crate) fn check_normalized(&self, tol: f64) -> Result<()> {
        let norm = self.norm();
        if (norm - 1.0).abs() > tol {
            return Err(Error::Unnormalized { norm });
        }
        Ok(())
    }

    /// `ρ(r_i) = |u_i|² / r_i²`.
    pub fn density(&self) -> Vec<f64> {
        self.u
            .iter()
            .enumerate()
            .map(|(i, z)| z.norm_sqr() / self.grid.r(i).powi(2))
            .collect()
    }
}
