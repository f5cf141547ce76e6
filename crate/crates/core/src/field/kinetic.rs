//! Free propagation of `u(r)` on `[0, r_max]` with Dirichlet ends.
//!
//! The spectral variant diagonalizes `−d²/dr²` exactly with a type-I sine
//! transform (computed through an FFT of the odd extension). The
//! Crank–Nicolson variant uses the three-point Laplacian and a tridiagonal
//! solve. Both act on the interior nodes `r_1..r_{n−1}`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::grid::RadialGrid;

/// Unnormalized DST-I on `n − 1` interior samples of an `n`-interval grid.
pub(crate) struct SineTransform {
    intervals: usize,
    fft: Arc<dyn Fft<f64>>,
}

impl SineTransform {
    pub(crate) fn new(intervals: usize) -> Self {
        let fft = FftPlanner::new().plan_fft_forward(2 * intervals);
        Self { intervals, fft }
    }

    /// In place: `X_k = Σ_j x_j sin(π j k / n)`, `j, k = 1..n−1`.
    pub(crate) fn apply(&self, data: &mut [Complex64]) {
        let n = self.intervals;
        debug_assert_eq!(data.len(), n - 1);
        let mut buf = vec![Complex64::new(0.0, 0.0); 2 * n];
        for (j, &x) in data.iter().enumerate() {
            buf[j + 1] = x;
            buf[2 * n - 1 - j] = -x;
        }
        self.fft.process(&mut buf);
        // FFT of the odd extension equals −2i · DST.
        for (k, x) in data.iter_mut().enumerate() {
            *x = buf[k + 1] * Complex64::new(0.0, 0.5);
        }
    }
}

/// `∫₀^{r_max} |u'|² dr` from the sine coefficients (Parseval).
pub(crate) fn gradient_norm_sq(grid: &RadialGrid, dst: &SineTransform, u: &[Complex64]) -> f64 {
    let n = grid.n;
    let mut coeffs = u[..n - 1].to_vec();
    dst.apply(&mut coeffs);
    let scale = 2.0 / n as f64;
    coeffs
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let wave = PI * (k + 1) as f64 / grid.r_max;
            wave * wave * (scale * scale) * x.norm_sqr()
        })
        .sum::<f64>()
        * grid.r_max
        / 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Time {
    Real,
    Imaginary,
}

pub(crate) enum KineticPropagator {
    Spectral {
        dst: SineTransform,
        factors: Vec<Complex64>,
    },
    CrankNicolson {
        diag: Complex64,
        off: Complex64,
        rhs_diag: Complex64,
        rhs_off: Complex64,
    },
}

impl KineticPropagator {
    /// Propagator over a time `delta` for `u_t = (iħ/2m) u_rr` (real time) or
    /// `u_τ = (ħ/2m) u_rr` (imaginary time).
    pub(crate) fn spectral(grid: &RadialGrid, hbar: f64, mass: f64, delta: f64, time: Time) -> Self {
        let n = grid.n;
        let factors = (1..n)
            .map(|k| {
                let wave = PI * k as f64 / grid.r_max;
                let rate = hbar * wave * wave / (2.0 * mass) * delta;
                match time {
                    Time::Real => Complex64::from_polar(1.0, -rate),
                    Time::Imaginary => Complex64::new((-rate).exp(), 0.0),
                }
            })
            .collect();
        KineticPropagator::Spectral {
            dst: SineTransform::new(n),
            factors,
        }
    }

    pub(crate) fn crank_nicolson(grid: &RadialGrid, hbar: f64, mass: f64, delta: f64, time: Time) -> Self {
        let kappa = hbar * hbar / (2.0 * mass * grid.dr().powi(2));
        // (1 + αH) u⁺ = (1 − αH) u, α = iδ/2ħ or δ/2ħ.
        let alpha = match time {
            Time::Real => Complex64::new(0.0, delta / (2.0 * hbar)),
            Time::Imaginary => Complex64::new(delta / (2.0 * hbar), 0.0),
        };
        KineticPropagator::CrankNicolson {
            diag: 1.0 + alpha * 2.0 * kappa,
            off: -alpha * kappa,
            rhs_diag: 1.0 - alpha * 2.0 * kappa,
            rhs_off: alpha * kappa,
        }
    }

    /// Advances the interior of `u`; the boundary node stays zero.
    pub(crate) fn apply(&self, u: &mut [Complex64]) {
        let m = u.len() - 1;
        let interior = &mut u[..m];
        match self {
            KineticPropagator::Spectral { dst, factors } => {
                dst.apply(interior);
                let scale = 2.0 / (m + 1) as f64;
                for (x, f) in interior.iter_mut().zip(factors) {
                    *x *= f * scale;
                }
                dst.apply(interior);
            }
            KineticPropagator::CrankNicolson {
                diag,
                off,
                rhs_diag,
                rhs_off,
            } => {
                let rhs: Vec<Complex64> = (0..m)
                    .map(|j| {
                        let left = if j > 0 {
                            interior[j - 1]
                        } else {
                            Complex64::new(0.0, 0.0)
                        };
                        let right = if j + 1 < m {
                            interior[j + 1]
                        } else {
                            Complex64::new(0.0, 0.0)
                        };
                        rhs_diag * interior[j] + rhs_off * (left + right)
                    })
                    .collect();
                thomas(*diag, *off, &rhs, interior);
            }
        }
    }
}

/// Solves the constant-coefficient tridiagonal system `off·x_{j−1} + diag·x_j + off·x_{j+1} = rhs_j`.
fn thomas(diag: Complex64, off: Complex64, rhs: &[Complex64], out: &mut [Complex64]) {
    let m = rhs.len();
    let mut c = vec![Complex64::new(0.0, 0.0); m];
    let mut d = vec![Complex64::new(0.0, 0.0); m];
    c[0] = off / diag;
    d[0] = rhs[0] / diag;
    for j in 1..m {
        let denom = diag - off * c[j - 1];
        c[j] = off / denom;
        d[j] = (rhs[j] - off * d[j - 1]) / denom;
    }
    out[m - 1] = d[m - 1];
    for j in (0..m - 1).rev() {
        out[j] = d[j] - c[j] * out[j + 1];
    }
}
