use serde::{Deserialize, Serialize};

use super::poisson::check_theta;
use super::{poisson_pmf, Moments};
use crate::{Result, ZcdError};

/// Zero-inflated Poisson in the `(θ, ψ)` form: `P(0) = ψ P₀` and the
/// positive classes rescaled by `(1 - ψP₀)/(1 - P₀)`, with `P₀ = e^{-θ}`.
///
/// Valid for `1 ≤ ψ ≤ 1/P₀`; `ψ = 1` is the Poisson distribution and
/// `ψ = 1/P₀` puts all mass at zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZPoissonParams {
    theta: f64,
    psi: f64,
}

// Slack for ψ P₀ = 1 computed in floating point.
const PSI_SLACK: f64 = 1e-12;

impl ZPoissonParams {
    pub fn new(theta: f64, psi: f64) -> Result<Self> {
        check_theta("ZPoissonParams", theta)?;
        if theta == 0.0 {
            return Err(ZcdError::domain("ZPoissonParams", "theta must be positive"));
        }
        let p0 = (-theta).exp();
        if !(psi >= 1.0) || psi * p0 > 1.0 + PSI_SLACK {
            return Err(ZcdError::domain(
                "ZPoissonParams",
                format!("psi must lie in [1, 1/P0] = [1, {}], got {psi}", 1.0 / p0),
            ));
        }
        Ok(ZPoissonParams { theta, psi })
    }

    /// Parameters with the requested mean and dispersion coefficient.
    ///
    /// From the moment formulas: `θ = mean + (dispersion - 1)` and
    /// `ψ = 1 + c (1 - P₀)/P₀` with `c = (dispersion - 1)/θ`.
    pub fn from_mean_dispersion(mean: f64, dispersion: f64) -> Result<Self> {
        if !(mean > 0.0) || !(dispersion >= 1.0) {
            return Err(ZcdError::domain(
                "ZPoissonParams::from_mean_dispersion",
                format!("need mean > 0 and dispersion >= 1, got {mean}, {dispersion}"),
            ));
        }
        let theta = mean + dispersion - 1.0;
        let c = (dispersion - 1.0) / theta;
        let p0 = (-theta).exp();
        let psi = 1.0 + c * (-(-theta).exp_m1()) / p0;
        Self::new(theta, psi)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    pub fn p0(&self) -> f64 {
        (-self.theta).exp()
    }

    /// `(ψ - 1) P₀ / (1 - P₀)`, the share of positive-class mass moved to zero.
    fn shift(&self) -> f64 {
        (self.psi - 1.0) / self.theta.exp_m1()
    }

    pub fn pmf(&self, x: u64) -> f64 {
        if x == 0 {
            return (self.psi * self.p0()).min(1.0);
        }
        let scale = (1.0 - self.shift()).max(0.0);
        scale * poisson_pmf(x, self.theta).unwrap_or(0.0)
    }
}

/// Zero-inflated Poisson mass at `x`.
pub fn zpoisson_pmf(x: u64, params: &ZPoissonParams) -> f64 {
    params.pmf(x)
}

/// Mean `(1 - c) θ` and dispersion `1 + c θ`, `c = (ψ - 1)P₀/(1 - P₀)`.
pub fn zpoisson_moments(params: &ZPoissonParams) -> Moments {
    let c = params.shift();
    let mean = (1.0 - c) * params.theta;
    let dispersion = 1.0 + c * params.theta;
    Moments {
        mean,
        variance: mean * dispersion,
        dispersion,
    }
}
