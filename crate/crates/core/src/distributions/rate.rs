use serde::{Deserialize, Serialize};

use crate::{Result, ZcdError};

/// Threshold on the per-atom detection probability above which the
/// Poisson approximation to the binomial is flagged.
pub const POISSON_REGIME_LIMIT: f64 = 0.1;

fn check_positive(func: &'static str, name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(ZcdError::domain(
            func,
            format!("{name} must be positive and finite, got {v}"),
        ))
    }
}

/// Rate `ρ` observed for a time `t` in each of `n` measurements.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateModel {
    pub rho: f64,
    pub t: f64,
    pub n: u64,
}

impl RateModel {
    pub fn new(rho: f64, t: f64, n: u64) -> Result<Self> {
        if !(rho >= 0.0 && rho.is_finite()) {
            return Err(ZcdError::domain(
                "RateModel",
                format!("rho must be >= 0, got {rho}"),
            ));
        }
        check_positive("RateModel", "t", t)?;
        if n == 0 {
            return Err(ZcdError::domain("RateModel", "n must be at least 1"));
        }
        Ok(RateModel { rho, t, n })
    }

    /// Count parameter of a single measurement, `ρ t`.
    pub fn theta(&self) -> f64 {
        self.rho * self.t
    }
}

/// `N` atoms with decay constant `λ`, counted with efficiency `ε` for time `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectorConfig {
    pub n_atoms: f64,
    pub decay_const: f64,
    pub efficiency: f64,
    pub t: f64,
}

impl DetectorConfig {
    pub fn new(n_atoms: f64, decay_const: f64, efficiency: f64, t: f64) -> Result<Self> {
        check_positive("DetectorConfig", "n_atoms", n_atoms)?;
        check_positive("DetectorConfig", "decay_const", decay_const)?;
        check_positive("DetectorConfig", "t", t)?;
        if !(0.0..=1.0).contains(&efficiency) {
            return Err(ZcdError::domain(
                "DetectorConfig",
                format!("efficiency must lie in [0, 1], got {efficiency}"),
            ));
        }
        Ok(DetectorConfig {
            n_atoms,
            decay_const,
            efficiency,
            t,
        })
    }

    /// Detection probability per atom, `p = λ t ε`.
    pub fn p(&self) -> f64 {
        self.decay_const * self.t * self.efficiency
    }

    /// Set when `p` exceeds [`POISSON_REGIME_LIMIT`].
    pub fn poisson_regime_warning(&self) -> bool {
        self.p() > POISSON_REGIME_LIMIT
    }

    /// Count rate `ρ = N λ ε`.
    pub fn rho(&self) -> f64 {
        self.n_atoms * self.decay_const * self.efficiency
    }
}

/// Expected count `θ = N λ ε t`.
pub fn expected_theta(cfg: &DetectorConfig) -> f64 {
    cfg.rho() * cfg.t
}

/// Dispersion coefficient of counts and the excess variation coefficient
/// of the efficiency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OverdispersionModel {
    pub delta_x: f64,
    pub v: f64,
}

impl OverdispersionModel {
    pub fn new(delta_x: f64, v: f64) -> Result<Self> {
        check_positive("OverdispersionModel", "delta_x", delta_x)?;
        if !(v >= 0.0 && v.is_finite()) {
            return Err(ZcdError::domain(
                "OverdispersionModel",
                format!("v must be >= 0, got {v}"),
            ));
        }
        Ok(OverdispersionModel { delta_x, v })
    }

    /// `δ = μ₂/θ + θ v²`; with Poisson variance `μ₂ = θ` this is `1 + θ v²`.
    pub fn from_variance_and_v(theta: f64, variance: f64, v: f64) -> Result<Self> {
        check_positive("OverdispersionModel::from_variance_and_v", "theta", theta)?;
        if !(variance >= 0.0) {
            return Err(ZcdError::domain(
                "OverdispersionModel::from_variance_and_v",
                format!("variance must be >= 0, got {variance}"),
            ));
        }
        Self::new(variance / theta + theta * v * v, v)
    }
}

/// Variance of the rate estimate, `δ ρ / t`.
pub fn rate_variance(rho: f64, t: f64, delta_x: f64) -> Result<f64> {
    if !(rho >= 0.0) {
        return Err(ZcdError::domain(
            "rate_variance",
            format!("rho must be >= 0, got {rho}"),
        ));
    }
    check_positive("rate_variance", "t", t)?;
    check_positive("rate_variance", "delta_x", delta_x)?;
    Ok(delta_x * rho / t)
}
