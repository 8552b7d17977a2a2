//! Classical estimation from `n` equal-duration count measurements.

use serde::{Deserialize, Serialize};

use crate::{Result, ZcdError};

/// Counts `x₁ … xₙ`, each collected over the same duration `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountData {
    counts: Vec<u64>,
    t: f64,
}

impl CountData {
    pub fn new(counts: Vec<u64>, t: f64) -> Result<Self> {
        if counts.is_empty() {
            return Err(ZcdError::InvalidInput(
                "at least one count is required".into(),
            ));
        }
        if !(t > 0.0 && t.is_finite()) {
            return Err(ZcdError::InvalidInput(format!(
                "measurement duration must be positive and finite, got {t}"
            )));
        }
        if counts
            .iter()
            .try_fold(0u64, |acc, &c| acc.checked_add(c))
            .is_none()
        {
            return Err(ZcdError::InvalidInput("sum of counts overflows".into()));
        }
        Ok(CountData { counts, t })
    }

    /// `n` all-zero measurements.
    pub fn zeros(n: usize, t: f64) -> Result<Self> {
        Self::new(vec![0; n], t)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn n(&self) -> u64 {
        self.counts.len() as u64
    }

    /// `S = Σ xᵢ`.
    pub fn sum(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Total exposure `n t`.
    pub fn exposure(&self) -> f64 {
        self.n() as f64 * self.t
    }
}

/// `(S, x̄)`.
pub fn sufficient_statistic(data: &CountData) -> (u64, f64) {
    let s = data.sum();
    (s, s as f64 / data.n() as f64)
}

/// Maximum-likelihood estimates and their estimated variances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MLReport {
    pub theta_hat: f64,
    pub rho_hat: f64,
    pub var_counts: f64,
    pub var_mean: f64,
    pub var_rate: f64,
    /// `S = 0`: every estimate collapses to zero.
    pub pathological: bool,
}

pub fn ml_estimates(data: &CountData) -> MLReport {
    let (s, xbar) = sufficient_statistic(data);
    let s = s as f64;
    let n = data.n() as f64;
    let nt = data.exposure();
    MLReport {
        theta_hat: xbar,
        rho_hat: s / nt,
        var_counts: s / n,
        var_mean: s / (n * n),
        var_rate: s / (nt * nt),
        pathological: s == 0.0,
    }
}

/// θ-dependent part of the log likelihood, `S ln θ - n θ`.
pub fn log_likelihood(theta: f64, data: &CountData) -> Result<f64> {
    if !(theta >= 0.0 && theta.is_finite()) {
        return Err(ZcdError::domain(
            "log_likelihood",
            format!("theta must be >= 0, got {theta}"),
        ));
    }
    let (s, _) = sufficient_statistic(data);
    let n = data.n() as f64;
    if s == 0 {
        return Ok(-n * theta);
    }
    if theta == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(s as f64 * theta.ln() - n * theta)
}

/// Mean and variance of θ and ρ under the zero-class density `n e^{-nθ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimpleProbabilityEstimates {
    pub mean_theta: f64,
    pub var_theta: f64,
    pub mean_rho: f64,
    pub var_rho: f64,
}

fn check_n_t(func: &'static str, n: u64, t: f64) -> Result<()> {
    if n == 0 {
        return Err(ZcdError::InvalidInput(format!(
            "{func}: n must be at least 1"
        )));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(ZcdError::InvalidInput(format!(
            "{func}: t must be positive, got {t}"
        )));
    }
    Ok(())
}

pub fn simple_probability_estimates(n: u64, t: f64) -> Result<SimpleProbabilityEstimates> {
    check_n_t("simple_probability_estimates", n, t)?;
    let n = n as f64;
    Ok(SimpleProbabilityEstimates {
        mean_theta: 1.0 / n,
        var_theta: 1.0 / (n * n),
        mean_rho: 1.0 / (n * t),
        var_rho: 1.0 / (n * n * t * t),
    })
}

/// Upper limit from the zero-class density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimpleUpperLimit {
    pub u_theta: f64,
    pub u_rho: f64,
}

/// `U_θ = ln(1/α)/n`, the point beyond which `n e^{-nθ}` holds mass `α`.
pub fn simple_probability_upper_limit(n: u64, t: f64, alpha: f64) -> Result<SimpleUpperLimit> {
    check_n_t("simple_probability_upper_limit", n, t)?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(ZcdError::InvalidInput(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    let u_theta = -alpha.ln() / n as f64;
    Ok(SimpleUpperLimit {
        u_theta,
        u_rho: u_theta / t,
    })
}

/// The "one count" rate limit, `1/(t c)`.
///
/// Not a statistical limit: no confidence level is attached. `calibration`
/// is a single multiplicative counts-per-event coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OneCountLimit {
    pub u_rho: f64,
    pub statistical: bool,
}

pub fn one_count_upper_limit(t: f64, calibration: f64) -> Result<OneCountLimit> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(ZcdError::InvalidInput(format!(
            "t must be positive, got {t}"
        )));
    }
    if !(calibration > 0.0 && calibration.is_finite()) {
        return Err(ZcdError::InvalidInput(format!(
            "calibration must be positive, got {calibration}"
        )));
    }
    Ok(OneCountLimit {
        u_rho: 1.0 / (t * calibration),
        statistical: false,
    })
}
