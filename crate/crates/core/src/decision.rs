//! Bias, sampling variance and quadratic risk of the Bayesian estimates of
//! the mean count and its variance, and the resulting prior ranking.
//!
//! Estimates use the unit-duration convention: with `S` counts in `n`
//! measurements the mean-count estimate is `θ_B = (S + a)/(n + b)` and the
//! variance estimate is `V_B = (S + a)/(n + b)²`.
//!
//! Bias and risk depend on the true `θ`. [`ThetaMode::PlugIn`] replaces it by
//! the ML value `S/n`, which also turns the sampling variance `nθ` into `S`.

use std::cmp::Ordering;

use serde::Serialize;

use crate::bayes::{PriorKind, PriorSpec};
use crate::distributions::expectation_over_poisson;
use crate::numerics::ToleranceConfig;
use crate::{Result, ZcdError};

/// Which `θ` enters the bias and risk formulas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ThetaMode {
    /// `θ = S/n`.
    PlugIn,
    /// A known true value.
    TrueTheta(f64),
}

impl ThetaMode {
    fn theta(&self, s: u64, n: u64) -> Result<f64> {
        match *self {
            ThetaMode::PlugIn => Ok(s as f64 / n as f64),
            ThetaMode::TrueTheta(theta) if theta >= 0.0 && theta.is_finite() => Ok(theta),
            ThetaMode::TrueTheta(theta) => Err(ZcdError::domain(
                "ThetaMode",
                format!("theta must be >= 0, got {theta}"),
            )),
        }
    }
}

fn check(s: u64, n: u64, a: f64, b: f64) -> Result<()> {
    if n == 0 {
        return Err(ZcdError::InvalidInput("n must be at least 1".into()));
    }
    if !(a >= 0.0 && b >= 0.0) {
        return Err(ZcdError::InvalidInput(format!(
            "prior parameters must be >= 0, got a = {a}, b = {b}"
        )));
    }
    if !(s as f64 + a > 0.0) {
        return Err(ZcdError::ImproperPosterior {
            reason: format!("S + a = {} is not positive", s as f64 + a),
        });
    }
    Ok(())
}

/// `θ_B = (S + a)/(n + b)`.
pub fn bayes_mean_counts(s: u64, n: u64, a: f64, b: f64) -> Result<f64> {
    check(s, n, a, b)?;
    Ok((s as f64 + a) / (n as f64 + b))
}

/// `(a - bθ)/(n + b)`.
pub fn bias_mean(s: u64, n: u64, a: f64, b: f64, mode: ThetaMode) -> Result<f64> {
    check(s, n, a, b)?;
    let theta = mode.theta(s, n)?;
    Ok((a - b * theta) / (n as f64 + b))
}

/// `nθ/(n + b)²`, the sampling variance of `θ_B`.
pub fn sampling_variance_mean(theta: f64, n: u64, b: f64) -> Result<f64> {
    if !(theta >= 0.0) || n == 0 || !(b >= 0.0) {
        return Err(ZcdError::InvalidInput(format!(
            "need theta >= 0, n >= 1, b >= 0; got theta = {theta}, n = {n}, b = {b}"
        )));
    }
    let nb = n as f64 + b;
    Ok(n as f64 * theta / (nb * nb))
}

/// `(S + (a - bS/n)²)/(n + b)²`.
pub fn risk_mean(s: u64, n: u64, a: f64, b: f64) -> Result<f64> {
    risk_mean_with(s, n, a, b, ThetaMode::PlugIn)
}

/// `(nθ + (a - bθ)²)/(n + b)²`; equals [`risk_mean`] in plug-in mode.
pub fn risk_mean_with(s: u64, n: u64, a: f64, b: f64, mode: ThetaMode) -> Result<f64> {
    check(s, n, a, b)?;
    let theta = mode.theta(s, n)?;
    let nf = n as f64;
    let nb = nf + b;
    let shift = a - b * theta;
    Ok((nf * theta + shift * shift) / (nb * nb))
}

/// `V_B = (S + a)/(n + b)²`.
pub fn bayes_var(s: u64, n: u64, a: f64, b: f64) -> Result<f64> {
    check(s, n, a, b)?;
    let nb = n as f64 + b;
    Ok((s as f64 + a) / (nb * nb))
}

/// `V_B - S/n`.
pub fn bias_var(s: u64, n: u64, a: f64, b: f64) -> Result<f64> {
    bias_var_with(s, n, a, b, ThetaMode::PlugIn)
}

/// `E[V_B] - θ = (nθ + a)/(n + b)² - θ`; the plug-in form is `V_B - S/n`.
pub fn bias_var_with(s: u64, n: u64, a: f64, b: f64, mode: ThetaMode) -> Result<f64> {
    check(s, n, a, b)?;
    let theta = mode.theta(s, n)?;
    let nf = n as f64;
    let nb = nf + b;
    Ok((nf * theta + a) / (nb * nb) - theta)
}

/// `Bias² + S/(n + b)⁴`.
pub fn risk_var(s: u64, n: u64, a: f64, b: f64) -> Result<f64> {
    risk_var_with(s, n, a, b, ThetaMode::PlugIn)
}

/// `Bias² + nθ/(n + b)⁴`.
pub fn risk_var_with(s: u64, n: u64, a: f64, b: f64, mode: ThetaMode) -> Result<f64> {
    let bias = bias_var_with(s, n, a, b, mode)?;
    let theta = mode.theta(s, n)?;
    let nb2 = (n as f64 + b).powi(2);
    Ok(bias * bias + n as f64 * theta / (nb2 * nb2))
}

/// Estimates, biases and risks of one prior.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RiskReport {
    pub prior: PriorSpec,
    pub mean_estimate: f64,
    pub bias_mean: f64,
    pub risk_mean: f64,
    pub var_estimate: f64,
    pub bias_var: f64,
    pub risk_var: f64,
    pub theta_mode: ThetaMode,
}

/// Full [`RiskReport`] for `prior` with `S` counts in `n` unit-length runs.
pub fn risk_report(s: u64, n: u64, prior: &PriorSpec, mode: ThetaMode) -> Result<RiskReport> {
    let (a, b) = (prior.a, prior.b);
    Ok(RiskReport {
        prior: *prior,
        mean_estimate: bayes_mean_counts(s, n, a, b)?,
        bias_mean: bias_mean(s, n, a, b, mode)?,
        risk_mean: risk_mean_with(s, n, a, b, mode)?,
        var_estimate: bayes_var(s, n, a, b)?,
        bias_var: bias_var_with(s, n, a, b, mode)?,
        risk_var: risk_var_with(s, n, a, b, mode)?,
        theta_mode: mode,
    })
}

/// A prior left out of the ranking, with the reason.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Exclusion {
    pub prior: PriorSpec,
    pub reason: String,
}

/// Priors ordered by `(risk_mean, risk_var)`, lowest first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibilityRanking {
    pub s: u64,
    pub n: u64,
    pub ranked: Vec<RiskReport>,
    pub excluded: Vec<Exclusion>,
    pub verdict: String,
}

/// Ranks the catalog priors (unit duration) in plug-in mode. JJ enters only
/// when `S ≥ 1`.
pub fn compare_priors(s: u64, n: u64) -> Result<AdmissibilityRanking> {
    if n == 0 {
        return Err(ZcdError::InvalidInput("n must be at least 1".into()));
    }
    let mut ranked = Vec::new();
    let mut excluded = Vec::new();
    for kind in [PriorKind::BL, PriorKind::JJ, PriorKind::JR, PriorKind::ME] {
        let prior = PriorSpec::from_kind(kind, 1.0)?;
        match risk_report(s, n, &prior, ThetaMode::PlugIn) {
            Ok(r) => ranked.push(r),
            Err(e) if e.is_improper() => excluded.push(Exclusion {
                prior,
                reason: "improper".into(),
            }),
            Err(e) => return Err(e),
        }
    }
    ranked.sort_by(|x, y| {
        x.risk_mean
            .total_cmp(&y.risk_mean)
            .then(x.risk_var.total_cmp(&y.risk_var))
    });
    let verdict = match ranked.as_slice() {
        [first, second, ..] => {
            let tie_on_mean =
                first.risk_mean.partial_cmp(&second.risk_mean) == Some(Ordering::Equal);
            if tie_on_mean {
                format!(
                    "{} has the lowest risk (tied with {} on the mean risk, lower on the variance risk)",
                    first.prior.label(),
                    second.prior.label()
                )
            } else {
                format!("{} has the lowest risk", first.prior.label())
            }
        }
        [only] => format!("{} has the lowest risk", only.prior.label()),
        [] => "no prior could be evaluated".into(),
    };
    Ok(AdmissibilityRanking {
        s,
        n,
        ranked,
        excluded,
        verdict,
    })
}

/// Summation check of the bias, variance and risk formulas at a true `θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RiskOracleReport {
    pub theta: f64,
    pub n: u64,
    pub expected_mean_sum: f64,
    pub expected_mean_closed: f64,
    pub variance_sum: f64,
    pub variance_closed: f64,
    pub risk_sum: f64,
    pub risk_closed: f64,
    /// Largest of the three absolute discrepancies.
    pub max_discrepancy: f64,
    /// `|risk - (bias² + variance)|` for the closed forms.
    pub decomposition_residual: f64,
}

/// Compares the closed forms for `E[θ_B]`, `Var θ_B` and the risk with
/// direct sums over the sampling distribution of `S ~ Poisson(nθ)`.
pub fn validate_risk_oracle(
    theta: f64,
    n: u64,
    prior: &PriorSpec,
    tol: &ToleranceConfig,
) -> Result<RiskOracleReport> {
    if !(theta >= 0.0 && theta.is_finite()) || n == 0 {
        return Err(ZcdError::InvalidInput(format!(
            "need theta >= 0 and n >= 1, got {theta}, {n}"
        )));
    }
    let (a, b) = (prior.a, prior.b);
    let nf = n as f64;
    let nb = nf + b;
    let estimate = |s: u64| (s as f64 + a) / nb;
    let lambda = nf * theta;

    let expected_mean_sum = expectation_over_poisson(estimate, lambda, tol)?;
    let variance_sum =
        expectation_over_poisson(|s| (estimate(s) - expected_mean_sum).powi(2), lambda, tol)?;
    let risk_sum = expectation_over_poisson(|s| (estimate(s) - theta).powi(2), lambda, tol)?;

    let bias_closed = (a - b * theta) / nb;
    let variance_closed = sampling_variance_mean(theta, n, b)?;
    // The estimator is defined for every S even when the posterior is not.
    let risk_closed = {
        let shift = a - b * theta;
        (nf * theta + shift * shift) / (nb * nb)
    };
    let expected_mean_closed = theta + bias_closed;

    let max_discrepancy = [
        (expected_mean_sum - expected_mean_closed).abs(),
        (variance_sum - variance_closed).abs(),
        (risk_sum - risk_closed).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);

    Ok(RiskOracleReport {
        theta,
        n,
        expected_mean_sum,
        expected_mean_closed,
        variance_sum,
        variance_closed,
        risk_sum,
        risk_closed,
        max_discrepancy,
        decomposition_residual: (risk_closed - (bias_closed * bias_closed + variance_closed)).abs(),
    })
}
