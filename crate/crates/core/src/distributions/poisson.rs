use serde::{Deserialize, Serialize};

use super::Moments;
use crate::numerics::{log_gamma, ToleranceConfig};
use crate::{Result, ZcdError};

/// Dimensionless Poisson count parameter θ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoissonParams {
    theta: f64,
}

impl PoissonParams {
    pub fn new(theta: f64) -> Result<Self> {
        check_theta("PoissonParams", theta)?;
        Ok(PoissonParams { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn pmf(&self, x: u64) -> f64 {
        poisson_ln_pmf(x, self.theta).map_or(0.0, f64::exp)
    }

    pub fn moments(&self) -> Moments {
        moments(self.theta)
    }
}

pub(crate) fn check_theta(func: &'static str, theta: f64) -> Result<()> {
    if theta >= 0.0 && theta.is_finite() {
        Ok(())
    } else {
        Err(ZcdError::domain(
            func,
            format!("theta must be finite and >= 0, got {theta}"),
        ))
    }
}

/// `ln P(x | θ)`; `-∞` for impossible outcomes at `θ = 0`.
pub fn poisson_ln_pmf(x: u64, theta: f64) -> Result<f64> {
    check_theta("poisson_pmf", theta)?;
    if theta == 0.0 {
        return Ok(if x == 0 { 0.0 } else { f64::NEG_INFINITY });
    }
    let xf = x as f64;
    Ok(xf * theta.ln() - theta - log_gamma(xf + 1.0)?)
}

/// `P(x | θ) = θ^x e^{-θ} / x!`. At `θ = 0` the mass sits entirely on zero.
pub fn poisson_pmf(x: u64, theta: f64) -> Result<f64> {
    Ok(poisson_ln_pmf(x, theta)?.exp())
}

fn moments(theta: f64) -> Moments {
    Moments {
        mean: theta,
        variance: theta,
        // Kept at 1 even at θ = 0 by convention.
        dispersion: 1.0,
    }
}

/// Mean, variance and dispersion of the Poisson distribution.
pub fn poisson_moments(theta: f64) -> Result<Moments> {
    check_theta("poisson_moments", theta)?;
    Ok(moments(theta))
}

/// Probability that all `n` measurements return zero counts, `e^{-nθ}`.
pub fn prob_all_zero(n: u64, theta: f64) -> Result<f64> {
    check_theta("prob_all_zero", theta)?;
    if n == 0 {
        return Err(ZcdError::InvalidInput(
            "need at least one measurement".into(),
        ));
    }
    Ok((-(n as f64) * theta).exp())
}

/// The zero-class probability read as a density in θ: `n e^{-nθ}`.
pub fn adhoc_zero_density(theta: f64, n: u64) -> Result<f64> {
    Ok(n as f64 * prob_all_zero(n, theta)?)
}

/// `Σ_x f(x) P(x | θ)`, truncated once a geometric bound on the remaining
/// tail drops below `tol.abs_tol`.
///
/// The bound is taken past the mode, where successive terms shrink by a
/// ratio `q < 1`; the tail is then at most `|term| q / (1 - q)`. A root of
/// `f` in the tail also shrinks terms, so the Poisson tail mass
/// `P(X > x) ≤ p(x) θ / (x + 1 - θ)` must be below `tol.abs_tol` as well.
/// Gives up at `x = 10 (θ + 10)`.
pub fn expectation_over_poisson<F>(f: F, theta: f64, tol: &ToleranceConfig) -> Result<f64>
where
    F: Fn(u64) -> f64,
{
    check_theta("expectation_over_poisson", theta)?;
    if theta == 0.0 {
        return Ok(f(0));
    }
    let max_x = (10.0 * (theta + 10.0)).ceil() as u64;
    let mut sum = 0.0;
    let mut prev = 0.0_f64;
    let mut prev_ratio = f64::INFINITY;
    let mut tail_bound = f64::INFINITY;
    for x in 0..=max_x {
        let mass = poisson_pmf(x, theta)?;
        let term = f(x) * mass;
        if !term.is_finite() {
            return Err(ZcdError::domain(
                "expectation_over_poisson",
                format!("non-finite term at x = {x}"),
            ));
        }
        sum += term;
        if (x as f64) > theta + 1.0 {
            if mass == 0.0 {
                // Underflowed pmf: nothing representable is left.
                return Ok(sum);
            }
            if term != 0.0 && prev != 0.0 {
                let q = term.abs() / prev.abs();
                // Two consecutive contracting steps before trusting the bound.
                if q < 1.0 && prev_ratio < 1.0 {
                    tail_bound = term.abs() * q / (1.0 - q);
                    let mass_tail = mass * theta / (x as f64 + 1.0 - theta);
                    if tail_bound < tol.abs_tol && mass_tail < tol.abs_tol {
                        return Ok(sum);
                    }
                }
                prev_ratio = q;
            } else {
                prev_ratio = f64::INFINITY;
            }
        }
        prev = term;
    }
    Err(ZcdError::Truncation { max_x, tail_bound })
}
