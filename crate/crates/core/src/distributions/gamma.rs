use serde::{Deserialize, Serialize};

use crate::numerics::{ln_ascending_factorial, log_gamma, reg_inc_gamma_lower};
use crate::{Result, ZcdError};

/// Gamma density over a rate, `b^a ρ^{a-1} e^{-bρ} / Γ(a)`.
///
/// `a` is the shape and `b` the rate parameter, in the inverse units of ρ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaDist {
    a: f64,
    b: f64,
}

impl GammaDist {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite() && b > 0.0 && b.is_finite()) {
            return Err(ZcdError::domain(
                "GammaDist",
                format!("shape and rate must be positive, got a = {a}, b = {b}"),
            ));
        }
        Ok(GammaDist { a, b })
    }

    pub fn shape(&self) -> f64 {
        self.a
    }

    pub fn rate(&self) -> f64 {
        self.b
    }

    pub fn mean(&self) -> f64 {
        self.a / self.b
    }

    pub fn variance(&self) -> f64 {
        self.a / (self.b * self.b)
    }

    /// Log density; `+∞` at the origin when `a < 1`.
    pub fn ln_pdf(&self, rho: f64) -> Result<f64> {
        if !(rho >= 0.0) {
            return Err(ZcdError::domain(
                "gamma_pdf",
                format!("rho must be >= 0, got {rho}"),
            ));
        }
        let GammaDist { a, b } = *self;
        if rho == 0.0 {
            return Ok(if a < 1.0 {
                f64::INFINITY
            } else if a > 1.0 {
                f64::NEG_INFINITY
            } else {
                b.ln()
            });
        }
        if rho.is_infinite() {
            return Ok(f64::NEG_INFINITY);
        }
        Ok(a * b.ln() + (a - 1.0) * rho.ln() - b * rho - log_gamma(a)?)
    }

    /// `P(ρ ≤ u)`.
    pub fn cdf(&self, u: f64) -> Result<f64> {
        if !(u >= 0.0) {
            return Err(ZcdError::domain(
                "GammaDist::cdf",
                format!("u must be >= 0, got {u}"),
            ));
        }
        reg_inc_gamma_lower(self.a, self.b * u)
    }
}

/// Gamma density at `rho`.
pub fn gamma_pdf(rho: f64, dist: &GammaDist) -> Result<f64> {
    Ok(dist.ln_pdf(rho)?.exp())
}

/// Raw moment `E[ρ^r] = (a)_r / b^r`.
pub fn gamma_moment(dist: &GammaDist, r: u64) -> Result<f64> {
    Ok((ln_ascending_factorial(dist.a, r)? - r as f64 * dist.b.ln()).exp())
}
