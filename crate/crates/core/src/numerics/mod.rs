//! Special functions, quadrature and root finding shared by every other module.
//!
//! Everything here is a pure function of its arguments.

mod expint;
mod gamma;
mod quadrature;
mod roots;

use serde::{Deserialize, Serialize};

use crate::{Result, ZcdError};

pub use expint::exp_integral_e1;
pub use gamma::{
    inv_reg_inc_gamma_lower, ln_ascending_factorial, log_gamma, reg_inc_gamma_lower,
    reg_inc_gamma_upper,
};
pub use quadrature::{integrate, integrate_semi_infinite, integrate_semi_infinite_with, QuadRule};
pub use roots::solve_increasing;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082;

/// Tolerances shared by the iterative algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Absolute residual target for root finding and series truncation.
    pub abs_tol: f64,
    /// Relative bracket width at which the root finder stops.
    pub rel_tol: f64,
    /// Iteration budget for the root finder (bracket expansion excluded).
    pub max_iter: usize,
    /// Relative error target of adaptive quadrature.
    pub quad_rel_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_iter: 200,
            quad_rel_tol: 1e-9,
        }
    }
}

impl ToleranceConfig {
    pub fn new(abs_tol: f64, rel_tol: f64, max_iter: usize, quad_rel_tol: f64) -> Result<Self> {
        let cfg = ToleranceConfig {
            abs_tol,
            rel_tol,
            max_iter,
            quad_rel_tol,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.abs_tol) || !positive(self.rel_tol) || !positive(self.quad_rel_tol) {
            return Err(ZcdError::InvalidInput(format!(
                "tolerances must be finite and strictly positive, got {self:?}"
            )));
        }
        if self.max_iter == 0 {
            return Err(ZcdError::InvalidInput("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

/// Rounds to `decimals` places with ties going away from zero.
pub fn round_half_away(x: f64, decimals: i32) -> f64 {
    let scale = 10f64.powi(decimals);
    (x * scale).round() / scale
}
