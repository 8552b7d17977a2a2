use serde::{Deserialize, Serialize};

use crate::numerics::{ln_ascending_factorial, log_gamma};
use crate::{Result, ZcdError};

/// Negative binomial as a Gamma mixture of Poissons, parametrized by its
/// mean `θ` and shape `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NBParams {
    theta: f64,
    a: f64,
}

impl NBParams {
    pub fn new(theta: f64, a: f64) -> Result<Self> {
        if !(theta > 0.0 && theta.is_finite() && a > 0.0 && a.is_finite()) {
            return Err(ZcdError::domain(
                "NBParams",
                format!("theta and a must be positive, got theta = {theta}, a = {a}"),
            ));
        }
        Ok(NBParams { theta, a })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn shape(&self) -> f64 {
        self.a
    }

    pub fn pmf(&self, x: u64) -> f64 {
        nb_ln_pmf(x, self.theta, self.a).map_or(0.0, f64::exp)
    }
}

/// `ln NB(x | θ, a) = ln[θ^x (a)_x / (x! a^x (1 + θ/a)^{x+a})]`.
///
/// Written as `x ln(θ/(a+θ)) + ln (a)_x - ln x! - a ln(1 + θ/a)` so that it
/// stays finite as `a → 0`.
pub fn nb_ln_pmf(x: u64, theta: f64, a: f64) -> Result<f64> {
    if !(theta > 0.0 && a > 0.0) {
        return Err(ZcdError::domain(
            "nb_pmf",
            format!("theta and a must be positive, got theta = {theta}, a = {a}"),
        ));
    }
    let xf = x as f64;
    let log_ratio = if x == 0 {
        0.0
    } else {
        xf * (theta.ln() - (a + theta).ln())
    };
    Ok(log_ratio + ln_ascending_factorial(a, x)? - log_gamma(xf + 1.0)? - a * (theta / a).ln_1p())
}

/// Negative binomial mass at `x`.
pub fn nb_pmf(x: u64, params: &NBParams) -> f64 {
    params.pmf(x)
}

/// Dispersion coefficient `1 + θ/a`.
pub fn nb_dispersion(params: &NBParams) -> f64 {
    1.0 + params.theta / params.a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::poisson_pmf;

    #[test]
    fn zero_class_example() {
        let p = NBParams::new(1.0, 1.0).unwrap();
        assert!((p.pmf(0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn large_shape_approaches_poisson() {
        let p = NBParams::new(2.5, 1e8).unwrap();
        for x in 0..20 {
            assert!((p.pmf(x) - poisson_pmf(x, 2.5).unwrap()).abs() < 1e-6);
        }
    }

    #[test]
    fn mean_by_summation() {
        let p = NBParams::new(4.0, 8.0).unwrap();
        let mean: f64 = (0..=1000_u64).map(|x| x as f64 * p.pmf(x)).sum();
        assert!((mean - 4.0).abs() < 1e-9);
    }

    #[test]
    fn dispersion_examples() {
        assert_eq!(nb_dispersion(&NBParams::new(4.0, 8.0).unwrap()), 1.5);
        assert_eq!(nb_dispersion(&NBParams::new(2.0, 2.0).unwrap()), 2.0);
        assert!((nb_dispersion(&NBParams::new(2.0, 1e15).unwrap()) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn matches_textbook_form() {
        // θ^x Γ(a+x) / (x! Γ(a) a^x (1+θ/a)^{x+a}) evaluated naively.
        let (theta, a) = (3.0_f64, 2.5_f64);
        for x in 0..15_u64 {
            let xf = x as f64;
            let naive = (xf * theta.ln() + log_gamma(a + xf).unwrap()
                - log_gamma(xf + 1.0).unwrap()
                - log_gamma(a).unwrap()
                - xf * a.ln()
                - (xf + a) * (1.0 + theta / a).ln())
            .exp();
            assert!((nb_ln_pmf(x, theta, a).unwrap().exp() - naive).abs() < 1e-14);
        }
    }

    #[test]
    fn vanishing_shape_boundary() {
        assert!((nb_ln_pmf(0, 1.0, 1e-12).unwrap().exp() - 1.0).abs() < 1e-9);
        assert!(nb_ln_pmf(2, 1.0, 1e-12).unwrap().exp() < 1e-11);
    }
}
