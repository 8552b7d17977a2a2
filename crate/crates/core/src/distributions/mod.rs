//! Count distributions and the rate parametrization of the counting model.
//!
//! All mass and density functions are evaluated in log space and
//! exponentiated once.

mod gamma;
mod negbin;
mod poisson;
mod rate;
mod zpoisson;

pub use gamma::{gamma_moment, gamma_pdf, GammaDist};
pub use negbin::{nb_dispersion, nb_ln_pmf, nb_pmf, NBParams};
pub use poisson::{
    adhoc_zero_density, expectation_over_poisson, poisson_ln_pmf, poisson_moments, poisson_pmf,
    prob_all_zero, PoissonParams,
};
pub use rate::{expected_theta, rate_variance, DetectorConfig, OverdispersionModel, RateModel};
pub use zpoisson::{zpoisson_moments, zpoisson_pmf, ZPoissonParams};

/// Mean, variance and dispersion coefficient (variance over mean).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
    pub dispersion: f64,
}
