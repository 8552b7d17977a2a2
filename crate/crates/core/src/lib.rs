//! Inference for rare-event counting experiments that may observe nothing at all.
//!
//! The crate covers the full chain from the Poisson counting model to upper
//! limits on the underlying rate:
//!
//! * [`numerics`]: log-gamma, regularized incomplete gamma and its inverse,
//!   the exponential integral, and semi-infinite adaptive quadrature.
//! * [`distributions`]: Poisson, Gamma, zero-inflated Poisson and negative
//!   binomial mass/density functions, moments and dispersion coefficients.
//! * [`classical`]: sufficient statistics, maximum-likelihood estimates and the
//!   zero-class probability method.
//! * [`bayes`]: the BL/JJ/JR/ME prior catalog, conjugate Gamma posteriors,
//!   credible upper limits, and the divergence of the JJ evidence at zero counts.
//! * [`decision`]: bias, risk and admissibility of the Bayesian estimates.
//! * [`marginal`]: marginalization of zero-inflated Poisson and negative
//!   binomial posteriors over their nuisance parameter.
//! * [`montecarlo`]: seeded samplers, dispersion experiments and coverage runs.
//!
//! ```
//! use zerocount::bayes::{posterior, PriorKind, PriorSpec};
//! use zerocount::classical::CountData;
//! use zerocount::numerics::ToleranceConfig;
//!
//! let data = CountData::new(vec![0], 1.0).unwrap();
//! let post = posterior(&data, &PriorSpec::from_kind(PriorKind::ME, 1.0).unwrap()).unwrap();
//! assert_eq!(post.mean(), 0.5);
//! let limit = post.upper_limit(0.95, &ToleranceConfig::default()).unwrap();
//! assert!((limit.u_theta - 20f64.ln() / 2.0).abs() < 1e-10);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bayes;
pub mod classical;
pub mod decision;
pub mod distributions;
mod error;
pub mod marginal;
pub mod montecarlo;
pub mod numerics;

pub use error::{Result, ZcdError};
