//! Reference priors, conjugate Gamma posteriors and credible upper limits.
//!
//! Every prior in the catalog has the Gamma kernel `ρ^{a-1} e^{-bρ}`, so the
//! posterior after observing `S` counts in `n` runs of length `t` is
//! Gamma with shape `A = S + a` and rate `B = n t + b`.

mod entropy;
mod posterior;
mod prior;

pub use entropy::{differential_entropy_gamma, jj_divergence_demo, JjDivergence};
pub use posterior::{fisher_information, posterior, GammaPosterior, UpperLimitResult};
pub use prior::{prior_density, prior_params, PriorKind, PriorNormalization, PriorSpec};
