//! Seeded samplers, dispersion experiments and coverage of credible limits.
//!
//! All randomness comes from ChaCha20 seeded with a 64-bit seed. Coverage
//! replicate `i` draws from stream `i` of that seed, so each replicate can
//! be regenerated on its own.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Gamma, Poisson};
use serde::Serialize;

use crate::bayes::{posterior, PriorSpec};
use crate::classical::CountData;
use crate::distributions::{poisson_pmf, NBParams, ZPoissonParams};
use crate::numerics::{reg_inc_gamma_upper, ToleranceConfig};
use crate::{Result, ZcdError};

/// Generator recorded in run metadata.
pub const PRNG_NAME: &str = "ChaCha20";
/// Crate providing [`PRNG_NAME`].
pub const PRNG_SOURCE: &str = "rand_chacha 0.9";

/// Count distribution to sample from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum CountModel {
    Poisson { theta: f64 },
    ZPoisson { theta: f64, psi: f64 },
    NB { theta: f64, a: f64 },
}

impl CountModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            CountModel::Poisson { theta } => {
                if theta >= 0.0 && theta.is_finite() {
                    Ok(())
                } else {
                    Err(ZcdError::InvalidInput(format!(
                        "theta must be >= 0, got {theta}"
                    )))
                }
            }
            CountModel::ZPoisson { theta, psi } => ZPoissonParams::new(theta, psi).map(|_| ()),
            CountModel::NB { theta, a } => NBParams::new(theta, a).map(|_| ()),
        }
    }
}

/// A reproducible sampling request.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimConfig {
    pub model: CountModel,
    pub n_draws: u64,
    pub seed: u64,
}

fn poisson_draw<R: Rng>(rng: &mut R, lambda: f64) -> Result<u64> {
    if lambda == 0.0 {
        return Ok(0);
    }
    let d = Poisson::new(lambda)
        .map_err(|e| ZcdError::InvalidInput(format!("Poisson sampler: {e}")))?;
    Ok(d.sample(rng) as u64)
}

/// Inversion of the zero-inflated cdf, walking up from zero.
fn zpoisson_draw<R: Rng>(rng: &mut R, p: &ZPoissonParams) -> u64 {
    let u: f64 = rng.random();
    let mut cdf = p.pmf(0);
    if u < cdf {
        return 0;
    }
    let scale = (1.0 - p.psi() * p.p0()) / (1.0 - p.p0());
    let theta = p.theta();
    let mut pj = p.p0();
    let mut x = 0u64;
    loop {
        x += 1;
        pj *= theta / x as f64;
        let step = scale * pj;
        cdf += step;
        // Stop when the cdf is reached or no further mass is representable.
        if u < cdf || (x as f64 > theta && step < f64::EPSILON * cdf) {
            return x;
        }
    }
}

/// `n_draws` counts from `model`.
///
/// Poisson draws use `rand_distr`'s sampler, the negative binomial is a
/// Gamma(shape `a`, mean `θ`) mixture of Poissons, and the zero-inflated
/// Poisson inverts its cdf.
pub fn sample(model: &CountModel, n_draws: u64, seed: u64) -> Result<Vec<u64>> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    sample_with(model, n_draws, &mut rng)
}

fn sample_with<R: Rng>(model: &CountModel, n_draws: u64, rng: &mut R) -> Result<Vec<u64>> {
    model.validate()?;
    let n = n_draws as usize;
    match *model {
        CountModel::Poisson { theta } => {
            if theta == 0.0 {
                return Ok(vec![0; n]);
            }
            let d = Poisson::new(theta)
                .map_err(|e| ZcdError::InvalidInput(format!("Poisson sampler: {e}")))?;
            Ok((0..n).map(|_| d.sample(rng) as u64).collect())
        }
        CountModel::ZPoisson { theta, psi } => {
            let p = ZPoissonParams::new(theta, psi)?;
            Ok((0..n).map(|_| zpoisson_draw(rng, &p)).collect())
        }
        CountModel::NB { theta, a } => {
            let g = Gamma::new(a, theta / a)
                .map_err(|e| ZcdError::InvalidInput(format!("Gamma sampler: {e}")))?;
            (0..n)
                .map(|_| {
                    let lambda = g.sample(rng);
                    poisson_draw(rng, lambda)
                })
                .collect()
        }
    }
}

/// Sample moments of a run of counts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimSummary {
    pub n_draws: u64,
    pub sample_mean: f64,
    /// With the `1/(n-1)` denominator; zero for a single draw.
    pub sample_variance: f64,
    /// Variance over mean; `None` when the mean is zero.
    pub dispersion: Option<f64>,
}

/// Mean, unbiased variance and dispersion, accumulated in index order.
pub fn summarize(counts: &[u64]) -> SimSummary {
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for (i, &c) in counts.iter().enumerate() {
        let x = c as f64;
        let delta = x - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (x - mean);
    }
    let n = counts.len();
    let sample_variance = if n > 1 { m2 / (n - 1) as f64 } else { 0.0 };
    SimSummary {
        n_draws: n as u64,
        sample_mean: mean,
        sample_variance,
        dispersion: (mean > 0.0).then(|| sample_variance / mean),
    }
}

/// Draws and summarizes a [`SimConfig`].
pub fn simulate(cfg: &SimConfig) -> Result<SimSummary> {
    if cfg.n_draws == 0 {
        return Err(ZcdError::InvalidInput("n_draws must be at least 1".into()));
    }
    Ok(summarize(&sample(&cfg.model, cfg.n_draws, cfg.seed)?))
}

/// `n_bins` Poisson(θ) counts, summarized.
pub fn dispersion_experiment(theta: f64, n_bins: u64, seed: u64) -> Result<SimSummary> {
    if !(theta > 0.0) {
        return Err(ZcdError::InvalidInput(format!(
            "theta must be positive, got {theta}"
        )));
    }
    simulate(&SimConfig {
        model: CountModel::Poisson { theta },
        n_draws: n_bins,
        seed,
    })
}

/// Frequentist coverage of credible upper limits on the rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoverageConfig {
    pub true_rho: f64,
    pub t: f64,
    pub n: u64,
    pub prior: PriorSpec,
    pub cl: f64,
    pub reps: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoverageReport {
    pub reps: u64,
    pub covered: u64,
    pub coverage: f64,
    /// Binomial standard error `sqrt(c(1-c)/reps)`.
    pub standard_error: f64,
}

/// Fraction of replicates whose upper limit is at least the true rate.
///
/// Each replicate draws `n` Poisson(ρt) counts and computes the limit from
/// the full data, so zero-count replicates are included. Limits depend only
/// on `S` and are cached per value of `S`.
pub fn coverage_experiment(cfg: &CoverageConfig, tol: &ToleranceConfig) -> Result<CoverageReport> {
    if !(cfg.true_rho >= 0.0 && cfg.true_rho.is_finite()) {
        return Err(ZcdError::InvalidInput(format!(
            "true rate must be >= 0, got {}",
            cfg.true_rho
        )));
    }
    if cfg.reps == 0 || cfg.n == 0 {
        return Err(ZcdError::InvalidInput(
            "reps and n must be at least 1".into(),
        ));
    }
    if !(cfg.cl > 0.0 && cfg.cl < 1.0) {
        return Err(ZcdError::InvalidInput(format!(
            "credibility level must lie in (0, 1), got {}",
            cfg.cl
        )));
    }
    let model = CountModel::Poisson {
        theta: cfg.true_rho * cfg.t,
    };
    let mut limits: HashMap<u64, f64> = HashMap::new();
    let mut covered = 0u64;
    for rep in 0..cfg.reps {
        let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed);
        rng.set_stream(rep);
        let counts = sample_with(&model, cfg.n, &mut rng)?;
        let s: u64 = counts.iter().sum();
        let u_rho = match limits.get(&s) {
            Some(&u) => u,
            None => {
                let data = CountData::new(counts, cfg.t)?;
                let post = posterior(&data, &cfg.prior).map_err(|e| match e {
                    ZcdError::ImproperPosterior { reason } => ZcdError::ImproperReplicate {
                        replicate: rep,
                        reason,
                    },
                    other => other,
                })?;
                let u = post.upper_limit(cfg.cl, tol)?.u_rho;
                limits.insert(s, u);
                u
            }
        };
        if u_rho >= cfg.true_rho {
            covered += 1;
        }
    }
    let coverage = covered as f64 / cfg.reps as f64;
    Ok(CoverageReport {
        reps: cfg.reps,
        covered,
        coverage,
        standard_error: (coverage * (1.0 - coverage) / cfg.reps as f64).sqrt(),
    })
}

/// Pearson goodness-of-fit of counts against a Poisson pmf.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChiSquareReport {
    pub statistic: f64,
    pub dof: u64,
    pub p_value: f64,
}

/// Bins are merged left to right until each expects at least `min_expected`
/// counts; the last bin absorbs the upper tail.
pub fn chi_square_poisson(
    counts: &[u64],
    theta: f64,
    min_expected: f64,
) -> Result<ChiSquareReport> {
    if counts.is_empty() || !(theta > 0.0) || !(min_expected > 0.0) {
        return Err(ZcdError::InvalidInput(
            "need counts, theta > 0 and min_expected > 0".into(),
        ));
    }
    let total = counts.len() as f64;
    let max = *counts.iter().max().expect("non-empty");
    let mut observed_at = vec![0u64; max as usize + 1];
    for &c in counts {
        observed_at[c as usize] += 1;
    }
    // (expected, observed) per merged bin
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let (mut exp_acc, mut obs_acc, mut cdf) = (0.0, 0.0, 0.0);
    let mut x = 0u64;
    loop {
        let p = poisson_pmf(x, theta)?;
        let remaining = 1.0 - (cdf + p);
        exp_acc += total * p;
        obs_acc += observed_at.get(x as usize).copied().unwrap_or(0) as f64;
        cdf += p;
        if total * remaining < min_expected {
            // Fold the tail into this bin and stop.
            exp_acc += total * remaining.max(0.0);
            obs_acc += observed_at.iter().skip(x as usize + 1).sum::<u64>() as f64;
            bins.push((exp_acc, obs_acc));
            break;
        }
        if exp_acc >= min_expected {
            bins.push((exp_acc, obs_acc));
            exp_acc = 0.0;
            obs_acc = 0.0;
        }
        x += 1;
    }
    if bins.len() < 2 {
        return Err(ZcdError::InvalidInput(
            "too few draws for a chi-square test".into(),
        ));
    }
    let statistic: f64 = bins.iter().map(|(e, o)| (o - e).powi(2) / e).sum();
    let dof = bins.len() as u64 - 1;
    let p_value = reg_inc_gamma_upper(dof as f64 / 2.0, statistic / 2.0)?;
    Ok(ChiSquareReport {
        statistic,
        dof,
        p_value,
    })
}
