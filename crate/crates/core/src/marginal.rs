//! Marginal posteriors of θ for the zero-inflated Poisson and negative
//! binomial models under exponential priors on θ and on the nuisance
//! parameter, compared with the ME Poisson posterior `2(2θ)^x e^{-2θ}/x!`.
//!
//! The z-Poisson weight ψ is integrated over `(0, ∞)` here, which goes beyond
//! the range on which [`ZPoissonParams`](crate::distributions::ZPoissonParams)
//! is a valid distribution; the joint density is then allowed to turn
//! negative for `ψ > e^θ`. Both marginals are computed by direct quadrature.

use std::cell::RefCell;

use serde::Serialize;

use crate::distributions::nb_ln_pmf;
use crate::numerics::{integrate_semi_infinite_with, log_gamma, QuadRule, ToleranceConfig};
use crate::{Result, ZcdError};

/// Which joint posterior was marginalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MarginalModel {
    ZPoisson,
    NegBinomial,
    /// Negative binomial with the shape restricted to `a ≥ a_min`.
    NegBinomialRestricted,
}

/// Numerically marginalized density on a θ grid next to the ME Poisson
/// posterior.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarginalComparison {
    pub model: MarginalModel,
    pub x: u64,
    pub theta_grid: Vec<f64>,
    pub numeric_density: Vec<f64>,
    pub claimed_density: Vec<f64>,
    /// Trapezoidal `∫ |numeric - claimed| dθ` over the grid.
    pub l1_distance: f64,
    pub linf_distance: f64,
    /// `|∫ numeric dθ - 1|` over `(0, ∞)`.
    pub numeric_norm_residual: f64,
}

/// `points` equally spaced values on `[0, x/2 + 10]`.
pub fn default_theta_grid(x: u64, points: usize) -> Vec<f64> {
    let top = x as f64 / 2.0 + 10.0;
    let m = points.max(2) - 1;
    (0..=m).map(|i| top * i as f64 / m as f64).collect()
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(ZcdError::InvalidInput("theta grid is empty".into()));
    }
    if !grid.iter().all(|t| *t >= 0.0 && t.is_finite()) {
        return Err(ZcdError::InvalidInput(
            "theta grid values must be finite and >= 0".into(),
        ));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(ZcdError::InvalidInput(
            "theta grid must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// `2(2θ)^x e^{-2θ}/x!`.
pub fn me_poisson_posterior(theta: f64, x: u64) -> f64 {
    if theta == 0.0 {
        return if x == 0 { 2.0 } else { 0.0 };
    }
    let xf = x as f64;
    (2f64.ln() + xf * (2.0 * theta).ln()
        - 2.0 * theta
        - log_gamma(xf + 1.0).unwrap_or(f64::INFINITY))
    .exp()
}

/// `P_j / (1 - P₀) = θ^{j-1}/j! · θ/(e^θ - 1)` for `j ≥ 1`.
fn positive_class_weight(theta: f64, j: u64) -> f64 {
    let jf = j as f64;
    if theta == 0.0 {
        return if j == 1 { 1.0 } else { 0.0 };
    }
    // ln(e^θ - 1) = θ + ln(1 - e^{-θ})
    let ln_expm1 = theta + (-(-theta).exp_m1()).ln();
    (jf * theta.ln() - ln_expm1 - log_gamma(jf + 1.0).unwrap_or(f64::INFINITY)).exp()
}

/// Joint posterior of `(θ, ψ)` after observing `x`, with unit exponential
/// priors on both: `2ψP₀e^{-θ}e^{-ψ}` at `x = 0`, otherwise
/// `(1 - ψP₀)/(1 - P₀) · 2^{x+1} P_x e^{-θ} e^{-ψ}`.
pub fn zpoisson_joint_posterior(theta: f64, psi: f64, x: u64) -> Result<f64> {
    if !(theta >= 0.0 && theta.is_finite() && psi >= 0.0) {
        return Err(ZcdError::domain(
            "zpoisson_joint_posterior",
            format!("need theta >= 0 and psi >= 0, got theta = {theta}, psi = {psi}"),
        ));
    }
    if psi.is_infinite() {
        return Ok(0.0);
    }
    let e_theta = (-theta).exp();
    let e_psi = (-psi).exp();
    if x == 0 {
        return Ok(2.0 * psi * e_theta * e_theta * e_psi);
    }
    let weight = positive_class_weight(theta, x);
    let scale = (x as f64 + 1.0) * 2f64.ln();
    Ok((1.0 - psi * e_theta) * weight * scale.exp() * e_theta * e_psi)
}

/// Unnormalized joint density `NB(x | θ, a) e^{-θ} e^{-a}`.
///
/// At `a = 0` the negative binomial collapses onto zero.
pub fn nb_joint_density(theta: f64, a: f64, x: u64) -> Result<f64> {
    if !(theta > 0.0 && theta.is_finite() && a >= 0.0) {
        return Err(ZcdError::domain(
            "nb_joint_density",
            format!("need theta > 0 and a >= 0, got theta = {theta}, a = {a}"),
        ));
    }
    Ok((ln_nb_with_boundary(theta, a, x)? - theta - a).exp())
}

fn ln_nb_with_boundary(theta: f64, a: f64, x: u64) -> Result<f64> {
    if a.is_infinite() {
        return Ok(f64::NEG_INFINITY);
    }
    if a == 0.0 {
        return Ok(if x == 0 { 0.0 } else { f64::NEG_INFINITY });
    }
    nb_ln_pmf(x, theta, a)
}

/// Quadrature settings for one marginalization run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub tol: ToleranceConfig,
    pub rule: QuadRule,
}

impl QuadConfig {
    pub fn new(tol: ToleranceConfig, rule: QuadRule) -> Self {
        QuadConfig { tol, rule }
    }

    fn other_rule(&self) -> QuadConfig {
        let rule = match self.rule {
            QuadRule::Gk15 => QuadRule::Gk21,
            QuadRule::Gk21 => QuadRule::Gk15,
        };
        QuadConfig { rule, ..*self }
    }
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig::new(ToleranceConfig::default(), QuadRule::default())
    }
}

fn compare(
    model: MarginalModel,
    x: u64,
    theta_grid: &[f64],
    numeric_density: Vec<f64>,
    numeric_norm_residual: f64,
) -> MarginalComparison {
    let claimed_density: Vec<f64> = theta_grid
        .iter()
        .map(|&t| me_poisson_posterior(t, x))
        .collect();
    let diff: Vec<f64> = numeric_density
        .iter()
        .zip(&claimed_density)
        .map(|(n, c)| (n - c).abs())
        .collect();
    let linf_distance = diff.iter().copied().fold(0.0, f64::max);
    let l1_distance = theta_grid
        .windows(2)
        .zip(diff.windows(2))
        .map(|(t, d)| 0.5 * (t[1] - t[0]) * (d[0] + d[1]))
        .sum();
    MarginalComparison {
        model,
        x,
        theta_grid: theta_grid.to_vec(),
        numeric_density,
        claimed_density,
        l1_distance,
        linf_distance,
        numeric_norm_residual,
    }
}

fn zpoisson_marginal_at(theta: f64, x: u64, cfg: &QuadConfig) -> Result<f64> {
    nested(|psi| zpoisson_joint_posterior(theta, psi, x), cfg)
}

/// Integrates the z-Poisson joint posterior over ψ at each grid point.
pub fn zpoisson_marginal(
    x: u64,
    theta_grid: &[f64],
    cfg: &QuadConfig,
) -> Result<MarginalComparison> {
    check_grid(theta_grid)?;
    let numeric = theta_grid
        .iter()
        .map(|&t| zpoisson_marginal_at(t, x, cfg))
        .collect::<Result<Vec<_>>>()?;
    let norm = nested(|t| zpoisson_marginal_at(t, x, cfg), cfg)?;
    Ok(compare(
        MarginalModel::ZPoisson,
        x,
        theta_grid,
        numeric,
        (norm - 1.0).abs(),
    ))
}

/// `∫_0^∞ inner(v) dv`, surfacing the first error raised by `inner`.
fn nested<F: Fn(f64) -> Result<f64>>(inner: F, cfg: &QuadConfig) -> Result<f64> {
    let err = RefCell::new(None);
    let v = integrate_semi_infinite_with(
        |v| {
            inner(v).unwrap_or_else(|e| {
                err.borrow_mut().get_or_insert(e);
                0.0
            })
        },
        0.0,
        &cfg.tol,
        cfg.rule,
    );
    match err.into_inner() {
        Some(e) => Err(e),
        None => v,
    }
}

/// `∫_{a_min}^∞ NB(x | θ, a) e^{-θ} e^{-(a - a_min)} da`.
fn nb_unnormalized(theta: f64, x: u64, a_min: f64, cfg: &QuadConfig) -> Result<f64> {
    if theta == 0.0 {
        // NB(x | 0, a) is a point mass at zero for every a.
        return Ok(if x == 0 { 1.0 } else { 0.0 });
    }
    // Kept outside the a-integral so the integrand stays in the normal range.
    let damp = (-theta).exp();
    if damp == 0.0 {
        return Ok(0.0);
    }
    let inner = nested(
        |u| Ok((ln_nb_with_boundary(theta, a_min + u, x)? - u).exp()),
        cfg,
    );
    Ok(damp * inner?)
}

fn nb_marginal_impl(
    model: MarginalModel,
    x: u64,
    theta_grid: &[f64],
    a_min: f64,
    cfg: &QuadConfig,
) -> Result<MarginalComparison> {
    check_grid(theta_grid)?;
    let evidence = nested(|t| nb_unnormalized(t, x, a_min, cfg), cfg)?;
    if !(evidence > 0.0) {
        return Err(ZcdError::Quadrature {
            panels: 0,
            partial: evidence,
            error_estimate: f64::NAN,
        });
    }
    let numeric = theta_grid
        .iter()
        .map(|&t| Ok(nb_unnormalized(t, x, a_min, cfg)? / evidence))
        .collect::<Result<Vec<_>>>()?;
    // Check the normalized density with the other rule so that the residual
    // is not the evidence integral divided by itself.
    let check = cfg.other_rule();
    let mass = nested(
        |t| Ok(nb_unnormalized(t, x, a_min, &check)? / evidence),
        &check,
    )?;
    Ok(compare(model, x, theta_grid, numeric, (mass - 1.0).abs()))
}

/// Negative binomial marginal over the shape `a ∈ (0, ∞)`, normalized over θ
/// by a second quadrature.
pub fn nb_marginal_numeric(
    x: u64,
    theta_grid: &[f64],
    cfg: &QuadConfig,
) -> Result<MarginalComparison> {
    nb_marginal_impl(MarginalModel::NegBinomial, x, theta_grid, 0.0, cfg)
}

/// As [`nb_marginal_numeric`] with the shape prior restricted to
/// `a ≥ a_min`. Large cutoffs push the marginal toward the Poisson form.
pub fn nb_marginal_restricted(
    x: u64,
    theta_grid: &[f64],
    a_min: f64,
    cfg: &QuadConfig,
) -> Result<MarginalComparison> {
    if !(a_min >= 0.0 && a_min.is_finite()) {
        return Err(ZcdError::InvalidInput(format!(
            "a_min must be finite and >= 0, got {a_min}"
        )));
    }
    nb_marginal_impl(
        MarginalModel::NegBinomialRestricted,
        x,
        theta_grid,
        a_min,
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn joint_examples() {
        let v = zpoisson_joint_posterior(1.0, 1.0, 0).unwrap();
        assert!((v - 2.0 * (-3f64).exp()).abs() < 1e-15);
        let v = nb_joint_density(1.0, 1.0, 0).unwrap();
        assert!((v - 0.5 * (-2f64).exp()).abs() < 1e-15);
        assert_eq!(nb_joint_density(1.0, 0.0, 2).unwrap(), 0.0);
        assert!(nb_joint_density(1.0, 1e-300, 2).unwrap() < 1e-290);
        assert_eq!(nb_joint_density(1.0, 1e8, 1).unwrap(), 0.0);
    }

    #[test]
    fn joint_matches_direct_formula() {
        // (1 - ψe^{-θ})/(1 - e^{-θ}) · 2^{j+1} θ^j e^{-θ}/j! · e^{-θ} e^{-ψ}
        for (theta, psi, j) in [(0.7_f64, 0.3_f64, 1_u64), (2.0, 5.0, 3), (4.5, 12.0, 2)] {
            let p0 = (-theta).exp();
            let pj = theta.powi(j as i32) * p0 / (1..=j).product::<u64>() as f64;
            let want =
                (1.0 - psi * p0) / (1.0 - p0) * 2f64.powi(j as i32 + 1) * pj * p0 * (-psi).exp();
            let got = zpoisson_joint_posterior(theta, psi, j).unwrap();
            assert!(
                (got - want).abs() < 1e-14 * want.abs().max(1e-3),
                "{theta} {psi} {j}"
            );
        }
    }

    #[test]
    fn claimed_density_at_origin() {
        assert_eq!(me_poisson_posterior(0.0, 0), 2.0);
        assert_eq!(me_poisson_posterior(0.0, 3), 0.0);
    }

    #[test]
    fn zpoisson_marginal_is_exact() {
        let cfg = QuadConfig::default();
        for x in [0, 1] {
            let grid = default_theta_grid(x, 61);
            let cmp = zpoisson_marginal(x, &grid, &cfg).unwrap();
            assert!(cmp.linf_distance < 1e-6, "x = {x}: {}", cmp.linf_distance);
            assert!(cmp.numeric_norm_residual < 1e-6);
        }
    }

    #[test]
    fn nb_marginal_is_normalized() {
        let cfg = QuadConfig::default();
        let grid = default_theta_grid(0, 21);
        let cmp = nb_marginal_numeric(0, &grid, &cfg).unwrap();
        assert!(
            cmp.numeric_norm_residual < 1e-6,
            "{}",
            cmp.numeric_norm_residual
        );
        assert!(cmp.numeric_density.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn nb_marginal_matches_double_integral() {
        // e^{-θ} ∫ (1 + θ/a)^{-a} e^{-a} da normalized over θ, from mpmath.
        let cmp = nb_marginal_numeric(0, &[0.0, 1.0, 3.0], &QuadConfig::default()).unwrap();
        let want = [
            1.5247816644962894,
            0.32282665344411717,
            0.028190633726127127,
        ];
        for (got, want) in cmp.numeric_density.iter().zip(want) {
            assert!((got - want).abs() < 1e-9 * want, "{got} vs {want}");
        }
        assert!(cmp.linf_distance > 0.4);
    }

    #[test]
    fn restriction_moves_toward_poisson() {
        let grid = default_theta_grid(1, 41);
        let cfg = QuadConfig::default();
        let d: Vec<f64> = [1.0, 10.0, 100.0]
            .iter()
            .map(|&m| {
                nb_marginal_restricted(1, &grid, m, &cfg)
                    .unwrap()
                    .linf_distance
            })
            .collect();
        assert!(d[0] > d[1] && d[1] > d[2], "{d:?}");
    }

    #[test]
    fn rejects_bad_grid() {
        let cfg = QuadConfig::default();
        assert!(zpoisson_marginal(0, &[1.0, 0.5], &cfg).is_err());
        assert!(zpoisson_marginal(0, &[], &cfg).is_err());
        assert!(nb_marginal_numeric(0, &[-1.0], &cfg).is_err());
    }
}
