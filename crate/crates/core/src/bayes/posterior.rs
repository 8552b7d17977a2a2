use serde::Serialize;

use super::PriorSpec;
use crate::classical::{sufficient_statistic, CountData};
use crate::distributions::{gamma_moment, GammaDist};
use crate::numerics::{inv_reg_inc_gamma_lower, reg_inc_gamma_lower, ToleranceConfig};
use crate::{Result, ZcdError};

/// Gamma posterior over the rate, shape `A = S + a` and rate `B = n t + b`.
///
/// Only proper posteriors can be constructed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaPosterior {
    shape: f64,
    rate: f64,
    s: u64,
    n: u64,
    t: f64,
    prior: PriorSpec,
}

/// Credible upper limit on the rate and on the per-measurement count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UpperLimitResult {
    pub cl: f64,
    pub u_rho: f64,
    pub u_theta: f64,
    /// `P(A, B U_ρ) - CL` at the returned limit.
    pub solver_residual: f64,
}

/// Conjugate update of `prior` with `data`.
///
/// Fails with [`ZcdError::ImproperPosterior`] when `S + a ≤ 0`: the evidence
/// `∫ ρ^{S+a-1} e^{-Bρ} dρ` then diverges at the origin.
pub fn posterior(data: &CountData, prior: &PriorSpec) -> Result<GammaPosterior> {
    let (s, _) = sufficient_statistic(data);
    let shape = s as f64 + prior.a;
    let rate = data.exposure() + prior.b;
    if !(shape > 0.0) {
        return Err(ZcdError::ImproperPosterior {
            reason: format!(
                "{} prior with S = {s}: posterior shape A = S + a = {shape} is not positive, \
                 so the evidence integral of rho^(A-1) exp(-B rho) diverges at rho = 0",
                prior.label()
            ),
        });
    }
    Ok(GammaPosterior {
        shape,
        rate,
        s,
        n: data.n(),
        t: data.t(),
        prior: *prior,
    })
}

impl GammaPosterior {
    /// `A = S + a`.
    pub fn shape(&self) -> f64 {
        self.shape
    }

    /// `B = n t + b`, in units of time.
    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn sum(&self) -> u64 {
        self.s
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn prior(&self) -> &PriorSpec {
        &self.prior
    }

    pub fn as_gamma(&self) -> GammaDist {
        GammaDist::new(self.shape, self.rate).expect("posterior parameters are positive")
    }

    /// `E[ρ^r] = (A)_r / B^r`.
    pub fn moment(&self, r: u64) -> Result<f64> {
        match r {
            0 => Ok(1.0),
            1 => Ok(self.mean()),
            _ => gamma_moment(&self.as_gamma(), r),
        }
    }

    /// `A / B`.
    pub fn mean(&self) -> f64 {
        self.shape / self.rate
    }

    /// `A / B²`.
    pub fn variance(&self) -> f64 {
        self.shape / (self.rate * self.rate)
    }

    /// Posterior density of the rate.
    pub fn density(&self, rho: f64) -> Result<f64> {
        Ok(self.as_gamma().ln_pdf(rho)?.exp())
    }

    /// Posterior density of `θ = ρ t`.
    pub fn density_theta(&self, theta: f64) -> Result<f64> {
        Ok(self.density(theta / self.t)? / self.t)
    }

    /// Posterior probability that the rate is below `u`.
    pub fn cdf(&self, u: f64) -> Result<f64> {
        self.as_gamma().cdf(u)
    }

    /// Smallest `U` with `P(ρ ≤ U) = cl`.
    pub fn upper_limit(&self, cl: f64, tol: &ToleranceConfig) -> Result<UpperLimitResult> {
        if !(cl > 0.0 && cl < 1.0) {
            return Err(ZcdError::InvalidInput(format!(
                "credibility level must lie in (0, 1), got {cl}"
            )));
        }
        let y = inv_reg_inc_gamma_lower(self.shape, cl, tol)?;
        let u_rho = y / self.rate;
        Ok(UpperLimitResult {
            cl,
            u_rho,
            u_theta: u_rho * self.t,
            solver_residual: reg_inc_gamma_lower(self.shape, self.rate * u_rho)? - cl,
        })
    }
}

/// Fisher information `n / ρ` of `n` unit-length Poisson measurements.
pub fn fisher_information(n: u64, rho: f64) -> Result<f64> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(ZcdError::domain(
            "fisher_information",
            format!("rho must be positive, got {rho}"),
        ));
    }
    if n == 0 {
        return Err(ZcdError::InvalidInput("n must be at least 1".into()));
    }
    Ok(n as f64 / rho)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::bayes::PriorKind;
    use crate::distributions::expectation_over_poisson;

    fn post(counts: &[u64], t: f64, kind: PriorKind) -> Result<GammaPosterior> {
        let data = CountData::new(counts.to_vec(), t).unwrap();
        posterior(&data, &PriorSpec::from_kind(kind, t).unwrap())
    }

    #[test]
    fn construction_examples() {
        let p = post(&[0], 1.0, PriorKind::ME).unwrap();
        assert_eq!((p.shape(), p.rate()), (1.0, 2.0));
        let p = post(&[0, 0], 1.0, PriorKind::BL).unwrap();
        assert_eq!((p.shape(), p.rate()), (1.0, 2.0));
        let err = post(&[0], 1.0, PriorKind::JJ).unwrap_err();
        assert!(err.is_improper());
    }

    #[test]
    fn custom_zero_shape_depends_on_data() {
        let prior = PriorSpec::custom(0.0, 2.0).unwrap();
        assert!(posterior(&CountData::new(vec![0, 0], 1.0).unwrap(), &prior).is_err());
        assert!(posterior(&CountData::new(vec![0, 1], 1.0).unwrap(), &prior).is_ok());
    }

    #[test]
    fn moment_examples() {
        let me = post(&[0], 1.0, PriorKind::ME).unwrap();
        assert_eq!((me.mean(), me.variance()), (0.5, 0.25));
        let bl = post(&[0], 1.0, PriorKind::BL).unwrap();
        assert_eq!((bl.mean(), bl.variance()), (1.0, 1.0));
        let jj = post(&[1], 2.0, PriorKind::JJ).unwrap();
        assert_eq!(jj.mean(), 0.5);
        let second = bl.moment(2).unwrap();
        assert!((second - (bl.variance() + bl.mean().powi(2))).abs() < 1e-14);
    }

    #[test]
    fn table_limits() {
        let tol = ToleranceConfig::default();
        let cases = [
            (PriorKind::BL, 0.95, 3.0),
            (PriorKind::JR, 0.90, 1.4),
            (PriorKind::ME, 0.99, 2.3),
        ];
        for (kind, cl, want) in cases {
            let u = post(&[0], 1.0, kind)
                .unwrap()
                .upper_limit(cl, &tol)
                .unwrap();
            assert!(
                (u.u_theta - want).abs() < 0.05,
                "{kind} {cl}: {}",
                u.u_theta
            );
            assert!(u.solver_residual.abs() < 1e-10);
        }
    }

    #[test]
    fn bl_limit_for_three_long_runs() {
        let u = post(&[0, 0, 0], 100.0, PriorKind::BL)
            .unwrap()
            .upper_limit(0.90, &ToleranceConfig::default())
            .unwrap();
        assert!((u.u_rho - 0.0076752836433134856).abs() < 1e-13);
        assert!((u.u_theta - 100.0 * u.u_rho).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_level() {
        let p = post(&[0], 1.0, PriorKind::BL).unwrap();
        assert!(p.upper_limit(1.0, &ToleranceConfig::default()).is_err());
        assert!(p.upper_limit(0.0, &ToleranceConfig::default()).is_err());
    }

    #[test]
    fn fisher_examples() {
        assert_eq!(fisher_information(1, 2.0).unwrap(), 0.5);
        assert_eq!(fisher_information(4, 1.0).unwrap(), 4.0);
        assert!(fisher_information(1, 0.0).is_err());
    }

    #[test]
    fn fisher_by_finite_differences() {
        let rho = 1.5;
        let h = 1e-3;
        let loglik = |x: u64, r: f64| x as f64 * r.ln() - r;
        let curvature = expectation_over_poisson(
            |x| -(loglik(x, rho + h) - 2.0 * loglik(x, rho) + loglik(x, rho - h)) / (h * h),
            rho,
            &ToleranceConfig::default(),
        )
        .unwrap();
        assert!((curvature - 2.0 / 3.0).abs() < 1e-4);
    }

    #[test]
    fn bl_density_in_theta() {
        // n (nθ)^S e^{-nθ} / S!
        let data = CountData::new(vec![1, 2, 0], 1.0).unwrap();
        let p = posterior(&data, &PriorSpec::from_kind(PriorKind::BL, 1.0).unwrap()).unwrap();
        for theta in [0.1_f64, 0.7, 1.3, 4.0] {
            let want = 3.0 * (3.0 * theta).powi(3) * (-3.0 * theta).exp() / 6.0;
            assert!((p.density_theta(theta).unwrap() - want).abs() < 1e-12);
        }
    }
}
