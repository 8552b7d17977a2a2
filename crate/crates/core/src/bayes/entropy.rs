use serde::Serialize;

use crate::distributions::GammaDist;
use crate::numerics::{
    exp_integral_e1, integrate_semi_infinite, log_gamma, ToleranceConfig, EULER_GAMMA,
};
use crate::{Result, ZcdError};

/// Tail ratio of the JJ posterior truncated at `ε`, with its evidence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JjDivergence {
    pub epsilon: f64,
    pub u_theta: f64,
    /// `E1(U + ε) / (-γ - ln ε)`.
    pub alpha: f64,
    /// `∫_ε^∞ e^{-θ}/θ dθ = E1(ε)`.
    pub evidence: f64,
    /// Leading small-`ε` behavior of the evidence, `-γ - ln ε`.
    pub evidence_approx: f64,
}

/// Shows the JJ posterior at zero counts cannot be normalized: cutting the
/// evidence integral at `ε` gives a tail ratio that vanishes as `ε → 0`.
pub fn jj_divergence_demo(epsilon: f64, u_theta: f64) -> Result<JjDivergence> {
    if !(epsilon > 0.0) || !(u_theta > 0.0 && u_theta.is_finite()) {
        return Err(ZcdError::domain(
            "jj_divergence_demo",
            format!("need epsilon > 0 and U > 0, got epsilon = {epsilon}, U = {u_theta}"),
        ));
    }
    let denominator = -EULER_GAMMA - epsilon.ln();
    if !(denominator > 0.0) {
        return Err(ZcdError::domain(
            "jj_divergence_demo",
            format!("-gamma - ln(epsilon) = {denominator} is not positive; epsilon too large"),
        ));
    }
    Ok(JjDivergence {
        epsilon,
        u_theta,
        alpha: exp_integral_e1(u_theta + epsilon)? / denominator,
        evidence: exp_integral_e1(epsilon)?,
        evidence_approx: denominator,
    })
}

/// `-∫ p ln p` of a Gamma density, by quadrature.
///
/// For `a < 1` the density is singular at the origin; the integral is then
/// taken over `s = ρ^a`, where `p(ρ) dρ = b^a e^{-b s^{1/a}} / Γ(a+1) ds`.
pub fn differential_entropy_gamma(dist: &GammaDist, tol: &ToleranceConfig) -> Result<f64> {
    let (a, b) = (dist.shape(), dist.rate());
    let ln_norm = a * b.ln() - log_gamma(a)?;
    let ln_pdf = |ln_rho: f64, rho: f64| ln_norm + (a - 1.0) * ln_rho - b * rho;
    if a >= 1.0 {
        integrate_semi_infinite(
            |rho| {
                if rho == 0.0 {
                    return 0.0;
                }
                let lp = ln_pdf(rho.ln(), rho);
                -lp * lp.exp()
            },
            0.0,
            tol,
        )
    } else {
        let ln_mass = a * b.ln() - log_gamma(a + 1.0)?;
        integrate_semi_infinite(
            |s| {
                if s == 0.0 {
                    return 0.0;
                }
                let ln_rho = s.ln() / a;
                let rho = ln_rho.exp();
                -ln_pdf(ln_rho, rho) * (ln_mass - b * rho).exp()
            },
            0.0,
            tol,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divergence_examples() {
        let d = jj_divergence_demo(1e-6, 1.0).unwrap();
        assert!((d.alpha - 0.0165719).abs() < 1e-6);
        let d = jj_divergence_demo(1e-3, 1.0).unwrap();
        assert!((d.evidence - 6.331539364136149).abs() < 1e-12);
        assert!((d.evidence - d.evidence_approx).abs() < 2e-3);
        let a4 = jj_divergence_demo(1e-4, 1.0).unwrap().alpha;
        let a8 = jj_divergence_demo(1e-8, 1.0).unwrap().alpha;
        let a12 = jj_divergence_demo(1e-12, 1.0).unwrap().alpha;
        assert!(a4 > a8 && a8 > a12);
    }

    #[test]
    fn divergence_rejects_large_epsilon() {
        assert!(jj_divergence_demo(0.9, 1.0).is_err());
        assert!(jj_divergence_demo(0.0, 1.0).is_err());
    }

    #[test]
    fn entropy_examples() {
        let tol = ToleranceConfig::default();
        let h = differential_entropy_gamma(&GammaDist::new(1.0, 1.0).unwrap(), &tol).unwrap();
        assert!((h - 1.0).abs() < 1e-9);
        let h = differential_entropy_gamma(&GammaDist::new(1.0, 2.0).unwrap(), &tol).unwrap();
        assert!((h - (1.0 - 2f64.ln())).abs() < 1e-9);
    }

    #[test]
    fn entropy_matches_closed_form() {
        // H = a - ln b + ln Γ(a) + (1 - a) ψ(a), values from mpmath with b = a.
        let tol = ToleranceConfig::default();
        let table = [
            (0.25, -0.246273),
            (0.5, 0.783757),
            (1.0, 1.0),
            (2.0, 0.884068),
            (4.0, 0.637112),
        ];
        for (a, want) in table {
            let h = differential_entropy_gamma(&GammaDist::new(a, a).unwrap(), &tol).unwrap();
            assert!((h - want).abs() < 1e-6, "a = {a}: {h}");
        }
    }
}
