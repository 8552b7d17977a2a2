use super::EULER_GAMMA;
use crate::{Result, ZcdError};

const MAX_TERMS: usize = 10_000;

/// Exponential integral `E1(x) = ∫_x^∞ e^{-u}/u du` for `x > 0`.
///
/// Power series below `x = 1`, Lentz continued fraction above.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(ZcdError::domain(
            "exp_integral_e1",
            format!("x must be positive, got {x}"),
        ));
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    if x <= 1.0 {
        // E1(x) = -γ - ln x - Σ_{k≥1} (-x)^k / (k k!)
        let mut sum = 0.0;
        let mut fact = 1.0;
        for k in 1..=MAX_TERMS {
            fact *= -x / k as f64;
            let term = fact / k as f64;
            sum += term;
            if term.abs() < sum.abs().max(1.0) * f64::EPSILON * 0.5 {
                return Ok(-EULER_GAMMA - x.ln() - sum);
            }
        }
        Err(ZcdError::NoConvergence {
            iterations: MAX_TERMS,
            lo: x,
            hi: x,
        })
    } else {
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..=MAX_TERMS {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let delta = c * d;
            h *= delta;
            if (delta - 1.0).abs() < f64::EPSILON {
                return Ok(h * (-x).exp());
            }
        }
        Err(ZcdError::NoConvergence {
            iterations: MAX_TERMS,
            lo: x,
            hi: x,
        })
    }
}
