use super::ToleranceConfig;
use crate::{Result, ZcdError};

// 2^±1100 spans the whole positive f64 range.
const MAX_EXPANSIONS: usize = 1100;

/// Brackets the root of an increasing function on `(0, ∞)` by geometric
/// doubling or halving from `start`.
///
/// Returns `(lo, hi)` with `f(lo) < 0 <= f(hi)`; `lo` may be `0.0` when the
/// root lies below the smallest positive double reached by halving.
pub(crate) fn bracket_positive<F>(f: &F, start: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut x = start;
    if f(x)? < 0.0 {
        let mut lo = x;
        for _ in 0..MAX_EXPANSIONS {
            x *= 2.0;
            if !x.is_finite() {
                break;
            }
            if f(x)? >= 0.0 {
                return Ok((lo, x));
            }
            lo = x;
        }
        Err(ZcdError::NoConvergence {
            iterations: MAX_EXPANSIONS,
            lo,
            hi: f64::INFINITY,
        })
    } else {
        let mut hi = x;
        for _ in 0..MAX_EXPANSIONS {
            x *= 0.5;
            if x == 0.0 {
                return Ok((0.0, hi));
            }
            if f(x)? < 0.0 {
                return Ok((x, hi));
            }
            hi = x;
        }
        Ok((0.0, hi))
    }
}

/// Safeguarded Newton iteration for an increasing function inside a bracket.
///
/// `f` returns the residual and its derivative. Newton steps that leave the
/// bracket are replaced by bisection (geometric bisection when the bracket
/// spans more than a factor of four). Stops when `|residual| <= abs_tol` or
/// the bracket has shrunk to `rel_tol` relative width.
pub fn solve_increasing<F>(f: F, lo: f64, hi: f64, tol: &ToleranceConfig) -> Result<f64>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    let (mut lo, mut hi) = (lo, hi);
    if !(lo < hi) {
        return Err(ZcdError::InvalidInput(format!(
            "empty bracket [{lo:e}, {hi:e}]"
        )));
    }
    let mut x = midpoint(lo, hi);
    for _ in 0..tol.max_iter {
        let (r, slope) = f(x)?;
        if r.abs() <= tol.abs_tol {
            return Ok(x);
        }
        if r < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        if hi - lo <= tol.rel_tol * hi || hi - lo <= 4.0 * f64::EPSILON * hi {
            return Ok(x);
        }
        let newton = x - r / slope;
        x = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            midpoint(lo, hi)
        };
    }
    Err(ZcdError::NoConvergence {
        iterations: tol.max_iter,
        lo,
        hi,
    })
}

fn midpoint(lo: f64, hi: f64) -> f64 {
    if lo > 0.0 && hi > 4.0 * lo {
        (lo * hi).sqrt()
    } else if lo == 0.0 && hi > 1.0 {
        1.0_f64.min(0.5 * hi)
    } else {
        0.5 * (lo + hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_root_of_two() {
        let tol = ToleranceConfig::default();
        let x = solve_increasing(|x| Ok((x * x * x - 2.0, 3.0 * x * x)), 0.0, 4.0, &tol).unwrap();
        assert!((x - 2f64.cbrt()).abs() < 1e-12);
    }

    #[test]
    fn bracket_expands_up_and_down() {
        let up = |x: f64| Ok(x - 1e6);
        let (lo, hi) = bracket_positive(&up, 1.0).unwrap();
        assert!(lo < 1e6 && hi >= 1e6 && hi / lo == 2.0);

        let down = |x: f64| Ok(x - 1e-9);
        let (lo, hi) = bracket_positive(&down, 1.0).unwrap();
        assert!(lo < 1e-9 && hi >= 1e-9);
    }

    #[test]
    fn exhausted_budget_reports_bracket() {
        let tol = ToleranceConfig {
            max_iter: 2,
            rel_tol: 1e-300,
            abs_tol: 1e-300,
            ..ToleranceConfig::default()
        };
        // Zero derivative forces bisection, which cannot finish in two steps.
        let err = solve_increasing(|x| Ok((x - 0.3, 0.0)), 0.0, 1.0, &tol).unwrap_err();
        match err {
            ZcdError::NoConvergence { iterations, lo, hi } => {
                assert_eq!(iterations, 2);
                assert!(lo <= 0.3 && 0.3 <= hi);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
