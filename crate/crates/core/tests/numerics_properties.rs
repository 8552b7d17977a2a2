use proptest::prelude::*;

use zerocount::numerics::{
    exp_integral_e1, integrate_semi_infinite, inv_reg_inc_gamma_lower, log_gamma,
    reg_inc_gamma_lower, reg_inc_gamma_upper, solve_increasing, ToleranceConfig,
};

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

#[test]
fn lower_plus_quadrature_tail_is_one() {
    for a in [0.5, 1.0, 2.5] {
        let ln_norm = log_gamma(a).unwrap();
        for x in [0.1, 1.0, 5.0] {
            // Upper tail from the density, independent of the series/fraction code.
            let tail = integrate_semi_infinite(
                |u| {
                    if u == 0.0 {
                        0.0
                    } else {
                        ((a - 1.0) * u.ln() - u - ln_norm).exp()
                    }
                },
                x,
                &tol(),
            )
            .unwrap();
            let p = reg_inc_gamma_lower(a, x).unwrap();
            assert!((p + tail - 1.0).abs() < 1e-12, "a = {a}, x = {x}");
        }
    }
}

#[test]
fn e1_integration_by_parts() {
    for x in [0.5_f64, 1.0, 2.0] {
        let rest = integrate_semi_infinite(|u| (-u).exp() / (u * u), x, &tol()).unwrap();
        let want = (-x).exp() / x - rest;
        assert!((exp_integral_e1(x).unwrap() - want).abs() < 1e-9, "x = {x}");
    }
}

#[test]
fn e1_matches_quadrature_of_its_definition() {
    let v = integrate_semi_infinite(|u| (-u).exp() / u, 1.0, &tol()).unwrap();
    assert!((v - 0.21938393439552027).abs() < 1e-12);
    assert!((exp_integral_e1(1.0).unwrap() - v).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn inverse_is_right_inverse(a in 0.05f64..60.0, p in 0.001f64..0.999) {
        let x = inv_reg_inc_gamma_lower(a, p, &tol()).unwrap();
        prop_assert!((reg_inc_gamma_lower(a, x).unwrap() - p).abs() <= tol().abs_tol);
    }

    #[test]
    fn log_gamma_recurrence(z in 0.1f64..100.0) {
        let step = log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap();
        prop_assert!((step - z.ln()).abs() < 1e-12);
    }

    #[test]
    fn incomplete_gamma_is_complementary(a in 0.01f64..200.0, x in 0.0f64..400.0) {
        let p = reg_inc_gamma_lower(a, x).unwrap();
        let q = reg_inc_gamma_upper(a, x).unwrap();
        prop_assert!((0.0..=1.0).contains(&p));
        prop_assert!((p + q - 1.0).abs() < 1e-13);
    }

    #[test]
    fn incomplete_gamma_is_monotone_in_x(a in 0.05f64..50.0, x in 0.0f64..100.0, dx in 1e-3f64..5.0) {
        prop_assert!(reg_inc_gamma_lower(a, x + dx).unwrap() >= reg_inc_gamma_lower(a, x).unwrap());
    }

    #[test]
    fn e1_is_decreasing(x in 1e-6f64..50.0, dx in 1e-4f64..1.0) {
        prop_assert!(exp_integral_e1(x + dx).unwrap() < exp_integral_e1(x).unwrap());
    }

    #[test]
    fn root_finder_inverts_cubics(c in 0.01f64..1e4) {
        let root = solve_increasing(|x| Ok((x * x * x - c, 3.0 * x * x)), 0.0, c.max(1.0), &tol()).unwrap();
        prop_assert!((root - c.cbrt()).abs() <= 1e-9 * c.cbrt().max(1.0));
    }
}
