use proptest::prelude::*;

use zerocount::distributions::{
    nb_dispersion, nb_pmf, poisson_pmf, zpoisson_moments, zpoisson_pmf, NBParams,
    OverdispersionModel, ZPoissonParams,
};

/// Upper summation limit covering the mass up to far in the tail.
fn cutoff(mean: f64, variance: f64) -> u64 {
    (mean + 40.0 * variance.sqrt() + 40.0).ceil() as u64
}

/// NB tails decay like `(θ/(a+θ))^x`, which is slow for small shapes.
fn nb_cutoff(theta: f64, a: f64) -> u64 {
    let geometric = (45.0 / ((a + theta) / theta).ln()).ceil() as u64;
    cutoff(theta, theta * (1.0 + theta / a)).max(geometric)
}

fn brute_moments(pmf: impl Fn(u64) -> f64, top: u64) -> (f64, f64, f64) {
    let (mut m0, mut m1, mut m2) = (0.0, 0.0, 0.0);
    for x in 0..=top {
        let p = pmf(x);
        let xf = x as f64;
        m0 += p;
        m1 += xf * p;
        m2 += xf * xf * p;
    }
    (m0, m1, m2 - m1 * m1)
}

#[test]
fn pmfs_sum_to_one_on_a_grid() {
    for theta in [0.0, 0.01, 0.5, 2.8787, 10.0, 60.0] {
        let total: f64 = (0..=cutoff(theta, theta))
            .map(|x| poisson_pmf(x, theta).unwrap())
            .sum();
        assert!((total - 1.0).abs() < 1e-12, "Poisson {theta}");
    }
    for (theta, a) in [(0.5, 0.3), (4.0, 8.0), (10.0, 1.0), (2.0, 50.0)] {
        let p = NBParams::new(theta, a).unwrap();
        let total: f64 = (0..=nb_cutoff(theta, a)).map(|x| nb_pmf(x, &p)).sum();
        assert!((total - 1.0).abs() < 1e-12, "NB {theta} {a}");
    }
    for (theta, psi) in [(0.5, 1.2), (4.5, 10.0), (8.0, 100.0)] {
        let p = ZPoissonParams::new(theta, psi).unwrap();
        let m = zpoisson_moments(&p);
        let total: f64 = (0..=cutoff(m.mean, m.variance))
            .map(|x| zpoisson_pmf(x, &p))
            .sum();
        assert!((total - 1.0).abs() < 1e-12, "z-Poisson {theta} {psi}");
    }
}

proptest! {
    #[test]
    fn nb_moments_match_summation(theta in 0.1f64..15.0, a in 0.2f64..40.0) {
        let p = NBParams::new(theta, a).unwrap();
        let variance = theta * nb_dispersion(&p);
        let (m0, mean, var) = brute_moments(|x| nb_pmf(x, &p), nb_cutoff(theta, a));
        prop_assert!((m0 - 1.0).abs() < 1e-12);
        prop_assert!((mean - theta).abs() < 1e-10 * theta.max(1.0));
        prop_assert!((var / mean - nb_dispersion(&p)).abs() < 1e-10 * variance.max(1.0));
    }

    #[test]
    fn zpoisson_moments_match_summation(theta in 0.1f64..15.0, frac in 0.0f64..1.0) {
        let psi = 1.0 + frac * (theta.exp() - 1.0);
        let p = ZPoissonParams::new(theta, psi).unwrap();
        let m = zpoisson_moments(&p);
        let (m0, mean, var) = brute_moments(|x| zpoisson_pmf(x, &p), cutoff(theta, theta * theta + theta));
        prop_assert!((m0 - 1.0).abs() < 1e-12);
        prop_assert!((mean - m.mean).abs() < 1e-10 * theta.max(1.0));
        if m.mean > 1e-6 {
            prop_assert!((var / mean - m.dispersion).abs() < 1e-10 * theta.max(1.0) / m.mean.min(1.0));
        }
        prop_assert!(m.dispersion >= 1.0);
    }

    #[test]
    fn poisson_is_the_limit_of_both_families(theta in 0.05f64..20.0, x in 0u64..40) {
        let poisson = poisson_pmf(x, theta).unwrap();
        let nb = nb_pmf(x, &NBParams::new(theta, 1e8).unwrap());
        let zp = zpoisson_pmf(x, &ZPoissonParams::new(theta, 1.0).unwrap());
        prop_assert!((nb - poisson).abs() < 1e-6);
        prop_assert!((zp - poisson).abs() < 1e-15);
    }

    #[test]
    fn excess_variation_overdisperses(theta in 0.01f64..100.0, v in 0.0f64..3.0) {
        let m = OverdispersionModel::from_variance_and_v(theta, theta, v).unwrap();
        prop_assert!((m.delta_x - (1.0 + theta * v * v)).abs() < 1e-12 * m.delta_x);
        prop_assert!(m.delta_x >= 1.0);
    }
}
