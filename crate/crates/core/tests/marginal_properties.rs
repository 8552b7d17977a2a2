use zerocount::marginal::{
    default_theta_grid, me_poisson_posterior, nb_marginal_numeric, nb_marginal_restricted,
    zpoisson_marginal, QuadConfig,
};

#[test]
fn zpoisson_marginal_matches_the_poisson_form() {
    let cfg = QuadConfig::default();
    for x in [0u64, 1, 2, 5] {
        let grid = default_theta_grid(x, 41);
        let cmp = zpoisson_marginal(x, &grid, &cfg).unwrap();
        assert!(cmp.linf_distance < 1e-8, "x = {x}: {}", cmp.linf_distance);
        assert!(cmp.numeric_norm_residual < 1e-8);
        assert!(cmp.numeric_density.iter().all(|&d| d >= 0.0));
    }
}

#[test]
fn zero_count_marginal_is_decreasing() {
    let grid = default_theta_grid(0, 31);
    let cmp = zpoisson_marginal(0, &grid, &QuadConfig::default()).unwrap();
    for w in cmp.numeric_density.windows(2) {
        assert!(w[1] < w[0]);
    }
}

#[test]
fn me_poisson_form_is_normalized() {
    for x in [0u64, 1, 4] {
        let h = 1e-3;
        let total: f64 = (0..60_000)
            .map(|i| me_poisson_posterior((i as f64 + 0.5) * h, x) * h)
            .sum();
        assert!((total - 1.0).abs() < 1e-6, "x = {x}: {total}");
    }
}

#[test]
fn nb_marginal_is_a_density_but_not_the_poisson_form() {
    let cfg = QuadConfig::default();
    let grid = default_theta_grid(0, 21);
    let cmp = nb_marginal_numeric(0, &grid, &cfg).unwrap();
    assert!(cmp.numeric_norm_residual < 1e-6);
    assert!(cmp.numeric_density.iter().all(|&d| d >= 0.0));
    assert!(cmp.linf_distance > 0.1);
}

#[test]
fn restricting_the_shape_narrows_the_gap() {
    let cfg = QuadConfig::default();
    let grid = default_theta_grid(0, 21);
    let free = nb_marginal_numeric(0, &grid, &cfg).unwrap();
    let tight = nb_marginal_restricted(0, &grid, 100.0, &cfg).unwrap();
    assert!(tight.linf_distance < free.linf_distance);
}
