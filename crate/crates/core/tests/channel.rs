use outage_core::channel::*;
use outage_core::quadrature::{integrate, QuadConfig};
use outage_core::specfun::lower_incomplete_gamma_regularized;

#[test]
fn gamma_cdf_expansion_matches_incomplete_gamma() {
    for m0 in 1..=6u32 {
        let cdf = nakagami_as_general_cdf(f64::from(m0)).unwrap();
        for &g in &[0.01, 0.3, 1.0, 2.7, 9.0] {
            let want = lower_incomplete_gamma_regularized(f64::from(m0), f64::from(m0) * g).unwrap();
            let got = general_cdf_eval(&cdf, g).unwrap();
            assert!((got - want).abs() < 1e-13, "m0 = {m0}, g = {g}: {got} vs {want}");
        }
    }
}

#[test]
fn four_term_cdf_reference() {
    // P(4, 5.2) from mpmath
    let cdf = nakagami_as_general_cdf(4.0f64).unwrap();
    assert!((general_cdf_eval(&cdf, 1.3).unwrap() - 0.761_934_501_276_875_8).abs() < 1e-14);
}

#[test]
fn power_gain_density_is_normalised_with_unit_mean() {
    let cfg = QuadConfig::new(1e-12, 1e-14);
    for &m in &[0.5, 1.0, 1.5, 2.0, 3.0] {
        // g = u^2 removes the g^{-1/2} singularity at m = 1/2.
        let mass = integrate(
            |u: f64| 2.0 * u * nakagami_power_gain_pdf(m, u * u).unwrap(),
            0.0,
            12.0,
            &cfg,
        )
        .unwrap()
        .value;
        let mean = integrate(
            |u: f64| 2.0 * u.powi(3) * nakagami_power_gain_pdf(m, u * u).unwrap(),
            0.0,
            12.0,
            &cfg,
        )
        .unwrap()
        .value;
        assert!((mass - 1.0).abs() < 1e-10, "m = {m}: mass {mass}");
        assert!((mean - 1.0).abs() < 1e-10, "m = {m}: mean {mean}");
    }
}

#[test]
fn toy_single_term_cdf() {
    let cdf = GeneralFadingCdf::new(vec![FadingTerm { n: 2, k: 0, a: 1.0 }]).unwrap();
    assert_eq!(cdf.rates(), vec![2]);
    assert!((cdf.eval(0.5).unwrap() - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
}
