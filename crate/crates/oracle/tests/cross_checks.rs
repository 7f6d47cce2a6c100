#![allow(clippy::excessive_precision)]

use negamma::{eta_from_lambda, gamma_star_neg_scaled, lambda_from_eta, q_uniform, t_series, DEFAULT_ORDER};
use negamma_oracle::{gammastar_series_big, p_series_big, q_cf_big, q_oracle_big, t_quadrature};
use proptest::prelude::*;

fn rel(x: f64, y: f64) -> f64 {
    ((x - y) / y).abs()
}

const TABLE: [(f64, f64); 3] = [
    (90.0, 1.205_524_234_116_744_26e196),
    (100.0, 2.340_106_047_916_898_45e200),
    (110.0, 5.013_901_354_648_721_93e203),
];

#[test]
fn series_reproduces_reference_rows_at_quarter_offset() {
    for &(z, reference) in &TABLE {
        let v = gammastar_series_big(100.25, z, 400).unwrap().to_f64();
        assert!(rel(v, reference) < 1e-15, "z = {z}: {v:e}");
    }
}

#[test]
fn integer_parameter_does_not_reproduce_rows() {
    for &(z, reference) in &TABLE {
        let v = gammastar_series_big(100.0, z, 400).unwrap().to_f64();
        assert!(rel(v, reference) > 1e-3, "z = {z}");
        // γ*(−n, −z) = (−z)^n
        assert!(rel(v, z.powi(100)) < 1e-14);
    }
}

#[test]
fn precision_doubling_is_stable() {
    for &(a, z) in &[(50.5, 45.0), (100.25, 100.0), (20.75, 31.0)] {
        let lo = gammastar_series_big(a, z, 200).unwrap();
        let hi = gammastar_series_big(a, z, 400).unwrap();
        assert!(lo.rel_diff(&hi) < 1e-100, "a={a} z={z}");
    }
}

#[test]
fn expansion_matches_series_oracle() {
    for &(a, tol) in &[(50.5, 1e-11), (100.25, 1e-12), (200.5, 1e-12)] {
        for &lambda in &[0.5, 0.75, 0.9, 1.0, 1.1, 1.5, 2.0] {
            let z = lambda * a;
            // compared in scaled form: z^a e^{aη²/2} leaves the double range at a = 200.5
            let ours = gamma_star_neg_scaled(a, z, DEFAULT_ORDER).unwrap().value;
            let oracle = gammastar_series_big(a, z, 400).unwrap().into_float();
            let prec = oracle.prec();
            let scale = rug::Float::with_val(prec, ours.ln_scale).exp();
            let o = (oracle / scale).to_f64();
            assert!(rel(ours.mantissa, o) <= tol, "a={a} λ={lambda}: {:e}", rel(ours.mantissa, o));
        }
    }
}

#[test]
fn t_series_matches_quadrature() {
    for &eta in &[-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0] {
        let p = lambda_from_eta(eta).unwrap();
        let q = t_quadrature(100.0, &p, 60).unwrap().to_f64();
        let s = t_series(100.0, &p, DEFAULT_ORDER).unwrap().value;
        let tol = if eta == 0.0 { 1e-12 } else { 1e-10 };
        assert!((q - s).abs() <= tol, "η={eta}: {q} vs {s}");
    }
}

#[test]
fn quadrature_tail_decays() {
    let near = t_quadrature(100.0, &eta_from_lambda(1.0).unwrap(), 50).unwrap().to_f64().abs();
    // C_0 → 0 only as η → +∞; on the other side it tends to −1
    let far = t_quadrature(100.0, &lambda_from_eta(8.0).unwrap(), 50).unwrap().to_f64().abs();
    assert!(far < near);
    let left = t_quadrature(100.0, &lambda_from_eta(-8.0).unwrap(), 50).unwrap().to_f64();
    assert!((left + 1.0 - 1.0 / 8.0).abs() < 0.05);
}

#[test]
fn uniform_ratio_matches_oracle() {
    for &a in &[100.0, 250.0] {
        for k in 0..=15 {
            let z = a * (0.5 + 0.1 * k as f64);
            let ours = q_uniform(a, z, DEFAULT_ORDER).unwrap().value;
            let oracle = q_oracle_big(a, z, 60).unwrap().to_f64();
            assert!(rel(ours, oracle) <= 1e-12, "a={a} z={z}: {:e}", rel(ours, oracle));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn complement_holds_at_working_precision(a in 1.0f64..150.0, lam in 0.3f64..3.0) {
        let z = a * lam;
        let p = p_series_big(a, z, 60).unwrap().into_float();
        let q = q_cf_big(a, z, 60).unwrap().into_float();
        let s = rug::Float::with_val(p.prec(), &p + &q) - 1u32;
        prop_assert!(s.abs().to_f64() < 1e-50);
    }

    #[test]
    fn series_doubling(a in 2.0f64..60.0, lam in 0.5f64..2.0) {
        prop_assume!(a.fract() != 0.0);
        let z = a * lam;
        let lo = gammastar_series_big(a, z, 150).unwrap();
        let hi = gammastar_series_big(a, z, 300).unwrap();
        prop_assert!(lo.rel_diff(&hi) < 1e-75);
    }
}
