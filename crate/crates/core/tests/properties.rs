#![allow(clippy::excessive_precision)]

use negamma::*;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// Fourth-order central difference from two steps.
fn richardson(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    let d2 = (f(x + 2.0 * h) - f(x - 2.0 * h)) / (4.0 * h);
    (4.0 * d1 - d2) / 3.0
}

proptest! {
    #![proptest_config(config(2000))]

    #[test]
    fn eta_round_trip(eta in -6.0f64..6.0) {
        let p = lambda_from_eta(eta).unwrap();
        let back = eta_from_lambda(p.lambda).unwrap().eta;
        prop_assert!((back - eta).abs() <= 1e-13 * (1.0 + eta.abs()));
    }

    #[test]
    fn lambda_round_trip(ln_lambda in (1e-3f64).ln()..50f64.ln()) {
        let lambda = ln_lambda.exp();
        let p = eta_from_lambda(lambda).unwrap();
        let back = lambda_from_eta(p.eta).unwrap().lambda;
        prop_assert!(((back - lambda) / lambda).abs() <= 1e-13);
    }

    #[test]
    fn erfc_reflection(x in -6.0f64..6.0) {
        prop_assert!((erfc(x) + erfc(-x) - 2.0).abs() <= 2e-16);
    }

    #[test]
    fn erfc_decreasing(x in -6.0f64..6.0, dx in 1e-3f64..1.0) {
        prop_assert!(erfc(x + dx) <= erfc(x));
    }
}

#[test]
fn erfc_reflection_dense() {
    for i in 0..10_000 {
        let x = -6.0 + 12.0 * (i as f64 + 0.5) / 10_000.0;
        assert!((erfc(x) + erfc(-x) - 2.0).abs() <= 2e-16, "x = {x}");
    }
}

proptest! {
    #![proptest_config(config(300))]

    #[test]
    fn eta_increases_with_lambda(l in 1e-3f64..50.0, r in 1.0001f64..1.5) {
        let lo = eta_from_lambda(l).unwrap().eta;
        let hi = eta_from_lambda(l * r).unwrap().eta;
        prop_assert!(hi > lo);
    }

    #[test]
    fn dlambda_deta_matches_difference(eta in -4.0f64..4.0) {
        prop_assume!(eta.abs() > 1e-3);
        let h = 1e-5;
        let fd = (lambda_from_eta(eta + h).unwrap().lambda - lambda_from_eta(eta - h).unwrap().lambda) / (2.0 * h);
        let exact = lambda_from_eta(eta).unwrap().dlambda_deta();
        prop_assert!(((fd - exact) / exact).abs() <= 1e-8);
    }

    #[test]
    fn dawson_ode(x in -5.0f64..5.0) {
        // F′ = 1 − 2xF; a plain h = 1e-5 central difference carries h²F‴/6 ≈ 7e-11
        // of truncation, so the derivative is taken to fourth order instead
        let d = richardson(dawson, x, 5e-4);
        prop_assert!((d - 1.0 + 2.0 * x * dawson(x)).abs() <= 1e-12);
    }

    #[test]
    fn dawson_envelope(x in 10.0f64..1e6) {
        prop_assert!((2.0 * x * dawson(x) - 1.0).abs() <= 1.5 / (x * x));
    }

    #[test]
    fn gamma_star_stirling_bounds(a in 0.05f64..1e4) {
        let g = gamma_star(a).unwrap();
        prop_assert!(g > 1.0 && g <= (1.0 / (12.0 * a)).exp() * (1.0 + 1e-15));
    }

    #[test]
    fn maclaurin_and_laurent_agree(n in 0usize..=6, r in 0.45f64..1.8, neg in any::<bool>()) {
        let eta = if neg { -r } else { r };
        let t = CoefficientTable::standard();
        let p = lambda_from_eta(eta).unwrap();
        let m = t.eval_maclaurin(n, eta);
        let l = t.eval_laurent(n, &p);
        prop_assert!((m - l).abs() <= 1e-12 * (1.0 + l.abs()), "n={} η={}: {} vs {}", n, eta, m, l);
    }

    #[test]
    fn coefficient_recursion(n in 1usize..=6, eta in -3.0f64..3.0) {
        // η C_n = C′_{n−1} + γ_n f(η)
        prop_assume!(eta.abs() >= 0.05);
        let t = CoefficientTable::standard();
        let c = |e: f64| t.eval(n - 1, &lambda_from_eta(e).unwrap()).unwrap();
        let h = 1e-5;
        let dc = (c(eta + h) - c(eta - h)) / (2.0 * h);
        let p = lambda_from_eta(eta).unwrap();
        let gamma_n = t.gamma().gamma[n].to_f64().unwrap();
        let res = eta * t.eval(n, &p).unwrap() - dc - gamma_n * p.f();
        prop_assert!(res.abs() <= 1e-8, "n={} η={}: {:e}", n, eta, res);
    }

    #[test]
    fn p_plus_q_exact(a in 1.0f64..500.0, lam in 0.2f64..4.0) {
        let z = a * lam;
        let p = p_uniform(a, z, DEFAULT_ORDER).unwrap().value;
        let q = q_uniform(a, z, DEFAULT_ORDER).unwrap().value;
        prop_assert_eq!(p + q, 1.0);
    }

    #[test]
    fn connection_formula(a in 5.0f64..200.0, lam in 0.5f64..2.0) {
        prop_assume!(a.fract() > 1e-6 && a.fract() < 1.0 - 1e-6);
        let r = connection_residual(a, a * lam, DEFAULT_ORDER).unwrap();
        prop_assert!(r <= 1e-13, "a={} λ={}: {:e}", a, lam, r);
    }

    #[test]
    fn additivity_per_branch(a in 5.0f64..200.0, lam in 0.5f64..2.0, plus in any::<bool>()) {
        prop_assume!(a.fract() > 1e-6 && a.fract() < 1.0 - 1e-6);
        let b = if plus { Branch::Plus } else { Branch::Minus };
        prop_assert!(additivity_residual(a, a * lam, b, DEFAULT_ORDER).unwrap() <= 1e-12);
    }

    #[test]
    fn branches_are_conjugate(a in 0.5f64..150.0, lam in 0.3f64..3.0) {
        let z = a * lam;
        let plus = gamma_upper_neg_scaled(a, z, Branch::Plus, DEFAULT_ORDER).unwrap().value;
        let minus = gamma_upper_neg_scaled(a, z, Branch::Minus, DEFAULT_ORDER).unwrap().value;
        let (p, m) = (plus.relative_to(plus.ln_scale), minus.relative_to(plus.ln_scale));
        prop_assert!((p - m.conj()).norm() <= 1e-15 * p.norm());
        let lp = gamma_lower_neg_scaled(a, z, Branch::Plus, DEFAULT_ORDER);
        if let Ok(lp) = lp {
            let lm = gamma_lower_neg_scaled(a, z, Branch::Minus, DEFAULT_ORDER).unwrap().value;
            let (p, m) = (lp.value.relative_to(lp.value.ln_scale), lm.relative_to(lp.value.ln_scale));
            prop_assert!((p - m.conj()).norm() <= 1e-15 * p.norm());
        }
    }

    #[test]
    fn integer_parameter_is_exact(n in 1u32..40, z in 0.01f64..20.0) {
        let r = gamma_star_neg(n as f64, z, DEFAULT_ORDER).unwrap();
        prop_assert_eq!(r.regime, Regime::ExactIntegerA);
        prop_assert_eq!(r.value, (-z).powi(n as i32));
    }

    #[test]
    fn normalized_recursion(k in 0u32..=6, u in -1.0f64..1.0) {
        let a = 100.25;
        let z = a * (1.0 + u * 2f64.powi(-(k as i32)));
        prop_assume!(z > 0.0);
        let g0 = gtilde(a, z, DEFAULT_ORDER).unwrap().value;
        let g1 = gtilde(a + 1.0, z, DEFAULT_ORDER).unwrap().value;
        let r = -g1 + (z / a) * g0 + std::f64::consts::FRAC_1_PI;
        prop_assert!(r.abs() <= 1e-13, "z={}: {:e}", z, r);
    }
}

#[test]
fn t_satisfies_its_ode_to_truncation_order() {
    // dT/dη + aηT = a(f(η)Γ*(a) − 1)
    let a = 100.0;
    let g = gamma_star(a).unwrap();
    let t = |e: f64| t_series(a, &lambda_from_eta(e).unwrap(), DEFAULT_ORDER).unwrap().value;
    let h = 1e-5;
    for i in 0..=40 {
        let eta = -2.0 + 0.1 * i as f64;
        let p = lambda_from_eta(eta).unwrap();
        let dt = (t(eta + h) - t(eta - h)) / (2.0 * h);
        let res = dt + a * eta * t(eta) - a * (p.f() * g - 1.0);
        assert!(res.abs() <= 1e-4 * a, "η = {eta}: {res:e}");
    }
}

#[test]
fn transition_coefficients() {
    let t = CoefficientTable::standard();
    assert!((t.eval_maclaurin(0, 0.0) + 1.0 / 3.0).abs() <= 1e-15);
    assert!((t.eval_maclaurin(1, 0.0) + 1.0 / 540.0).abs() <= 1e-15);
}

#[test]
fn exp_integral_examples() {
    assert!((exp_integral_p(1.0, 1.0).unwrap().value - 0.219_383_934_395_520_26).abs() < 1e-16);
    for &z in &[0.5, 3.0, 40.0] {
        let e0 = exp_integral_p(0.0, z).unwrap().value;
        assert!((e0 - (-z).exp() / z).abs() <= 1e-15 * e0);
    }
    assert!(matches!(exp_integral_p(2.0, 0.0), Err(Error::Domain(_))));
}

#[test]
fn table_rows() {
    let rows = [
        (90.0, 2.464_370_784_806_670, 1.205_524_234_116_744_26e196),
        (100.0, 0.185_636_311_520_584, 2.340_106_047_916_898_45e200),
        (110.0, -2.150_228_198_004_453, 5.013_901_354_648_721_93e203),
    ];
    for &(z, gt, gs) in &rows {
        let g = gtilde(100.25, z, DEFAULT_ORDER).unwrap().value;
        let s = gamma_star_neg(100.25, z, DEFAULT_ORDER).unwrap().value;
        assert!(((g - gt) / gt).abs() <= 5e-13);
        assert!(((s - gs) / gs).abs() <= 5e-13);
    }
}
