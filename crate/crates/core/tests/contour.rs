use std::sync::OnceLock;

use ffcount_core::analytic::AnalyticConfig;
use ffcount_core::contour::*;
use ffcount_core::series::{BivariateSeries, SeriesKind};
use ffcount_core::{Context, Error, FieldSize, C64};
use proptest::prelude::*;

fn fs(q: u64) -> FieldSize {
    FieldSize::new(q).unwrap()
}

fn ctx(q: u64) -> &'static Context {
    static C2: OnceLock<Context> = OnceLock::new();
    static C3: OnceLock<Context> = OnceLock::new();
    let cell = if q == 2 { &C2 } else { &C3 };
    cell.get_or_init(|| Context::products_only(fs(q), AnalyticConfig::default()).unwrap())
}

fn all3() -> &'static BivariateSeries {
    static S: OnceLock<BivariateSeries> = OnceLock::new();
    S.get_or_init(|| BivariateSeries::build(fs(3), 200, SeriesKind::AllMonics))
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

#[test]
fn circle_examples() {
    let v: C64 = circle_coefficient(|u: &C64| Ok(1.0 / (1.0 - 2.0 * u)), 5, 0.2, 64, true).unwrap();
    assert!((v - 32.0).norm() < 1e-8);
    let k = ctx(2);
    let v = circle_coefficient(|u: &C64| k.g_z(u, &re(1.0)), 4, 0.2, 64, true).unwrap();
    assert!((v - 16.0).norm() < 1e-8);
    let v = circle_coefficient(|u: &C64| k.g_z(u, &re(2.0)), 3, 0.2, 64, true).unwrap();
    let exact = BivariateSeries::build(fs(2), 3, SeriesKind::AllMonics).m_z(3, &re(2.0)).unwrap();
    assert_eq!(exact, re(44.0));
    assert!((v - exact).norm() < 1e-6);
}

#[test]
fn node_count_policy() {
    let f = |u: &C64| Ok(*u);
    assert!(matches!(circle_coefficient(f, 10, 0.2, 39, true), Err(Error::Accuracy(_))));
    assert!(circle_coefficient(f, 10, 0.2, 40, true).is_ok());
    assert!(circle_coefficient(f, 10, 0.2, 8, false).is_ok());
    assert!(matches!(circle_coefficient(f, 0, 0.2, 0, false), Err(Error::Accuracy(_))));
}

#[test]
fn spectral_convergence() {
    let k = ctx(3);
    for z in [re(1.5), C64::new(-0.5, 1.0), re(2.4)] {
        let a = circle_coefficient(|u: &C64| k.g_z(u, &z), 10, 1.0 / 6.0, 128, true).unwrap();
        let b = circle_coefficient(|u: &C64| k.g_z(u, &z), 10, 1.0 / 6.0, 256, true).unwrap();
        assert!((a - b).norm() <= 1e-10 * b.norm(), "z = {z}");
    }
}

#[test]
fn polynomial_self_test() {
    let s = all3();
    let z = C64::new(1.5, 0.3);
    let deg = 30;
    let coeffs: Vec<C64> = (0..=deg).map(|m| s.m_z(m, &z).unwrap()).collect();
    let poly = |u: &C64| Ok(coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * u + c));
    for m in 0..=deg {
        let v = circle_coefficient(poly, m, 1.0 / 3.0, 4 * deg + 4, true).unwrap();
        assert!((v - coeffs[m]).norm() <= 1e-10 * coeffs[m].norm(), "m = {m}");
    }
}

#[test]
fn hankel_examples_and_trend() {
    let sqrt_pi = std::f64::consts::PI.sqrt();
    for (z, want) in [(-1.0, -1.0), (0.0, 0.0), (0.5, 0.5 / sqrt_pi)] {
        let v = hankel_integral(re(z), &HankelContour::new(200, 1.0), HANKEL_Z_MAX).unwrap();
        assert!((v - want).norm() <= 0.05, "z = {z}: {v}");
        assert!((hankel_limit(re(z)) - want).norm() < 1e-14);
    }
    for z in [re(0.5), re(1.5), C64::new(-0.5, 0.5)] {
        let err = |n| (hankel_integral(z, &HankelContour::new(n, 1.0), HANKEL_Z_MAX).unwrap() - hankel_limit(z)).norm();
        assert!(err(400) < err(100), "z = {z}");
    }
    assert!(matches!(hankel_integral(re(10.5), &HankelContour::new(100, 1.0), HANKEL_Z_MAX), Err(Error::Domain(_))));
}

#[test]
fn hankel_cut_straddle_is_shifted() {
    let mut c = HankelContour::new(200, 1.0);
    c.nodes_arc = 255;
    let a = hankel_integral(re(0.5), &c, HANKEL_Z_MAX).unwrap();
    c.nodes_arc = 256;
    let b = hankel_integral(re(0.5), &c, HANKEL_Z_MAX).unwrap();
    assert!((a - b).norm() < 1e-6);
    c.offset = 0.0;
    assert!(matches!(hankel_integral(re(0.5), &c, HANKEL_Z_MAX), Err(Error::BranchCut(_))));
}

#[test]
fn three_way_checks() {
    let s = all3();
    let k = ctx(3);
    let opts = ContourOptions::default();
    let c = verify_prop_main_term(s, k, 100, re(1.0), &opts).unwrap();
    assert!(c.passed && c.contour_rel_error <= 1e-6);
    assert!(c.mainterm_rel_diff.unwrap() <= 1e-6);
    assert!((c.exact.ln_abs() - 100.0 * 3f64.ln()).abs() < 1e-12);

    let c = verify_prop_main_term(s, k, 200, re(2.5), &opts).unwrap();
    assert!(c.passed, "{c:?}");
    assert!(c.mainterm_rel_diff.unwrap() <= 0.1);

    let c = verify_prop_main_term(s, k, 200, re(-1.0), &opts).unwrap();
    assert!(c.passed, "{c:?}");
    assert!(c.mainterm_ratio.is_none());

    let json = serde_json::to_string(&c).unwrap();
    let back: ContourCheck = serde_json::from_str(&json).unwrap();
    assert_eq!(back, c);
}

#[test]
fn three_way_check_without_linear_factors() {
    let nol = BivariateSeries::build(fs(3), 60, SeriesKind::NoLinearFactors);
    let c = verify_prop_main_term(&nol, ctx(3), 60, re(6.0), &ContourOptions::default()).unwrap();
    assert!(c.passed, "{c:?}");
}

#[test]
fn contour_preconditions() {
    let s = all3();
    let k = ctx(3);
    let wide = ContourOptions { radius: Some(0.4), ..Default::default() };
    assert!(matches!(verify_prop_main_term(s, k, 20, re(1.0), &wide), Err(Error::Domain(_))));
    assert!(matches!(verify_prop_main_term(s, k, 20, re(2.6), &ContourOptions::default()), Err(Error::Domain(_))));
    let strict = ContourOptions { nodes: Some(50), strict: true, ..Default::default() };
    assert!(matches!(verify_prop_main_term(s, k, 20, re(1.0), &strict), Err(Error::Accuracy(_))));
    assert!(matches!(verify_prop_main_term(s, ctx(2), 20, re(1.0), &ContourOptions::default()), Err(Error::Config(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quadrature_recovers_exact_values(n in 1usize..40, r in 0.0f64..2.4, t in -3.1f64..3.1) {
        let z = C64::from_polar(r, t);
        let c = verify_prop_main_term(all3(), ctx(3), n, z, &ContourOptions::default()).unwrap();
        prop_assert!(c.passed, "{:?}", c);
    }
}
