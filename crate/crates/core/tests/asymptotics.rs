use std::sync::OnceLock;

use ffcount_core::analytic::AnalyticConfig;
use ffcount_core::asymptotics::*;
use ffcount_core::irreducibles::count_irreducibles;
use ffcount_core::quadrature::gauss_legendre;
use ffcount_core::series::{BivariateSeries, SeriesKind};
use ffcount_core::{Context, Error, FieldSize, C64};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{rngs::StdRng, Rng, SeedableRng};

fn fs(q: u64) -> FieldSize {
    FieldSize::new(q).unwrap()
}

fn ctx3() -> &'static Context {
    static C: OnceLock<Context> = OnceLock::new();
    C.get_or_init(|| Context::new(fs(3), AnalyticConfig::default()).unwrap())
}

fn tables() -> &'static (BivariateSeries, BivariateSeries) {
    static T: OnceLock<(BivariateSeries, BivariateSeries)> = OnceLock::new();
    T.get_or_init(|| {
        (
            BivariateSeries::build(fs(3), 400, SeriesKind::AllMonics),
            BivariateSeries::build(fs(3), 400, SeriesKind::NoLinearFactors),
        )
    })
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

#[test]
fn small_k_estimates() {
    let k = ctx3();
    let (all, _) = tables();
    let e = sathe_selberg_estimate(50, 1, k, false).unwrap();
    let r = e.ratio_of(&count_irreducibles(fs(3), 50).unwrap());
    assert!(r > 0.8 && r < 1.2, "{r}");

    let dev: Vec<f64> = [50, 100, 200, 400]
        .iter()
        .map(|&n| (sathe_selberg_estimate(n, 2, k, false).unwrap().ratio_of(all.count_ref(n, 2)) - 1.0).abs())
        .collect();
    assert!(dev[3] < dev[0], "{dev:?}");

    // direct evaluation in doubles
    let h = k.big_h_at(2.0 / 100f64.ln()).unwrap();
    let direct = 3f64.powi(100) / 100.0 * h * 100f64.ln();
    let e = sathe_selberg_estimate(100, 2, k, false).unwrap();
    assert!((e.value() / direct - 1.0).abs() < 1e-9);

    assert!(matches!(sathe_selberg_estimate(50, 12, k, false), Err(Error::Regime(_))));
    // forcing skips the range check, but H is still only defined for |z| <= q - ε
    assert!(matches!(sathe_selberg_estimate(50, 12, k, true), Err(Error::Domain(_))));
    let e = sathe_selberg_formula(fs(3), 77, 1, 1.0).unwrap();
    assert!((e.ln_abs() - (77.0 * 3f64.ln() - 77f64.ln())).abs() < 1e-12);
}

#[test]
fn large_k_estimates() {
    let k = ctx3();
    let (all, _) = tables();
    let p = RegimeParams::default();
    let r = large_k_estimate(200, 50, k, &p, false).unwrap().ratio_of(all.count_ref(200, 50));
    assert!(r > 0.5 && r < 2.0, "{r}");
    let dev: Vec<f64> = [100, 200, 400]
        .iter()
        .map(|&n| (large_k_estimate(n, n / 4, k, &p, false).unwrap().ratio_of(all.count_ref(n, n / 4)) - 1.0).abs())
        .collect();
    assert!(strictly_decreasing(&dev), "{dev:?}");

    let cq = k.c_of_q().unwrap().product;
    let direct = cq * 3f64.powi(150) * 50f64.powi(2) * 150f64.powi(2);
    assert!((large_k_estimate(200, 50, k, &p, false).unwrap().value() / direct - 1.0).abs() < 1e-9);

    assert!(matches!(large_k_estimate(200, 150, k, &p, false), Err(Error::Regime(_))));
    let k2 = Context::products_only(fs(2), AnalyticConfig::default()).unwrap();
    assert!(matches!(large_k_estimate(200, 50, &k2, &p, true), Err(Error::Unsupported(_))));
}

#[test]
fn no_linear_estimates() {
    let k = ctx3();
    let (_, nol) = tables();
    let e = n_prime_estimate(100, 1, k, false).unwrap();
    assert!((e.ln_abs() - (100.0 * 3f64.ln() - 100f64.ln())).abs() < 1e-12);
    let r = e.ratio_of(&count_irreducibles(fs(3), 100).unwrap());
    assert!(r > 0.9 && r < 1.1);
    let dev: Vec<f64> = [50, 100, 200]
        .iter()
        .map(|&n| (n_prime_estimate(n, 3, k, false).unwrap().ratio_of(nol.count_ref(n, 3)) - 1.0).abs())
        .collect();
    assert!(strictly_decreasing(&dev), "{dev:?}");
    assert!(matches!(n_prime_estimate(10, 30, k, false), Err(Error::Regime(_))));
}

#[test]
fn main_terms() {
    let k = ctx3();
    let (all, nol) = tables();
    for n in [1, 50, 300] {
        let m = mz_mainterm(n, C64::new(1.0, 0.0), k, SeriesKind::AllMonics).unwrap();
        let ratio = all.m_z_scaled(n.min(400), C64::new(1.0, 0.0)).unwrap().ratio(&m);
        assert!((ratio - 1.0).norm() <= 1e-10);
    }
    let z2 = C64::new(2.0, 0.0);
    let r = all.m_z_scaled(300, z2).unwrap().ratio(&mz_mainterm(300, z2, k, SeriesKind::AllMonics).unwrap());
    assert!((r - 1.0).norm() <= 0.05, "{r}");
    let z4 = C64::new(4.0, 0.0);
    let m = mz_mainterm(300, z4, k, SeriesKind::NoLinearFactors).unwrap();
    assert!(m.ln_abs().is_finite());
    let r = nol.m_z_scaled(300, z4).unwrap().ratio(&m);
    assert!(r.re > 0.8 && r.re < 1.2, "{r}");
    assert!(matches!(mz_mainterm(300, z4, k, SeriesKind::AllMonics), Err(Error::Domain(_))));
    assert!(matches!(mz_mainterm(300, C64::new(8.6, 0.0), k, SeriesKind::NoLinearFactors), Err(Error::Domain(_))));
}

#[test]
fn tail_diagnostics() {
    let (all, nol) = tables();
    let d = t2_diagnostic(all, nol, 60, 20).unwrap();
    assert!(d.ratio.is_finite());
    let ratios: Vec<f64> = [30, 45, 60, 75, 90].iter().map(|&n| t2_diagnostic(all, nol, n, n / 3).unwrap().ratio).collect();
    let max = ratios.iter().cloned().fold(0.0, f64::max);
    assert!(max <= 2.0 * ratios[0] || max == 0.0, "{ratios:?}");
    assert_eq!(ratios[0], 0.0);
    let d = t2_diagnostic(all, nol, 20, 2).unwrap();
    assert_eq!((d.t2, d.ratio), (BigUint::from(0u32), 0.0));
    let wide = t2_diagnostic(all, nol, 400, 200).unwrap();
    assert!(wide.t2 > BigUint::from(0u32) && wide.ratio > 0.0);
}

#[test]
fn twisted_sums() {
    let k = ctx3();
    let t = twisted_binomial_sum(400, 100, k).unwrap();
    assert!(t.ratio > 0.7 && t.ratio < 1.3, "{t:?}");
    let dev: Vec<f64> = [100, 200, 400].iter().map(|&n| (twisted_binomial_sum(n, n / 4, k).unwrap().ratio - 1.0).abs()).collect();
    assert!(strictly_decreasing(&dev), "{dev:?}");
}

#[test]
fn upper_bound_rows() {
    let (_, nol) = tables();
    let eta = default_eta(fs(3));
    assert!((eta - (std::f64::consts::E - 1.0) * 3.0).abs() < 1e-15);
    let rows = upper_bound_diagnostic(nol, 200, eta, 0.6).unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.ratio.is_finite() && r.ratio >= 0.0));
    assert!(upper_bound_diagnostic(nol, 200, 6.0, 0.6).is_err());
}

#[test]
fn comparison_reports() {
    let k = ctx3();
    let (all, _) = tables();
    let p = RegimeParams::default();
    let ns: Vec<usize> = (1..=8).map(|i| 50 * i).collect();
    let r = compare_report(all, &ns, "k=2".parse().unwrap(), k, &p).unwrap();
    assert_eq!(r.rows.len(), 8);
    assert!(r.rows.iter().all(|row| row.regime == Regime::SmallK && row.ratio.is_some()));

    let r = compare_report(all, &ns, "k=n/4".parse().unwrap(), k, &p).unwrap();
    for row in &r.rows {
        let ln = (row.n as f64).ln();
        let large = row.k as f64 >= ln.ln() * ln && row.k as f64 <= row.n as f64 / 2.0;
        let small = row.k as f64 <= 2.5 * ln;
        let expected = if small { Regime::SmallK } else if large { Regime::LargeK } else { Regime::OutOfRange };
        assert_eq!(row.regime, expected, "n = {}", row.n);
    }
    assert!(r.rows.iter().filter(|row| row.regime == Regime::LargeK).count() >= 6);

    let r = compare_report(all, &[50], "k=40".parse().unwrap(), k, &p).unwrap();
    assert_eq!(r.rows[0].regime, Regime::OutOfRange);
    assert!(r.rows[0].ratio.is_none());

    let r = compare_report(all, &[100, 50, 100], "k=1..3".parse().unwrap(), k, &p).unwrap();
    let cells: Vec<(usize, usize)> = r.rows.iter().map(|row| (row.n, row.k)).collect();
    assert_eq!(cells, [(50, 1), (50, 2), (50, 3), (100, 1), (100, 2), (100, 3)]);
    let json = serde_json::to_string(&r).unwrap();
    let back: ComparisonReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r);

    assert!(matches!(compare_report(all, &[500], KRule::Constant(2), k, &p), Err(Error::Config(_))));
}

#[test]
fn regime_parameters_parse() {
    assert_eq!("loglog".parse::<XiChoice>().unwrap(), XiChoice::LogLog);
    assert_eq!("1.5".parse::<XiChoice>().unwrap(), XiChoice::Constant(1.5));
    assert!("k=n/0".parse::<KRule>().is_err());
    assert!("k=5..2".parse::<KRule>().is_err());
    assert_eq!(KRule::Range(2, 4).to_string(), "k=2..4");
    assert_eq!(KRule::Fraction(4).ks(201), [51]);
}

// Sampled checks of the elementary inequalities behind the quadrature error
// estimates.

#[test]
fn cosine_and_chord_bounds() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let pi = std::f64::consts::PI;
    let mut violations = 0;
    for _ in 0..10_000 {
        let t: f64 = rng.gen_range(-pi..=pi);
        if t.cos() - 1.0 > -t * t / 5.0 {
            violations += 1;
        }
        let chord = (C64::new(1.0, 0.0) - C64::from_polar(1.0, t)).norm_sqr();
        if chord > t * t * (1.0 + 1e-15) {
            violations += 1;
        }
    }
    assert_eq!(violations, 0);
}

fn gaussian_second_moment(k: f64) -> f64 {
    // θ² e^{-kθ²/5} over the line, truncated where the integrand is below e^{-80}
    let l = (5.0 * 80.0 / k).sqrt();
    let (x, w) = gauss_legendre(64);
    let panels = 16;
    let h = 2.0 * l / panels as f64;
    let mut s = 0.0;
    for p in 0..panels {
        let a = -l + p as f64 * h;
        for (xi, wi) in x.iter().zip(&w) {
            let t = a + 0.5 * h * (xi + 1.0);
            s += 0.5 * h * wi * t * t * (-k * t * t / 5.0).exp();
        }
    }
    s
}

#[test]
fn gaussian_moment_closed_form() {
    for k in [1.0, 10.0, 100.0] {
        let numeric = gaussian_second_moment(k);
        let closed = 5.0 * (5.0 * std::f64::consts::PI).sqrt() / (2.0 * f64::powf(k, 1.5));
        assert!((numeric / closed - 1.0).abs() <= 1e-6, "k = {k}: {numeric} vs {closed}");
    }
}

proptest! {
    #[test]
    fn estimate_text_round_trip(ln in -700.0f64..5000.0, negative: bool) {
        let e = Estimate::from_ln_signed(ln, negative);
        let back: Estimate = e.to_string().parse().unwrap();
        prop_assert_eq!(back, e);
        prop_assert_eq!(back.is_negative(), negative);
        prop_assert!((back.ln_abs() - ln).abs() <= 1e-13 * ln.abs().max(1.0));
    }

    #[test]
    fn regimes_are_exclusive_and_ordered(n in 2usize..2000, frac in 0.0f64..1.0) {
        let k = 1 + ((n - 1) as f64 * frac) as usize;
        let p = RegimeParams::default();
        let r = classify(fs(3), n, k, &p);
        let ln = (n as f64).ln();
        match r {
            Regime::SmallK => prop_assert!(k as f64 <= 2.5 * ln),
            Regime::LargeK => prop_assert!(k as f64 > 2.5 * ln && k as f64 >= ln.ln() * ln && 2 * k <= n),
            Regime::OutOfRange => prop_assert!(k as f64 > 2.5 * ln && (2 * k > n || (k as f64) < ln.ln() * ln)),
        }
    }
}
