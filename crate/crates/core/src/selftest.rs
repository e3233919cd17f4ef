//! Smoke suite of closed-form examples from every module.

use num_bigint::BigUint;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::{AnalyticConfig, AnalyticContext};
use crate::asymptotics::{
    classify, compare_report, large_k_estimate, mz_mainterm, n_prime_estimate, sathe_selberg_formula, t2_diagnostic,
    KRule, Regime, RegimeParams,
};
use crate::contour::{circle_coefficient, hankel_integral, hankel_limit, HankelContour, HANKEL_Z_MAX};
use crate::error::Error;
use crate::field::FieldSize;
use crate::gamma::gamma;
use crate::irreducibles::{count_irreducibles, IrreducibleTable, DEFAULT_GUARD};
use crate::oracle::omega;
use crate::poly::MonicPoly;
use crate::series::{BivariateSeries, SeriesKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfCheck {
    pub module: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

type Outcome = std::result::Result<String, String>;

fn close(got: f64, want: f64, tol: f64) -> Outcome {
    if (got - want).abs() <= tol {
        Ok(format!("{got}"))
    } else {
        Err(format!("got {got}, expected {want} within {tol}"))
    }
}

fn close_c(got: Complex64, want: Complex64, tol: f64) -> Outcome {
    if (got - want).norm() <= tol {
        Ok(format!("{got}"))
    } else {
        Err(format!("got {got}, expected {want} within {tol}"))
    }
}

fn equal<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> Outcome {
    if got == want {
        Ok(format!("{got:?}"))
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

struct Suite(Vec<SelfCheck>);

impl Suite {
    fn run(&mut self, module: &str, name: &str, f: impl FnOnce() -> Outcome) {
        let (passed, detail) = match f() {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.0.push(SelfCheck { module: module.into(), name: name.into(), passed, detail });
    }
}

fn fs(q: u64) -> FieldSize {
    FieldSize::new(q).expect("prime power")
}

/// Runs every check; a failed setup step shows up as a failed check.
pub fn run_selftest() -> Vec<SelfCheck> {
    let mut s = Suite(Vec::new());

    s.run("irreducibles", "pi_2(1) = 2", || equal(count_irreducibles(fs(2), 1).map_err(err)?, BigUint::from(2u32)));
    s.run("irreducibles", "monic linears over F_3", || {
        let t = IrreducibleTable::enumerate(fs(3), 1, DEFAULT_GUARD).map_err(err)?;
        let got: Vec<String> = t.elements(1).unwrap_or(&[]).iter().map(|f| f.to_string()).collect();
        equal(got.join(", "), "t, t + 1, t + 2".to_string())
    });
    s.run("irreducibles", "degree 0 rejected", || match count_irreducibles(fs(2), 0) {
        Err(Error::ZeroDegree) => Ok("ZeroDegree".into()),
        other => Err(format!("{other:?}")),
    });

    let all2 = BivariateSeries::build(fs(2), 5, SeriesKind::AllMonics);
    s.run("exact-counts", "N(5,0) = 0", || equal(all2.count(5, 0).map_err(err)?, BigUint::from(0u32)));
    s.run("exact-counts", "N(4,4) = 5 over F_2", || equal(all2.count(4, 4).map_err(err)?, BigUint::from(5u32)));
    s.run("exact-counts", "M_1(4) = 16 over F_2", || {
        close_c(all2.m_z(4, &Complex64::new(1.0, 0.0)).map_err(err)?, Complex64::new(16.0, 0.0), 0.0)
    });
    s.run("exact-counts", "M_i(0) = 1", || {
        close_c(all2.m_z(0, &Complex64::new(0.0, 1.0)).map_err(err)?, Complex64::new(1.0, 0.0), 0.0)
    });

    s.run("oracle", "Omega(t^3 + t) = 3 over F_2", || {
        let irr = IrreducibleTable::enumerate(fs(2), 3, DEFAULT_GUARD).map_err(err)?;
        equal(omega(&MonicPoly::from_lower(&[0, 1, 0]), &irr).map_err(err)?, 3)
    });
    s.run("oracle", "Omega(t^2 + t + 1) = 1 over F_2", || {
        let irr = IrreducibleTable::enumerate(fs(2), 2, DEFAULT_GUARD).map_err(err)?;
        equal(omega(&MonicPoly::from_lower(&[1, 1]), &irr).map_err(err)?, 1)
    });

    let ctx2 = AnalyticContext::<f64>::products_only(fs(2), AnalyticConfig::default());
    let ctx3 = AnalyticContext::<f64>::new(fs(3), AnalyticConfig::default());
    let ctx2 = ctx2.as_ref().map_err(err);
    let ctx3 = ctx3.as_ref().map_err(err);
    let re = |x: f64| Complex64::new(x, 0.0);

    s.run("analytic", "zeta(1/4) = 2 for q = 2", || close_c(ctx2.clone()?.zeta(&re(0.25)).map_err(err)?, re(2.0), 1e-15));
    s.run("analytic", "zeta(0) = 1 for q = 3", || close_c(ctx3.clone()?.zeta(&re(0.0)).map_err(err)?, re(1.0), 0.0));
    s.run("analytic", "zeta pole at 1/q", || match ctx2.clone()?.zeta(&re(0.5)) {
        Err(Error::Pole { .. }) => Ok("pole".into()),
        other => Err(format!("{other:?}")),
    });
    s.run("analytic", "F_1(1/(2q)) = 1", || close_c(ctx3.clone()?.f_z(&re(1.0 / 6.0), &re(1.0)).map_err(err)?, re(1.0), 1e-14));
    s.run("analytic", "F_0(0.1) = 1", || close_c(ctx3.clone()?.f_z(&re(0.1), &re(0.0)).map_err(err)?, re(1.0), 1e-14));
    s.run("analytic", "H(1) = 1", || close(ctx3.clone()?.big_h_at(1.0).map_err(err)?, 1.0, 1e-12));
    s.run("analytic", "h(1) = (2/3)^3 for q = 3", || close(ctx3.clone()?.h_at(1.0).map_err(err)?, 8.0 / 27.0, 1e-12));
    s.run("analytic", "h(0) = 1", || close(ctx3.clone()?.h_at(0.0).map_err(err)?, 1.0, 1e-12));
    s.run("analytic", "Taylor coefficient 0 is 1", || close(ctx3.clone()?.h_taylor()[0], 1.0, 1e-10));
    s.run("analytic", "Q_1 = 1", || close(ctx3.clone()?.q_j(1, 7.5).map_err(err)?, 1.0, 0.0));
    s.run("analytic", "Q_2(0) = h'(0)", || {
        let c = ctx3.clone()?;
        close(c.q_j(2, 0.0).map_err(err)?, c.h_taylor()[1], 0.0)
    });
    s.run("analytic", "Q_2(X) - X = h'(0)", || {
        let c = ctx3.clone()?;
        close(c.q_j(2, 3.25).map_err(err)? - 3.25, c.h_taylor()[1], 1e-14)
    });
    s.run("analytic", "Gamma(2) = 1", || close_c(gamma(&re(2.0)).map_err(err)?, re(1.0), 1e-14));
    s.run("analytic", "Gamma(1/2) = sqrt(pi)", || {
        close_c(gamma(&re(0.5)).map_err(err)?, re(std::f64::consts::PI.sqrt()), 1e-12)
    });
    s.run("analytic", "Gamma(-1/2) = -2 sqrt(pi)", || {
        close_c(gamma(&re(-0.5)).map_err(err)?, re(-2.0 * std::f64::consts::PI.sqrt()), 1e-12)
    });

    s.run("asymptotics", "H = 1 reduces to q^n/n", || {
        let e = sathe_selberg_formula(fs(3), 30, 1, 1.0).map_err(err)?;
        close(e.value() / (3f64.powi(30) / 30.0), 1.0, 1e-13)
    });
    s.run("asymptotics", "N'(n,1) estimate is q^n/n", || {
        let e = n_prime_estimate(100, 1, ctx3.clone()?, false).map_err(err)?;
        close(e.ln_abs(), 100.0 * 3f64.ln() - 100f64.ln(), 1e-12)
    });
    s.run("asymptotics", "main term at z = 1 is q^n", || {
        let m = mz_mainterm(100, re(1.0), ctx3.clone()?, SeriesKind::AllMonics).map_err(err)?;
        close(m.ln_abs() - 100.0 * 3f64.ln(), 0.0, 1e-10)
    });
    s.run("asymptotics", "large-k estimate refuses q = 2", || {
        match large_k_estimate(100, 25, ctx2.clone()?, &RegimeParams::default(), true) {
            Err(Error::Unsupported(_)) => Ok("unsupported".into()),
            other => Err(format!("{other:?}")),
        }
    });
    s.run("asymptotics", "k = 2 gives 8 small-k rows", || {
        let c = ctx3.clone()?;
        let all = BivariateSeries::build(fs(3), 400, SeriesKind::AllMonics);
        let ns: Vec<usize> = (1..=8).map(|i| 50 * i).collect();
        let r = compare_report(&all, &ns, KRule::Constant(2), c, &RegimeParams::default()).map_err(err)?;
        let small = r.rows.iter().filter(|row| row.regime == Regime::SmallK).count();
        equal((r.rows.len(), small), (8, 8))
    });
    s.run("asymptotics", "(n, k) = (50, 40) is out of range", || {
        equal(classify(fs(3), 50, 40, &RegimeParams::default()), Regime::OutOfRange)
    });
    s.run("asymptotics", "empty tail gives ratio 0", || {
        let all = BivariateSeries::build(fs(3), 20, SeriesKind::AllMonics);
        let nol = BivariateSeries::build(fs(3), 20, SeriesKind::NoLinearFactors);
        let d = t2_diagnostic(&all, &nol, 20, 2).map_err(err)?;
        equal((d.t2.clone(), d.ratio), (BigUint::from(0u32), 0.0))
    });

    s.run("contour", "[u^5] 1/(1-2u) = 32", || {
        let v: Complex64 = circle_coefficient(|u: &Complex64| Ok(1.0 / (1.0 - 2.0 * u)), 5, 0.2, 64, true).map_err(err)?;
        close_c(v, re(32.0), 1e-8)
    });
    s.run("contour", "[u^4] G_1 = 16 over F_2", || {
        let c = ctx2.clone()?;
        let v = circle_coefficient(|u: &Complex64| c.g_z(u, &re(1.0)), 4, 0.2, 64, true).map_err(err)?;
        close_c(v, re(16.0), 1e-8)
    });
    for (z, want) in [(-1.0, -1.0), (0.0, 0.0), (0.5, 0.5 / std::f64::consts::PI.sqrt())] {
        s.run("contour", &format!("Hankel integral at z = {z}"), || {
            let v = hankel_integral(re(z), &HankelContour::new(200, 1.0), HANKEL_Z_MAX).map_err(err)?;
            close_c(hankel_limit(re(z)), re(want), 1e-12)?;
            close_c(v, re(want), 0.05)
        });
    }

    s.0
}
