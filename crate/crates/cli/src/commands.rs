//! One function per subcommand, each turning a resolved config into a report.

use ffcount_core::analytic::AnalyticConfig;
use ffcount_core::asymptotics::{compare_report, default_eta, upper_bound_diagnostic};
use ffcount_core::contour::{verify_prop_main_term, ContourOptions};
use ffcount_core::irreducibles::IrreducibleTable;
use ffcount_core::oracle::exhaustive_table;
use ffcount_core::selftest::run_selftest;
use ffcount_core::series::{decompose, BivariateSeries, SeriesKind};
use ffcount_core::{Context, FieldSize, C64};
use num_bigint::BigUint;
use serde::Serialize;

use crate::config::RunConfig;
use crate::report::Report;
use crate::CliError;

type Result<T> = std::result::Result<T, CliError>;

pub fn execute(cfg: &RunConfig) -> Result<Report> {
    let q = FieldSize::new(cfg.q)?;
    match cfg.command.as_str() {
        "pi" => pi(cfg, q),
        "table" => table(cfg, q),
        "oracle" => oracle(cfg, q),
        "decompose" => decomposition(cfg, q),
        "constants" => constants(cfg, q),
        "compare" => compare(cfg, q),
        "upper-bound" => upper_bound(cfg, q),
        "contour-check" => contour_check(cfg, q),
        "selftest" => Ok(selftest()),
        other => Err(CliError::Usage(format!("unknown command {other:?}"))),
    }
}

fn required<T: Copy>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| CliError::Usage(format!("missing --{flag}")))
}

fn analytic_config(cfg: &RunConfig) -> AnalyticConfig {
    AnalyticConfig {
        trunc_degree: cfg.trunc_degree,
        epsilon: cfg.regime.epsilon,
        taylor_nodes: cfg.quadrature_nodes,
        ..AnalyticConfig::default()
    }
}

#[derive(Serialize)]
struct CountRow {
    n: usize,
    k: usize,
    #[serde(with = "ffcount_core::serde_big::biguint")]
    count: BigUint,
}

fn pi(cfg: &RunConfig, q: FieldSize) -> Result<Report> {
    #[derive(Serialize)]
    struct Row<'a> {
        d: usize,
        #[serde(with = "ffcount_core::serde_big::biguint")]
        pi: &'a BigUint,
    }
    let t = IrreducibleTable::counts(q, cfg.n_max);
    let mut r = Report::new(&["d", "pi"]);
    for d in 1..=cfg.n_max {
        r.push(&Row { d, pi: t.count_ref(d) });
    }
    Ok(r)
}

fn table(cfg: &RunConfig, q: FieldSize) -> Result<Report> {
    let s = BivariateSeries::build(q, cfg.n_max, cfg.kind);
    let mut r = Report::new(&["n", "k", "count"]);
    for n in 0..=cfg.n_max {
        let top = cfg.k_max.map_or(n, |k| k.min(n));
        for k in usize::from(n > 0)..=top {
            r.push(&CountRow { n, k, count: s.count_ref(n, k).clone() });
        }
    }
    Ok(r)
}

fn oracle(cfg: &RunConfig, q: FieldSize) -> Result<Report> {
    let n = required(cfg.n, "n")?;
    let t = exhaustive_table(q, n, cfg.oracle_guard)?;
    let hist = match cfg.kind {
        SeriesKind::AllMonics => &t.histogram,
        SeriesKind::NoLinearFactors => &t.no_linear_histogram,
    };
    let zero = BigUint::default();
    let mut r = Report::new(&["n", "k", "count"]);
    for k in 0..=n {
        r.push(&CountRow { n, k, count: hist.get(&k).unwrap_or(&zero).clone() });
    }
    if cfg.verify {
        let s = BivariateSeries::build(q, n, cfg.kind);
        let row = s.row(n)?;
        let diffs: Vec<String> = (0..=n)
            .filter_map(|k| {
                let o = hist.get(&k).unwrap_or(&zero);
                (o != &row[k]).then(|| format!("k = {k}: oracle {o}, series {}", row[k]))
            })
            .collect();
        let detail = if diffs.is_empty() {
            format!("MATCH: {} entries of the degree-{n} row agree", n + 1)
        } else {
            format!("MISMATCH: {}", diffs.join("; "))
        };
        eprintln!("{detail}");
        r.check("oracle vs generating function", diffs.is_empty(), detail);
    }
    Ok(r)
}

fn decomposition(cfg: &RunConfig, q: FieldSize) -> Result<Report> {
    #[derive(Serialize)]
    struct Row<'a> {
        j: usize,
        #[serde(with = "ffcount_core::serde_big::biguint")]
        binomial_weight: &'a BigUint,
        #[serde(with = "ffcount_core::serde_big::biguint")]
        n_prime_count: &'a BigUint,
        #[serde(with = "ffcount_core::serde_big::biguint")]
        product: &'a BigUint,
        part: &'static str,
    }
    let (n, k) = (required(cfg.n, "n")?, required(cfg.k, "k")?);
    let all = BivariateSeries::build(q, n, SeriesKind::AllMonics);
    let nol = BivariateSeries::build(q, n, SeriesKind::NoLinearFactors);
    let b = decompose(&all, &nol, n, k)?;
    let mut r = Report::new(&["j", "binomial_weight", "n_prime_count", "product", "part"]);
    for t in &b.terms {
        r.push(&Row {
            j: t.j,
            binomial_weight: &t.binomial_weight,
            n_prime_count: &t.n_prime_count,
            product: &t.product,
            part: if t.j <= b.split { "t1" } else { "t2" },
        });
    }
    let total = all.count_ref(n, k);
    r.check(
        "t1 + t2 = N(n,k)",
        &(&b.t1 + &b.t2) == total,
        format!("t1 = {}, t2 = {}, N = {total}, t1 sums j <= {}", b.t1, b.t2, b.split),
    );
    Ok(r)
}

fn constants(cfg: &RunConfig, q: FieldSize) -> Result<Report> {
    #[derive(Serialize)]
    struct Sample {
        z: f64,
        value: f64,
    }
    #[derive(Serialize)]
    struct Row<'a> {
        q: u64,
        trunc_degree: usize,
        c_q_product: Option<f64>,
        c_q_via_h: Option<f64>,
        h_q: f64,
        big_h: Vec<Sample>,
        tail_bound: f64,
        h_taylor: &'a [f64],
    }
    let ctx = Context::new(q, analytic_config(cfg))?;
    let qf = q.as_f64();
    let c = ctx.c_of_q().ok();
    let mut zs = vec![0.5, 1.0, qf / 2.0, qf - ctx.config().epsilon];
    zs.sort_by(f64::total_cmp);
    zs.dedup();
    let big_h = zs.into_iter().map(|z| Ok(Sample { z, value: ctx.big_h_at(z)? })).collect::<Result<Vec<_>>>()?;
    let taylor = ctx.h_taylor();
    let row = Row {
        q: q.get(),
        trunc_degree: ctx.trunc_degree(),
        c_q_product: c.map(|c| c.product),
        c_q_via_h: c.map(|c| c.via_h),
        h_q: ctx.h_at(qf)?,
        big_h,
        tail_bound: ctx.tail_bound(),
        h_taylor: &taylor[..taylor.len().min(11)],
    };
    let mut r = Report::new(&["q", "trunc_degree", "c_q_product", "c_q_via_h", "h_q", "big_h", "tail_bound", "h_taylor"]);
    r.push(&row);
    if let Some(c) = c {
        r.check("C(q) product vs q h(q)/(q-1)!", true, format!("relative difference {:e}", (c.product / c.via_h - 1.0).abs()));
    }
    Ok(r)
}

fn compare(cfg: &RunConfig, q: FieldSize) -> Result<Report> {
    let rule = required(cfg.k_rule, "k-rule")?;
    let ctx = Context::new(q, analytic_config(cfg))?;
    let all = BivariateSeries::build(q, cfg.n_max, SeriesKind::AllMonics);
    let ns: Vec<usize> = (2..=cfg.n_max).collect();
    let report = compare_report(&all, &ns, rule, &ctx, &cfg.regime)?;
    let mut r = Report::new(&["n", "k", "exact", "estimate", "ratio", "regime"]);
    for row in report.rows.iter().filter(|row| cfg.regime_filter.map_or(true, |f| row.regime == f)) {
        r.push(row);
    }
    Ok(r)
}

fn upper_bound(cfg: &RunConfig, q: FieldSize) -> Result<Report> {
    let eta = cfg.eta.unwrap_or_else(|| default_eta(q));
    let nol = BivariateSeries::build(q, cfg.n_max, SeriesKind::NoLinearFactors);
    let mut r = Report::new(&["n", "j", "n_prime", "ratio"]);
    for n in 1..=cfg.n_max {
        for row in upper_bound_diagnostic(&nol, n, eta, cfg.bound_delta)? {
            r.push(&row);
        }
    }
    Ok(r)
}

fn contour_check(cfg: &RunConfig, q: FieldSize) -> Result<Report> {
    let n = required(cfg.n, "n")?;
    let [re, im] = required(cfg.z, "z")?;
    let series = BivariateSeries::build(q, n, cfg.kind);
    let ctx = Context::products_only(q, analytic_config(cfg))?;
    let opts = ContourOptions { nodes: cfg.quadrature_nodes, strict: cfg.strict, ..ContourOptions::default() };
    let check = verify_prop_main_term(&series, &ctx, n, C64::new(re, im), &opts)?;
    let mut r = Report::new(&[
        "q",
        "n",
        "z",
        "kind",
        "radius",
        "nodes",
        "precision_bits",
        "exact",
        "contour_value",
        "mainterm",
        "contour_rel_error",
        "mainterm_ratio",
        "mainterm_rel_diff",
        "passed",
    ]);
    r.push(&check);
    r.check(
        "contour quadrature vs exact coefficient",
        check.passed,
        format!("relative error {:e} (tolerance {:e})", check.contour_rel_error, opts.tolerance),
    );
    Ok(r)
}

fn selftest() -> Report {
    let checks = run_selftest();
    let mut r = Report::new(&["module", "name", "passed", "detail"]);
    for c in &checks {
        r.push(c);
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    let detail = if failed.is_empty() {
        format!("{} of {} passed", checks.len(), checks.len())
    } else {
        format!("failed: {}", failed.join("; "))
    };
    r.check("selftest", failed.is_empty(), detail);
    r
}
