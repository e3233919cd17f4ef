//! `ffcount`: exact and asymptotic counts of polynomials over finite fields by
//! number of irreducible factors.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ffcount_core::asymptotics::{KRule, Regime, XiChoice};
use ffcount_core::series::SeriesKind;

use config::{Format, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Verification(_) => 1,
        }
    }
}

impl From<ffcount_core::Error> for CliError {
    fn from(e: ffcount_core::Error) -> Self {
        use ffcount_core::Error as E;
        match e {
            E::Consistency(_) | E::Accuracy(_) => CliError::Verification(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "ffcount", version, about = "Count monic polynomials over F_q by number of irreducible factors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// JSON config file; explicit flags take precedence.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Reject unknown config keys and escalate accuracy warnings.
    #[arg(long)]
    strict: bool,
    /// Worker threads (0 = one per core); falls back to FFCOUNT_THREADS.
    #[arg(long)]
    threads: Option<usize>,
    /// CSV output, to PATH if given.
    #[arg(long, value_name = "PATH", num_args = 0..=1, conflicts_with = "json")]
    csv: Option<Option<PathBuf>>,
    /// JSON output, to PATH if given.
    #[arg(long, value_name = "PATH", num_args = 0..=1)]
    json: Option<Option<PathBuf>>,
    /// Output file.
    #[arg(long, short, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Euler products use irreducibles of degree up to D.
    #[arg(long, value_name = "D")]
    trunc: Option<usize>,
    /// Largest number of polynomials the oracle may enumerate.
    #[arg(long)]
    guard: Option<u64>,
    /// Quadrature nodes.
    #[arg(long)]
    nodes: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Number of monic irreducibles of each degree.
    Pi {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        dmax: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Exact counts N(n,k).
    Table {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long)]
        no_linear: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Histogram of factor counts by exhaustive factorization.
    Oracle {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        no_linear: bool,
        /// Compare against the generating-function counts.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        common: Common,
    },
    /// N(n,k) split by the number of non-linear irreducible factors.
    Decompose {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// C(q), h, H and the Taylor coefficients of h.
    Constants {
        #[arg(long)]
        q: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Exact counts against the asymptotic estimates.
    Compare {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        nmax: Option<usize>,
        /// `k=C`, `k=n/D` or `k=A..B`.
        #[arg(long, value_parser = parse_k_rule)]
        k_rule: Option<KRule>,
        /// Keep only rows in this regime (small or large).
        #[arg(long, value_parser = parse_regime)]
        regime: Option<Regime>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long = "B")]
        b: Option<f64>,
        /// `loglog` or a constant.
        #[arg(long, value_parser = parse_xi)]
        xi: Option<XiChoice>,
        #[command(flatten)]
        common: Common,
    },
    /// Report-only upper-bound ratios for the no-linear counts.
    UpperBound {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        nmax: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Exact coefficient, circle quadrature and main term at one (n, z).
    ContourCheck {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        n: Option<usize>,
        /// `RE` or `RE,IM`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_z)]
        z: Option<[f64; 2]>,
        #[arg(long, value_parser = parse_kind)]
        kind: Option<SeriesKind>,
        #[command(flatten)]
        common: Common,
    },
    /// Built-in smoke checks of every module.
    Selftest {
        #[command(flatten)]
        common: Common,
    },
}

fn parse_k_rule(s: &str) -> Result<KRule, String> {
    s.parse()
}

fn parse_regime(s: &str) -> Result<Regime, String> {
    match s.parse()? {
        Regime::OutOfRange => Err("regime filter must be small or large".into()),
        r => Ok(r),
    }
}

fn parse_xi(s: &str) -> Result<XiChoice, String> {
    s.parse()
}

fn parse_kind(s: &str) -> Result<SeriesKind, String> {
    match s.to_ascii_lowercase().as_str() {
        "all" => Ok(SeriesKind::AllMonics),
        "nolinear" | "no-linear" => Ok(SeriesKind::NoLinearFactors),
        _ => Err(format!("kind must be all or nolinear, got {s:?}")),
    }
}

fn parse_z(s: &str) -> Result<[f64; 2], String> {
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("cannot parse z = {s:?}"));
    let z = match s.split_once(',') {
        Some((re, im)) => [num(re)?, num(im)?],
        None => [num(s)?, 0.0],
    };
    if z.iter().all(|x| x.is_finite()) {
        Ok(z)
    } else {
        Err(format!("z must be finite, got {s:?}"))
    }
}

fn set<T>(slot: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *slot = v;
    }
}

fn set_opt<T>(slot: &mut Option<T>, v: Option<T>) {
    if v.is_some() {
        *slot = v;
    }
}

/// Defaults, then the config file, then flags.
fn resolve(name: &str, common: &Common, apply: impl FnOnce(&mut RunConfig)) -> Result<RunConfig, CliError> {
    let (mut cfg, file_threads) = match &common.config {
        Some(p) => {
            let l = RunConfig::load(p, common.strict)?;
            (l.config, l.sets_threads)
        }
        None => (RunConfig::default(), false),
    };
    cfg.command = name.into();
    cfg.strict |= common.strict;
    set(&mut cfg.trunc_degree, common.trunc);
    set(&mut cfg.oracle_guard, common.guard);
    set_opt(&mut cfg.quadrature_nodes, common.nodes);
    match (&common.csv, &common.json) {
        (Some(p), _) => {
            cfg.format = Some(Format::Csv);
            set_opt(&mut cfg.output, p.clone());
        }
        (_, Some(p)) => {
            cfg.format = Some(Format::Json);
            set_opt(&mut cfg.output, p.clone());
        }
        _ => {}
    }
    set_opt(&mut cfg.output, common.out.clone());
    match common.threads {
        Some(t) => cfg.threads = t,
        None if !file_threads => set(&mut cfg.threads, config::threads_from_env()?),
        None => {}
    }
    apply(&mut cfg);
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (cfg, default_format) = match cli.command {
        Command::Pi { q, dmax, common } => (
            resolve("pi", &common, |c| {
                set(&mut c.q, q);
                set(&mut c.n_max, dmax);
            })?,
            Format::Csv,
        ),
        Command::Table { q, nmax, kmax, no_linear, common } => (
            resolve("table", &common, |c| {
                set(&mut c.q, q);
                set(&mut c.n_max, nmax);
                set_opt(&mut c.k_max, kmax);
                if no_linear {
                    c.kind = SeriesKind::NoLinearFactors;
                }
            })?,
            Format::Csv,
        ),
        Command::Oracle { q, n, no_linear, verify, common } => (
            resolve("oracle", &common, |c| {
                set(&mut c.q, q);
                set_opt(&mut c.n, n);
                c.verify |= verify;
                if no_linear {
                    c.kind = SeriesKind::NoLinearFactors;
                }
            })?,
            Format::Csv,
        ),
        Command::Decompose { q, n, k, common } => (
            resolve("decompose", &common, |c| {
                set(&mut c.q, q);
                set_opt(&mut c.n, n);
                set_opt(&mut c.k, k);
            })?,
            Format::Csv,
        ),
        Command::Constants { q, common } => (resolve("constants", &common, |c| set(&mut c.q, q))?, Format::Json),
        Command::Compare { q, nmax, k_rule, regime, epsilon, b, xi, common } => (
            resolve("compare", &common, |c| {
                set(&mut c.q, q);
                set(&mut c.n_max, nmax);
                set_opt(&mut c.k_rule, k_rule);
                set_opt(&mut c.regime_filter, regime);
                set(&mut c.regime.epsilon, epsilon);
                set(&mut c.regime.b, b);
                set(&mut c.regime.xi, xi);
            })?,
            Format::Csv,
        ),
        Command::UpperBound { q, eta, delta, nmax, common } => (
            resolve("upper-bound", &common, |c| {
                set(&mut c.q, q);
                set_opt(&mut c.eta, eta);
                set(&mut c.bound_delta, delta);
                set(&mut c.n_max, nmax);
            })?,
            Format::Csv,
        ),
        Command::ContourCheck { q, n, z, kind, common } => (
            resolve("contour-check", &common, |c| {
                set(&mut c.q, q);
                set_opt(&mut c.n, n);
                set_opt(&mut c.z, z);
                set(&mut c.kind, kind);
            })?,
            Format::Json,
        ),
        Command::Selftest { common } => (resolve("selftest", &common, |_| {})?, Format::Csv),
    };
    let mut cfg = cfg;
    let format = *cfg.format.get_or_insert(default_format);

    rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;

    let report = commands::execute(&cfg)?;
    report::emit(&report, &cfg, format, cfg.output.as_deref())?;
    let failed: Vec<String> = report.checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failed.join("\n")))
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ffcount: {e}");
            ExitCode::from(e.code())
        }
    }
}
