//! Asymptotic estimates for `N(n,k)`, `N'(n,j)` and `M_z(n)`, and reports
//! comparing them with exact counts.
//!
//! Every estimator works in log space and, where the plain double-precision
//! value is finite, recomputes it directly; the two must agree to `1e-9`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::analytic::AnalyticContext;
use crate::bigconv::{ln_biguint, ScaledComplex};
use crate::error::{Error, Result};
use crate::field::FieldSize;
use crate::series::{binomial, decompose, BivariateSeries, SeriesKind};

const DIRECT_TOLERANCE: f64 = 1e-9;

/// A real number stored as a decimal mantissa in `[1, 10)` and a power of
/// ten, so that values like `3^1000 / 1000` stay representable and the text
/// form round-trips exactly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    mantissa: f64,
    exp10: i64,
}

impl Estimate {
    pub const ZERO: Estimate = Estimate { mantissa: 0.0, exp10: 0 };

    pub fn from_ln(ln_abs: f64) -> Self {
        Self::from_ln_signed(ln_abs, false)
    }

    pub fn from_ln_signed(ln_abs: f64, negative: bool) -> Self {
        if ln_abs == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        let log10 = ln_abs / std::f64::consts::LN_10;
        let mut exp = log10.floor();
        let mut mant = 10f64.powf(log10 - exp);
        if mant >= 10.0 {
            mant /= 10.0;
            exp += 1.0;
        } else if mant < 1.0 {
            mant *= 10.0;
            exp -= 1.0;
        }
        Estimate { mantissa: if negative { -mant } else { mant }, exp10: exp as i64 }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::from_ln_signed(x.abs().ln(), x < 0.0)
    }

    /// `ln |x|`.
    pub fn ln_abs(&self) -> f64 {
        self.mantissa.abs().ln() + self.exp10 as f64 * std::f64::consts::LN_10
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa < 0.0
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0.0
    }

    /// The value as a double (infinite past the double range).
    pub fn value(&self) -> f64 {
        let v = self.ln_abs().exp();
        if self.is_negative() {
            -v
        } else {
            v
        }
    }

    /// `exact / self`.
    pub fn ratio_of(&self, exact: &BigUint) -> f64 {
        if exact.is_zero() {
            return 0.0;
        }
        let r = (ln_biguint(exact) - self.ln_abs()).exp();
        if self.is_negative() {
            -r
        } else {
            r
        }
    }

    fn check_direct(self, direct: f64, what: &str) -> Result<Self> {
        if direct.is_finite() && direct != 0.0 && direct.abs() > f64::MIN_POSITIVE {
            let rel = (direct / self.value() - 1.0).abs();
            if rel > DIRECT_TOLERANCE {
                return Err(Error::Consistency(format!(
                    "{what}: log-space value {} and direct value {direct} differ by {rel:e}",
                    self.value()
                )));
            }
        }
        Ok(self)
    }
}

impl fmt::Display for Estimate {
    /// Scientific notation with the shortest mantissa that reads back exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{:?}e{}", self.mantissa, self.exp10)
    }
}

impl FromStr for Estimate {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        let (mant, exp) = match s.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.parse::<i64>().map_err(|e| e.to_string())?),
            None => (s, 0),
        };
        let mant: f64 = mant.parse().map_err(|e: std::num::ParseFloatError| e.to_string())?;
        if !mant.is_finite() {
            return Err(format!("not a finite number: {s:?}"));
        }
        if mant == 0.0 {
            return Ok(Self::ZERO);
        }
        if (1.0..10.0).contains(&mant.abs()) {
            return Ok(Estimate { mantissa: mant, exp10: exp });
        }
        Ok(Self::from_ln_signed(mant.abs().ln() + exp as f64 * std::f64::consts::LN_10, mant < 0.0))
    }
}

impl Serialize for Estimate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Estimate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parameter range a row falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Regime {
    /// `1 <= k <= (q - ε) log n`.
    SmallK,
    /// `ξ(n) log n <= k <= n/B`.
    LargeK,
    OutOfRange,
}

impl Regime {
    pub fn tag(self) -> &'static str {
        match self {
            Regime::SmallK => "SMALL_K",
            Regime::LargeK => "LARGE_K",
            Regime::OutOfRange => "OUT_OF_RANGE",
        }
    }
}

impl FromStr for Regime {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "SMALL_K" | "SMALL" => Ok(Regime::SmallK),
            "LARGE_K" | "LARGE" => Ok(Regime::LargeK),
            "OUT_OF_RANGE" => Ok(Regime::OutOfRange),
            _ => Err(format!("unknown regime {s:?}")),
        }
    }
}

/// The slowly growing function `ξ(n)` bounding the large-`k` range.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum XiChoice {
    /// `ξ(n) = log log n`.
    LogLog,
    Constant(f64),
}

impl XiChoice {
    pub fn eval(self, n: usize) -> f64 {
        match self {
            XiChoice::LogLog => (n as f64).ln().ln(),
            XiChoice::Constant(c) => c,
        }
    }

    pub fn description(self) -> String {
        match self {
            XiChoice::LogLog => "log log n".into(),
            XiChoice::Constant(c) => format!("{c}"),
        }
    }
}

impl FromStr for XiChoice {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.eq_ignore_ascii_case("loglog") {
            return Ok(XiChoice::LogLog);
        }
        s.parse::<f64>()
            .map(XiChoice::Constant)
            .map_err(|_| format!("xi must be 'loglog' or a number, got {s:?}"))
    }
}

/// Regime parameters `ε`, `B`, `ξ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RegimeParams {
    pub epsilon: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub xi: XiChoice,
}

impl Default for RegimeParams {
    fn default() -> Self {
        RegimeParams { epsilon: 0.5, b: 2.0, xi: XiChoice::LogLog }
    }
}

/// Tags `(n, k)`; where the two ranges overlap the small-`k` regime wins.
pub fn classify(q: FieldSize, n: usize, k: usize, params: &RegimeParams) -> Regime {
    if n < 2 || k < 1 {
        return Regime::OutOfRange;
    }
    let ln_n = (n as f64).ln();
    if k as f64 <= (q.as_f64() - params.epsilon) * ln_n {
        return Regime::SmallK;
    }
    let kf = k as f64;
    if kf >= params.xi.eval(n) * ln_n && kf <= n as f64 / params.b {
        return Regime::LargeK;
    }
    Regime::OutOfRange
}

fn ln_factorial(m: u64) -> f64 {
    (2..=m).map(|i| (i as f64).ln()).sum()
}

/// `(q^n/n) H (log n)^{k-1}/(k-1)!` for a given value of `H(k/log n)`.
pub fn sathe_selberg_formula(q: FieldSize, n: usize, k: usize, h_value: f64) -> Result<Estimate> {
    if n < 2 || k < 1 {
        return Err(Error::Domain(format!("needs n >= 2 and k >= 1, got n = {n}, k = {k}")));
    }
    let (qf, nf) = (q.as_f64(), n as f64);
    let ln_n = nf.ln();
    let ln_value = nf * qf.ln() - ln_n + h_value.abs().ln() + (k - 1) as f64 * ln_n.ln()
        - ln_factorial(k as u64 - 1);
    let est = Estimate::from_ln_signed(ln_value, h_value < 0.0);
    let mut fact = 1.0;
    for i in 2..k {
        fact *= i as f64;
    }
    let direct = qf.powi(n as i32) / nf * h_value * ln_n.powi(k as i32 - 1) / fact;
    est.check_direct(direct, "small-k estimate")
}

/// Estimate of `N(n,k)` for `1 <= k <= (q-ε) log n`. With `force`, the range
/// check is skipped (the domain of `H` still applies).
pub fn sathe_selberg_estimate(n: usize, k: usize, ctx: &AnalyticContext<f64>, force: bool) -> Result<Estimate> {
    let q = ctx.q();
    if n < 2 || k < 1 {
        return Err(Error::Domain(format!("needs n >= 2 and k >= 1, got n = {n}, k = {k}")));
    }
    let ln_n = (n as f64).ln();
    let limit = (q.as_f64() - ctx.config().epsilon) * ln_n;
    if !force && k as f64 > limit {
        return Err(Error::Regime(format!("k = {k} exceeds (q - epsilon) log n = {limit:.4}")));
    }
    let h = ctx.big_h_at(k as f64 / ln_n)?;
    sathe_selberg_formula(q, n, k, h)
}

/// `C(q) q^{n-k} k^{q-1} (n-k)^{q-1}` for `ξ(n) log n <= k <= n/B`, `q > 2`.
pub fn large_k_estimate(
    n: usize,
    k: usize,
    ctx: &AnalyticContext<f64>,
    params: &RegimeParams,
    force: bool,
) -> Result<Estimate> {
    let q = ctx.q();
    if q.get() <= 2 {
        return Err(Error::Unsupported("the large-k estimate needs q > 2".into()));
    }
    if k < 1 || k >= n {
        return Err(Error::Domain(format!("needs 1 <= k < n, got n = {n}, k = {k}")));
    }
    let (nf, kf) = (n as f64, k as f64);
    if !force {
        let lo = params.xi.eval(n) * nf.ln();
        let hi = nf / params.b;
        if kf < lo || kf > hi {
            return Err(Error::Regime(format!("k = {k} outside [{lo:.4}, {hi:.4}]")));
        }
    }
    let cq = ctx.c_of_q()?.product;
    let qf = q.as_f64();
    let ln_value = cq.ln() + (nf - kf) * qf.ln() + (qf - 1.0) * (kf.ln() + (nf - kf).ln());
    let direct = cq * qf.powi((n - k) as i32) * kf.powf(qf - 1.0) * (nf - kf).powf(qf - 1.0);
    Estimate::from_ln(ln_value).check_direct(direct, "large-k estimate")
}

/// `(q^n/n) Q_j(log n)` for `1 <= j <= e q log n`.
pub fn n_prime_estimate(n: usize, j: usize, ctx: &AnalyticContext<f64>, force: bool) -> Result<Estimate> {
    let q = ctx.q();
    if n < 2 || j < 1 {
        return Err(Error::Domain(format!("needs n >= 2 and j >= 1, got n = {n}, j = {j}")));
    }
    let (qf, nf) = (q.as_f64(), n as f64);
    let limit = std::f64::consts::E * qf * nf.ln();
    if !force && j as f64 > limit {
        return Err(Error::Regime(format!("j = {j} exceeds e q log n = {limit:.4}")));
    }
    let qj = ctx.q_j(j, nf.ln())?;
    let est = Estimate::from_ln_signed(nf * qf.ln() - nf.ln() + qj.abs().ln(), qj < 0.0);
    est.check_direct(qf.powi(n as i32) / nf * qj, "no-linear estimate")
}

/// `q^n n^{z-1} z H(z)` (all monics) or `q^n n^{z-1} z h(z)` (no linear factors).
pub fn mz_mainterm(n: usize, z: Complex64, ctx: &AnalyticContext<f64>, kind: SeriesKind) -> Result<ScaledComplex> {
    if n < 1 {
        return Err(Error::Domain("needs n >= 1".into()));
    }
    let factor = match kind {
        SeriesKind::AllMonics => ctx.big_h(&z)?,
        SeriesKind::NoLinearFactors => ctx.h(&z)?,
    };
    let (qf, nf) = (ctx.q().as_f64(), n as f64);
    let zm1 = z - 1.0;
    let mant = Complex64::from_polar(1.0, zm1.im * nf.ln()) * z * factor;
    let scaled = ScaledComplex::new(mant, nf * qf.ln() + zm1.re * nf.ln());
    let direct = qf.powi(n as i32) * Complex64::new(nf, 0.0).powc(zm1) * z * factor;
    if direct.norm().is_finite() && direct.norm() > f64::MIN_POSITIVE {
        let rel = (scaled.to_c64() / direct - 1.0).norm();
        if rel > DIRECT_TOLERANCE {
            return Err(Error::Consistency(format!("main term: log-space and direct values differ by {rel:e}")));
        }
    }
    Ok(scaled)
}

/// Tail piece of the decomposition against `q^{n-k} (n-k)^{q-2}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct T2Diagnostic {
    pub n: usize,
    pub k: usize,
    #[serde(with = "crate::serde_big::biguint")]
    pub t2: BigUint,
    pub bound_shape: Estimate,
    pub ratio: f64,
}

pub fn t2_diagnostic(all: &BivariateSeries, no_lin: &BivariateSeries, n: usize, k: usize) -> Result<T2Diagnostic> {
    let q = all.q();
    if q.get() <= 2 {
        return Err(Error::Unsupported("the tail diagnostic needs q > 2".into()));
    }
    let b = decompose(all, no_lin, n, k)?;
    let (qf, m) = (q.as_f64(), (n - k) as f64);
    let bound_shape = Estimate::from_ln(m * qf.ln() + (qf - 2.0) * m.ln());
    let ratio = bound_shape.ratio_of(&b.t2);
    Ok(T2Diagnostic { n, k, t2: b.t2, bound_shape, ratio })
}

/// Both sides of the twisted binomial sum identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistedSum {
    pub n: usize,
    pub k: usize,
    pub y: f64,
    /// Largest `j` in the sum.
    pub j_max: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

/// `Σ_{j <= eqY} binom(q-1+k-j, q-1) q^j Q_j(Y)` against
/// `k^{q-1} q e^{qY} h(q)/(q-1)!`, with `Y = log(n-k)`.
pub fn twisted_binomial_sum(n: usize, k: usize, ctx: &AnalyticContext<f64>) -> Result<TwistedSum> {
    let q = ctx.q();
    if q.get() <= 2 {
        return Err(Error::Unsupported("the twisted binomial sum needs q > 2".into()));
    }
    if k < 1 || k >= n {
        return Err(Error::Domain(format!("needs 1 <= k < n, got n = {n}, k = {k}")));
    }
    let y = ((n - k) as f64).ln();
    if y < 1.0 {
        return Err(Error::Domain(format!("needs log(n - k) >= 1, got {y}")));
    }
    let qf = q.as_f64();
    let j_max = ((std::f64::consts::E * qf * y).floor() as usize).min(k);
    let mut lhs = 0.0;
    for j in 1..=j_max {
        let w = crate::bigconv::biguint_to_f64(&binomial(q.get() - 1 + (k - j) as u64, q.get() - 1));
        lhs += w * qf.powi(j as i32) * ctx.q_j(j, y)?;
    }
    let hq = ctx.h_at(qf)?;
    let fact: f64 = (2..q.get()).map(|i| i as f64).product();
    let rhs = (k as f64).powf(qf - 1.0) * qf * (qf * y).exp() * hq / fact;
    Ok(TwistedSum { n, k, y, j_max, lhs, rhs, ratio: lhs / rhs })
}

/// One row of the upper-bound diagnostic
/// `N'(n,j) (q+η)^j / (q^n n^{q+η-1})`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UpperBoundRow {
    pub n: usize,
    pub j: usize,
    #[serde(with = "crate::serde_big::biguint")]
    pub n_prime: BigUint,
    pub ratio: f64,
}

/// Default `η = (e-1) q`.
pub fn default_eta(q: FieldSize) -> f64 {
    (std::f64::consts::E - 1.0) * q.as_f64()
}

/// Report-only rows for every `j` with `N'(n,j) > 0`; requires
/// `q + η <= q^2 - δ` so that `q + η` lies in the domain of `h`.
pub fn upper_bound_diagnostic(no_lin: &BivariateSeries, n: usize, eta: f64, delta: f64) -> Result<Vec<UpperBoundRow>> {
    if no_lin.kind() != SeriesKind::NoLinearFactors {
        return Err(Error::Config("upper-bound diagnostic needs the no-linear series".into()));
    }
    let qf = no_lin.q().as_f64();
    if !(eta > 0.0 && delta > 0.0 && qf + eta <= qf * qf - delta) {
        return Err(Error::Hypothesis(format!("needs 0 < eta, 0 < delta and q + eta <= q^2 - delta (eta = {eta}, delta = {delta})")));
    }
    let row = no_lin.row(n)?;
    let nf = n as f64;
    let ln_norm = nf * qf.ln() + (qf + eta - 1.0) * nf.ln();
    Ok(row
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| UpperBoundRow {
            n,
            j,
            n_prime: c.clone(),
            ratio: (ln_biguint(c) + j as f64 * (qf + eta).ln() - ln_norm).exp(),
        })
        .collect())
}

/// Which `k` to compare at each `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KRule {
    /// `k = c`.
    Constant(usize),
    /// `k = ⌈n/d⌉`.
    Fraction(usize),
    /// Every `k` in `a..=b`.
    Range(usize, usize),
}

impl KRule {
    pub fn ks(self, n: usize) -> Vec<usize> {
        match self {
            KRule::Constant(c) => vec![c],
            KRule::Fraction(d) => vec![n.div_ceil(d)],
            KRule::Range(a, b) => (a..=b).collect(),
        }
    }
}

impl FromStr for KRule {
    type Err = String;
    /// Accepts `k=C`, `k=n/D` and `k=A..B`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let body = s.trim().strip_prefix("k=").ok_or_else(|| format!("k-rule must start with 'k=', got {s:?}"))?;
        let bad = || format!("cannot parse k-rule {s:?}");
        if let Some(d) = body.strip_prefix("n/") {
            let d: usize = d.parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            return Ok(KRule::Fraction(d));
        }
        if let Some((a, b)) = body.split_once("..") {
            let a: usize = a.parse().map_err(|_| bad())?;
            let b: usize = b.parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            return Ok(KRule::Range(a, b));
        }
        body.parse().map(KRule::Constant).map_err(|_| bad())
    }
}

impl fmt::Display for KRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KRule::Constant(c) => write!(f, "k={c}"),
            KRule::Fraction(d) => write!(f, "k=n/{d}"),
            KRule::Range(a, b) => write!(f, "k={a}..{b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub n: usize,
    pub k: usize,
    #[serde(with = "crate::serde_big::biguint")]
    pub exact: BigUint,
    pub estimate: Option<Estimate>,
    pub ratio: Option<f64>,
    pub regime: Regime,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub q: u64,
    pub k_rule: KRule,
    pub regime_params: RegimeParams,
    pub xi_description: String,
    pub rows: Vec<ComparisonRow>,
}

/// Compares exact counts with the estimate of the row's regime. Rows outside
/// both regimes carry no estimate. `q = 2` has no large-`k` estimate.
pub fn compare_report(
    series: &BivariateSeries,
    n_list: &[usize],
    k_rule: KRule,
    ctx: &AnalyticContext<f64>,
    params: &RegimeParams,
) -> Result<ComparisonReport> {
    let q = series.q();
    if series.kind() != SeriesKind::AllMonics {
        return Err(Error::Config("comparison needs the all-monics series".into()));
    }
    if ctx.q() != q {
        return Err(Error::Config("analytic context built for a different q".into()));
    }
    if let Some(&n) = n_list.iter().max() {
        if n > series.n_max() {
            return Err(Error::Config(format!("exact table built to {} but n = {n} requested; build it first", series.n_max())));
        }
    }
    let mut cells: Vec<(usize, usize)> = n_list.iter().flat_map(|&n| k_rule.ks(n).into_iter().map(move |k| (n, k))).collect();
    cells.sort_unstable();
    cells.dedup();
    let rows: Result<Vec<ComparisonRow>> = cells
        .par_iter()
        .map(|&(n, k)| {
            let exact = series.count(n, k as i64)?;
            let regime = classify(q, n, k, params);
            let estimate = match regime {
                Regime::SmallK => Some(sathe_selberg_estimate(n, k, ctx, false)?),
                Regime::LargeK if q.get() > 2 => Some(large_k_estimate(n, k, ctx, params, false)?),
                _ => None,
            };
            let ratio = estimate.map(|e| e.ratio_of(&exact));
            Ok(ComparisonRow { n, k, exact, estimate, ratio, regime })
        })
        .collect();
    Ok(ComparisonReport {
        q: q.get(),
        k_rule,
        regime_params: *params,
        xi_description: params.xi.description(),
        rows: rows?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(q: u64) -> FieldSize {
        FieldSize::new(q).unwrap()
    }

    #[test]
    fn estimate_display_round_trip() {
        for ln in [0.0, 1.0, 1000.0, -50.0, 3f64.ln() * 1000.0] {
            let e = Estimate::from_ln(ln);
            let back: Estimate = e.to_string().parse().unwrap();
            assert_eq!(back, e);
            assert!((back.ln_abs() - ln).abs() <= 1e-12 * ln.abs().max(1.0), "{ln}");
        }
        let neg = Estimate::from_f64(-2.5);
        assert!(neg.to_string().parse::<Estimate>().unwrap().is_negative());
    }

    #[test]
    fn prime_polynomial_shape_when_h_is_one() {
        let e = sathe_selberg_formula(fs(3), 20, 1, 1.0).unwrap();
        assert!((e.value() / (3f64.powi(20) / 20.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn regime_classification() {
        let p = RegimeParams::default();
        assert_eq!(classify(fs(3), 50, 2, &p), Regime::SmallK);
        assert_eq!(classify(fs(3), 50, 40, &p), Regime::OutOfRange);
        assert_eq!(classify(fs(3), 200, 50, &p), Regime::LargeK);
    }

    #[test]
    fn k_rules() {
        assert_eq!("k=2".parse::<KRule>().unwrap(), KRule::Constant(2));
        assert_eq!("k=n/4".parse::<KRule>().unwrap(), KRule::Fraction(4));
        assert_eq!("k=1..3".parse::<KRule>().unwrap(), KRule::Range(1, 3));
        assert!("n/4".parse::<KRule>().is_err());
        assert!("k=n/0".parse::<KRule>().is_err());
        assert_eq!(KRule::Fraction(4).ks(101), vec![26]);
    }

    #[test]
    fn xi_parsing() {
        assert_eq!("loglog".parse::<XiChoice>().unwrap(), XiChoice::LogLog);
        assert_eq!("2.5".parse::<XiChoice>().unwrap(), XiChoice::Constant(2.5));
        assert!("slow".parse::<XiChoice>().is_err());
    }
}
