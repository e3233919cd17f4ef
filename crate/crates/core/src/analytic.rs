//! Euler products over monic irreducibles and the functions built on them.
//!
//! With `π(d)` irreducibles of degree `d`:
//!
//! * `ζ(u) = 1/(1 - qu)`
//! * `F_z(u) = ∏_d [(1 - z u^d)^{-1} (1 - u^d)^z]^{π(d)}`
//! * `F̃_z(u) = (1 - u)^{qz} ∏_{d≥2} [(1 - z u^d)^{-1} (1 - u^d)^z]^{π(d)}`
//! * `H(z) = F_z(1/q) / Γ(z+1)` and `h(z) = F̃_z(1/q) / Γ(z+1)`
//! * `C(q) = q h(q) / (q-1)!`
//!
//! Products are summed in log space over `d <= D` and exponentiated once.
//!
//! Tail bound. For `w = u^d` the log of one factor is
//! `z log(1-w) - log(1-zw) = Σ_{m≥2} (z^m - z) w^m / m`, so
//! `|term| <= |zw|^2 / (2(1-|zw|)) + |z||w|^2 / (2(1-|w|))`.
//! Multiplying by `π(d) <= q^d/d` and summing over `d > D` bounds the
//! discarded part of the log-product. The series over `d` is summed until
//! its terms are negligible and closed with a geometric remainder of ratio
//! `q|u|^2`.

use num_complex::Complex;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSize;
use crate::irreducibles::IrreducibleTable;
use crate::mp::{with_precision, MpFloat};
use crate::scalar::{c, cabs_f64, cexp, cscale, ln_1m, Real};

/// Settings for Euler-product evaluation and the cached Taylor expansion of `h`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AnalyticConfig {
    /// Products are cut at irreducibles of degree `<= trunc_degree`.
    pub trunc_degree: usize,
    /// Domain margin for `H`: `|z| <= q - epsilon`.
    pub epsilon: f64,
    /// Domain margin for `h`: `|z| <= q^2 - delta`.
    pub delta: f64,
    /// Number of cached Taylor coefficients of `h` at 0.
    pub taylor_terms: usize,
    /// Quadrature nodes for the Taylor coefficients; default `max(8 m, 1024)`.
    pub taylor_nodes: Option<usize>,
    /// Working precision (bits) of the Taylor quadrature.
    pub taylor_precision: usize,
}

impl Default for AnalyticConfig {
    fn default() -> Self {
        AnalyticConfig {
            trunc_degree: 40,
            epsilon: 0.5,
            delta: 0.5,
            taylor_terms: 64,
            taylor_nodes: None,
            taylor_precision: 192,
        }
    }
}

/// Both evaluations of `C(q)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CConstant {
    /// From the displayed Euler product.
    pub product: f64,
    /// From `q h(q) / (q-1)!`.
    pub via_h: f64,
}

/// Truncated Euler products and cached derived quantities for one `q`.
#[derive(Clone, Debug)]
pub struct AnalyticContext<T: Real = f64> {
    q: FieldSize,
    config: AnalyticConfig,
    pi_table: IrreducibleTable,
    pi: Vec<T>,
    /// `log(1 - q^{-d})`.
    log1m_inv_q: Vec<T>,
    /// `q^{-d}`.
    inv_q_pow: Vec<T>,
    tail_bound: f64,
    h_taylor: Vec<f64>,
    h_taylor_imag_residue: f64,
    c_q: Option<CConstant>,
}

/// Rigorous bound on the discarded log-product `Σ_{d>D}` at `|u|`, `|z|`,
/// given `π(d) <= q^d / d`. Infinite when the tail does not converge.
pub fn log_tail_bound(q: FieldSize, trunc: usize, u_abs: f64, z_abs: f64) -> f64 {
    let qf = q.as_f64();
    let ratio = qf * u_abs * u_abs;
    if ratio >= 1.0 || u_abs >= 1.0 {
        return f64::INFINITY;
    }
    let mut sum = 0.0;
    let mut last = 0.0;
    for d in trunc + 1..trunc + 5000 {
        let w = u_abs.powi(d as i32);
        if z_abs * w >= 1.0 {
            return f64::INFINITY;
        }
        let factor = (d as f64 * qf.ln() - (d as f64).ln()).exp();
        let zw = z_abs * w;
        let term = factor * (zw * zw / (2.0 * (1.0 - zw)) + z_abs * w * w / (2.0 * (1.0 - w)));
        sum += term;
        last = term;
        if term <= 1e-30 * sum || term == 0.0 {
            break;
        }
    }
    // Terms decay at least geometrically with ratio q|u|^2 once |z u^d| is small.
    sum + last * ratio / (1.0 - ratio)
}

impl<T: Real> AnalyticContext<T> {
    /// Euler-product data only, without the Taylor expansion of `h`.
    pub fn products_only(q: FieldSize, config: AnalyticConfig) -> Result<Self> {
        if config.trunc_degree < 2 {
            return Err(Error::Config("trunc_degree must be at least 2".into()));
        }
        if !(config.epsilon > 0.0 && config.epsilon < q.as_f64()) {
            return Err(Error::Config(format!("epsilon must lie in (0, q), got {}", config.epsilon)));
        }
        let qf = q.as_f64();
        if !(config.delta > 0.0 && config.delta < qf * qf) {
            return Err(Error::Config(format!("delta must lie in (0, q^2), got {}", config.delta)));
        }
        let d_max = config.trunc_degree;
        let pi_table = IrreducibleTable::counts(q, d_max);
        let pi: Vec<T> = pi_table.all_counts().iter().map(T::from_biguint).collect();
        let inv_q = T::one() / T::from_u64(q.get());
        let mut inv_q_pow = vec![T::one()];
        let mut log1m_inv_q = vec![T::zero()];
        for d in 1..=d_max {
            let p = inv_q_pow[d - 1].clone() * inv_q.clone();
            log1m_inv_q.push(ln_1m(&Complex::new(p.clone(), T::zero())).re);
            inv_q_pow.push(p);
        }
        let inv = 1.0 / qf;
        let tail_bound = log_tail_bound(q, d_max, inv, qf - config.epsilon)
            .max(log_tail_bound(q, d_max, inv, qf * qf - config.delta));
        let mut ctx = AnalyticContext {
            q,
            config,
            pi_table,
            pi,
            log1m_inv_q,
            inv_q_pow,
            tail_bound,
            h_taylor: Vec::new(),
            h_taylor_imag_residue: 0.0,
            c_q: None,
        };
        if q.get() > 2 {
            ctx.c_q = Some(ctx.compute_c_of_q()?);
        }
        Ok(ctx)
    }

    /// Full context, including the Taylor coefficients of `h` at 0.
    pub fn new(q: FieldSize, config: AnalyticConfig) -> Result<Self> {
        let mut ctx = Self::products_only(q, config)?;
        let (coeffs, residue) = h_taylor_coeffs(q, &ctx.config, ctx.config.taylor_terms)?;
        ctx.h_taylor = coeffs;
        ctx.h_taylor_imag_residue = residue;
        Ok(ctx)
    }

    pub fn q(&self) -> FieldSize {
        self.q
    }

    pub fn config(&self) -> &AnalyticConfig {
        &self.config
    }

    pub fn trunc_degree(&self) -> usize {
        self.config.trunc_degree
    }

    pub fn pi_table(&self) -> &IrreducibleTable {
        &self.pi_table
    }

    /// Bound on the discarded log-product for `H` on `|z| <= q - ε` and `h`
    /// on `|z| <= q^2 - δ`, both at `u = 1/q`.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    /// `h^{(m)}(0)/m!` for `m < taylor_terms`.
    pub fn h_taylor(&self) -> &[f64] {
        &self.h_taylor
    }

    /// Largest imaginary part discarded from the Taylor quadrature.
    pub fn h_taylor_imag_residue(&self) -> f64 {
        self.h_taylor_imag_residue
    }

    fn qt(&self) -> T {
        T::from_u64(self.q.get())
    }

    /// `ζ(u) = 1/(1 - qu)`.
    pub fn zeta(&self, u: &Complex<T>) -> Result<Complex<T>> {
        let denom = Complex::new(T::one(), T::zero()) - cscale(u, &self.qt());
        if denom.re.is_zero() && denom.im.is_zero() {
            return Err(Error::Pole { function: "zeta", at: format!("u = 1/{}", self.q) });
        }
        Ok(Complex::new(T::one(), T::zero()) / denom)
    }

    /// `Σ_{d_start<=d<=D} π(d) [z log(1-u^d) - log(1-z u^d)]`.
    fn log_euler(&self, u: &Complex<T>, z: &Complex<T>, d_start: usize) -> Complex<T> {
        let mut sum = Complex::zero();
        let mut ud = Complex::new(T::one(), T::zero());
        for d in 1..=self.config.trunc_degree {
            ud = ud * u.clone();
            if d < d_start {
                continue;
            }
            let term = z.clone() * ln_1m(&ud) - ln_1m(&(z.clone() * ud.clone()));
            sum = sum + cscale(&term, &self.pi[d]);
        }
        sum
    }

    /// [`log_euler`](Self::log_euler) at `u = 1/q`, using cached logarithms.
    fn log_euler_inverse_q(&self, z: &Complex<T>, d_start: usize) -> Complex<T> {
        let mut sum = Complex::zero();
        for d in d_start..=self.config.trunc_degree {
            let l = Complex::new(self.log1m_inv_q[d].clone(), T::zero());
            let term = z.clone() * l - ln_1m(&cscale(z, &self.inv_q_pow[d]));
            sum = sum + cscale(&term, &self.pi[d]);
        }
        sum
    }

    fn check_region_all(&self, u: &Complex<T>, z: &Complex<T>) -> Result<()> {
        let (au, az, qf) = (cabs_f64(u), cabs_f64(z), self.q.as_f64());
        if az >= qf {
            return Err(Error::Domain(format!("|z| < q violated: |z| = {az}")));
        }
        if az * au >= 1.0 {
            return Err(Error::Domain(format!("|u| < 1/|z| violated: |u| = {au}, |z| = {az}")));
        }
        if au * au * qf >= 1.0 {
            return Err(Error::Domain(format!("|u| < q^(-1/2) violated: |u| = {au}")));
        }
        Ok(())
    }

    fn check_region_no_linear(&self, u: &Complex<T>, z: &Complex<T>) -> Result<()> {
        let (au, az, qf) = (cabs_f64(u), cabs_f64(z), self.q.as_f64());
        if az >= qf * qf {
            return Err(Error::Domain(format!("|z| < q^2 violated: |z| = {az}")));
        }
        if au * au * az >= 1.0 {
            return Err(Error::Domain(format!("|u|^2 < 1/|z| violated: |u| = {au}, |z| = {az}")));
        }
        if au * au * qf >= 1.0 {
            return Err(Error::Domain(format!("|u| < q^(-1/2) violated: |u| = {au}")));
        }
        Ok(())
    }

    /// Pointwise convergence of the product over degrees `>= d_start`:
    /// `|z u^d_start| < 1` and `q|u|^2 < 1`. Unlike the regions above this does
    /// not bound `|z|`.
    fn check_convergence(&self, u: &Complex<T>, z: &Complex<T>, d_start: i32) -> Result<()> {
        let (au, az, qf) = (cabs_f64(u), cabs_f64(z), self.q.as_f64());
        if az * au.powi(d_start) >= 1.0 {
            return Err(Error::Domain(format!("|z u^{d_start}| < 1 violated: |u| = {au}, |z| = {az}")));
        }
        if au * au * qf >= 1.0 {
            return Err(Error::Domain(format!("|u| < q^(-1/2) violated: |u| = {au}")));
        }
        Ok(())
    }

    /// Truncated `F_z(u)`.
    pub fn f_z(&self, u: &Complex<T>, z: &Complex<T>) -> Result<Complex<T>> {
        self.check_region_all(u, z)?;
        Ok(cexp(&self.log_euler(u, z, 1)))
    }

    /// Truncated `F̃_z(u)`.
    pub fn f_tilde_z(&self, u: &Complex<T>, z: &Complex<T>) -> Result<Complex<T>> {
        self.check_region_no_linear(u, z)?;
        Ok(cexp(&self.log_f_tilde(u, z)))
    }

    fn log_f_tilde(&self, u: &Complex<T>, z: &Complex<T>) -> Complex<T> {
        let lin = cscale(&(z.clone() * ln_1m(u)), &self.qt());
        lin + self.log_euler(u, z, 2)
    }

    /// Bound on the truncation error of `log F_z(u)` (or `log F̃_z(u)`).
    pub fn tail_bound_at(&self, u: &Complex<T>, z: &Complex<T>) -> f64 {
        log_tail_bound(self.q, self.config.trunc_degree, cabs_f64(u), cabs_f64(z))
    }

    /// `ζ(u)^z F_z(u)`, the generating function `G_z(u)`, with `ζ^z` on the
    /// principal branch (requires `Re(1 - qu) > 0`). Any `z` is accepted as
    /// long as the product converges at `(u, z)`.
    pub fn g_z(&self, u: &Complex<T>, z: &Complex<T>) -> Result<Complex<T>> {
        let base = Complex::new(T::one(), T::zero()) - cscale(u, &self.qt());
        if base.re <= T::zero() {
            return Err(Error::BranchCut(format!("Re(1 - qu) <= 0 at |u| = {}", cabs_f64(u))));
        }
        let log_zeta_z = -(z.clone() * crate::scalar::cln(&base));
        self.check_convergence(u, z, 1)?;
        Ok(cexp(&(log_zeta_z + self.log_euler(u, z, 1))))
    }

    /// `ζ(u)^z F̃_z(u)`, the generating function `G̃_z(u)`.
    pub fn g_tilde_z(&self, u: &Complex<T>, z: &Complex<T>) -> Result<Complex<T>> {
        let base = Complex::new(T::one(), T::zero()) - cscale(u, &self.qt());
        if base.re <= T::zero() {
            return Err(Error::BranchCut(format!("Re(1 - qu) <= 0 at |u| = {}", cabs_f64(u))));
        }
        let log_zeta_z = -(z.clone() * crate::scalar::cln(&base));
        self.check_convergence(u, z, 2)?;
        Ok(cexp(&(log_zeta_z + self.log_f_tilde(u, z))))
    }

    fn check_abs(&self, z: &Complex<T>, limit: f64, what: &str) -> Result<()> {
        let az = cabs_f64(z);
        if az > limit * (1.0 + 1e-12) {
            return Err(Error::Domain(format!("{what}: |z| = {az} exceeds {limit}")));
        }
        Ok(())
    }

    /// `H(z) = F_z(1/q)/Γ(z+1)` for `|z| <= q - ε`.
    pub fn big_h(&self, z: &Complex<T>) -> Result<Complex<T>> {
        self.check_abs(z, self.q.as_f64() - self.config.epsilon, "H needs |z| <= q - epsilon")?;
        let one = Complex::new(T::one(), T::zero());
        let rg = T::recip_gamma(&(z.clone() + one));
        Ok(cexp(&self.log_euler_inverse_q(z, 1)) * rg)
    }

    /// `h(z) = F̃_z(1/q)/Γ(z+1)` for `|z| <= q^2 - δ`.
    pub fn h(&self, z: &Complex<T>) -> Result<Complex<T>> {
        let qf = self.q.as_f64();
        self.check_abs(z, qf * qf - self.config.delta, "h needs |z| <= q^2 - delta")?;
        Ok(self.h_unchecked(z))
    }

    fn h_unchecked(&self, z: &Complex<T>) -> Complex<T> {
        let one = Complex::new(T::one(), T::zero());
        let lin = cscale(z, &(self.qt() * self.log1m_inv_q[1].clone()));
        let rg = T::recip_gamma(&(z.clone() + one));
        cexp(&(lin + self.log_euler_inverse_q(z, 2))) * rg
    }

    /// `Q_j(X) = Σ_{m=0}^{j-1} h_taylor[m] X^{j-1-m} / (j-1-m)!`.
    pub fn q_j(&self, j: usize, x: f64) -> Result<f64> {
        if j == 0 {
            return Err(Error::Domain("Q_j needs j >= 1".into()));
        }
        if j > self.h_taylor.len() {
            return Err(Error::Config(format!(
                "Q_{j} needs {j} Taylor coefficients of h, {} cached; raise taylor_terms",
                self.h_taylor.len()
            )));
        }
        // x^l / l! for l = 0..j-1
        let mut powers = Vec::with_capacity(j);
        let mut p = 1.0;
        for l in 0..j {
            if l > 0 {
                p *= x / l as f64;
            }
            powers.push(p);
        }
        Ok((0..j).map(|m| self.h_taylor[m] * powers[j - 1 - m]).sum())
    }

    /// `C(q)` from the product formula, cross-checked against `q h(q)/(q-1)!`.
    pub fn c_of_q(&self) -> Result<CConstant> {
        self.c_q.ok_or_else(|| Error::Unsupported("C(q) is defined for q > 2 only".into()))
    }

    fn compute_c_of_q(&self) -> Result<CConstant> {
        let q = self.q.get();
        let qt = self.qt();
        // log (q-1)!
        let mut log_fact = T::zero();
        for i in 2..q {
            log_fact = log_fact + T::from_u64(i).ln();
        }
        let mut log_c = -(log_fact.clone() + log_fact) + qt.clone() * qt.clone() * self.log1m_inv_q[1].clone();
        for d in 2..=self.config.trunc_degree {
            let term = -self.log1m_inv_q[d - 1].clone() + qt.clone() * self.log1m_inv_q[d].clone();
            log_c = log_c + self.pi[d].clone() * term;
        }
        let product = log_c.exp().to_f64();

        let hq = self.h_unchecked(&c::<T>(q as f64, 0.0));
        let mut fact = 1.0;
        for i in 2..q {
            fact *= i as f64;
        }
        let via_h = q as f64 * hq.re.to_f64() / fact;
        let tol = 1e-10f64.max(1e3 * T::epsilon().to_f64()) + 4.0 * self.tail_bound;
        if !((product / via_h - 1.0).abs() <= tol) {
            return Err(Error::Consistency(format!(
                "C({q}): product formula {product} vs q h(q)/(q-1)! {via_h}"
            )));
        }
        Ok(CConstant { product, via_h })
    }
}

impl AnalyticContext<f64> {
    /// Convenience evaluator on plain doubles.
    pub fn h_at(&self, z: f64) -> Result<f64> {
        self.h(&Complex::new(z, 0.0)).map(|v| v.re)
    }

    pub fn big_h_at(&self, z: f64) -> Result<f64> {
        self.big_h(&Complex::new(z, 0.0)).map(|v| v.re)
    }
}

/// Cauchy-integral Taylor coefficients `h^{(m)}(0)/m!`, `m < m_max`, on the
/// circle `|z| = min(2.9q, q^2 - δ)/1.05`, computed in multiprecision.
/// Returns the real parts and the largest discarded imaginary part.
pub fn h_taylor_coeffs(q: FieldSize, config: &AnalyticConfig, m_max: usize) -> Result<(Vec<f64>, f64)> {
    if m_max == 0 {
        return Ok((Vec::new(), 0.0));
    }
    let nodes = config.taylor_nodes.unwrap_or((8 * m_max).max(1024));
    if nodes < 8 * m_max {
        return Err(Error::Accuracy(format!(
            "{nodes} quadrature nodes cannot resolve {m_max} Taylor coefficients (need {})",
            8 * m_max
        )));
    }
    let qf = q.as_f64();
    let rho = (2.9 * qf).min(qf * qf - config.delta) / 1.05;
    let (coeffs, residue) = with_precision(config.taylor_precision, || -> Result<(Vec<f64>, f64)> {
        let ctx = AnalyticContext::<MpFloat>::products_only(q, config.clone())?;
        let two_pi = MpFloat::pi() * MpFloat::from_f64(2.0);
        let roots: Vec<Complex<MpFloat>> = (0..nodes)
            .map(|j| {
                let t = two_pi.clone() * MpFloat::from_u64(j as u64) / MpFloat::from_u64(nodes as u64);
                Complex::new(t.cos(), t.sin())
            })
            .collect();
        let rho_mp = MpFloat::from_f64(rho);
        let prec = config.taylor_precision;
        let values: Vec<Complex<MpFloat>> = roots
            .par_iter()
            .map(|w| with_precision(prec, || ctx.h_unchecked(&cscale(w, &rho_mp))))
            .collect();
        let mut coeffs = Vec::with_capacity(m_max);
        let mut residue: f64 = 0.0;
        let inv_n = MpFloat::one() / MpFloat::from_u64(nodes as u64);
        let mut rho_pow = MpFloat::one();
        for m in 0..m_max {
            let mut acc = Complex::new(MpFloat::zero(), MpFloat::zero());
            for (j, v) in values.iter().enumerate() {
                let idx = (nodes - (j * m) % nodes) % nodes;
                acc = acc + v.clone() * roots[idx].clone();
            }
            let scale = inv_n.clone() / rho_pow.clone();
            let a = cscale(&acc, &scale);
            residue = residue.max(a.im.to_f64().abs());
            coeffs.push(a.re.to_f64());
            rho_pow = rho_pow * rho_mp.clone();
        }
        Ok((coeffs, residue))
    })?;
    if residue > 1e-10 {
        return Err(Error::Accuracy(format!("Taylor coefficients of h have imaginary residue {residue:e}")));
    }
    Ok((coeffs, residue))
}
