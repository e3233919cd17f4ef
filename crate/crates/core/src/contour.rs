//! Contour integrals: Cauchy coefficient extraction on circles and the
//! Hankel-loop representation of `1/Γ`.

use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{FromPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{AnalyticConfig, AnalyticContext};
use crate::asymptotics::mz_mainterm;
use crate::bigconv::ScaledComplex;
use crate::error::{Error, Result};
use crate::gamma::recip_gamma;
use crate::mp::{precision, with_precision, MpFloat};
use crate::quadrature::gauss_legendre;
use crate::scalar::{cscale, Real};
use crate::series::{BivariateSeries, SeriesKind};

/// `[u^n] f` by the trapezoidal rule on `|u| = r`:
/// `(1/N) Σ_j f(r ω^j) (r ω^j)^{-n}` with `ω = e^{2πi/N}`.
///
/// Fewer than `4n` nodes is an error in strict mode and a warning otherwise.
/// Node evaluations may run in parallel; the sum is taken in node order.
pub fn circle_coefficient<T, F>(f: F, n: usize, r: f64, nodes: usize, strict: bool) -> Result<Complex<T>>
where
    T: Real,
    F: Fn(&Complex<T>) -> Result<Complex<T>> + Sync,
{
    if nodes == 0 {
        return Err(Error::Accuracy("circle quadrature needs at least one node".into()));
    }
    if nodes < 4 * n {
        let msg = format!("{nodes} nodes for coefficient {n}; at least {} recommended", 4 * n);
        if strict {
            return Err(Error::Accuracy(msg));
        }
        log::warn!("{msg}");
    }
    let prec = precision();
    let roots: Vec<Complex<T>> = (0..nodes)
        .into_par_iter()
        .map(|j| {
            with_precision(prec, || {
                let t = T::pi() * T::from_f64(2.0) * T::from_u64(j as u64) / T::from_u64(nodes as u64);
                Complex::new(t.cos(), t.sin())
            })
        })
        .collect();
    let rt = T::from_f64(r);
    let values: Vec<Result<Complex<T>>> = (0..nodes)
        .into_par_iter()
        .map(|j| {
            with_precision(prec, || {
                let u = cscale(&roots[j], &rt);
                let v = f(&u)?;
                // ω^{-jn} = conj(ω^{jn mod N})
                let w = &roots[(j * (n % nodes)) % nodes];
                Ok(v * Complex::new(w.re.clone(), -w.im.clone()))
            })
        })
        .collect();
    let mut sum = Complex::new(T::zero(), T::zero());
    for v in values {
        sum = sum + v?;
    }
    let scale = rt.powi(-(n as i32)) / T::from_u64(nodes as u64);
    Ok(cscale(&sum, &scale))
}

/// Clockwise Hankel loop: in along the upper side of the negative axis from
/// `-nδ` to `-1`, clockwise around the unit circle, out along the lower side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HankelContour {
    pub n: usize,
    pub delta: f64,
    pub arc_radius: f64,
    pub nodes_arc: usize,
    /// Gauss–Legendre points per ray panel.
    pub nodes_ray: usize,
    /// Imaginary offset realizing the two sides of the cut.
    pub offset: f64,
}

impl HankelContour {
    pub fn new(n: usize, delta: f64) -> Self {
        HankelContour { n, delta, arc_radius: 1.0, nodes_arc: 256, nodes_ray: 64, offset: 1e-8 }
    }

    /// Dyadic panels covering `[arc_radius, nδ]`.
    fn panels(&self) -> Vec<(f64, f64)> {
        let end = self.n as f64 * self.delta;
        let mut out = Vec::new();
        let mut a = self.arc_radius;
        while a < end {
            let b = (2.0 * a).min(end);
            out.push((a, b));
            a = b;
        }
        out
    }
}

/// Default bound on `|z|` for [`hankel_integral`].
pub const HANKEL_Z_MAX: f64 = 10.0;

/// `(1/2πi) ∫ w^z (1 - w/n)^{-n-1} dw` over the Hankel loop, which tends to
/// `-1/Γ(-z)` as `n` grows.
pub fn hankel_integral(z: Complex64, contour: &HankelContour, z_max: f64) -> Result<Complex64> {
    if z.norm() > z_max {
        return Err(Error::Domain(format!("|z| = {} exceeds the bound {z_max}", z.norm())));
    }
    if contour.n == 0 || contour.delta <= 0.0 || contour.arc_radius <= 0.0 {
        return Err(Error::Config("Hankel contour needs n >= 1, delta > 0, radius > 0".into()));
    }
    let nf = contour.n as f64;
    let g = |w: Complex64| -> Result<Complex64> {
        if w.im.abs() < 1e-14 && w.re < 0.0 {
            return Err(Error::BranchCut(format!("node {w} lies on the cut of w^z")));
        }
        Ok(w.powc(z) * (-(nf + 1.0) * (1.0 - w / nf).ln()).exp())
    };

    let (gx, gw) = gauss_legendre(contour.nodes_ray);
    let mut rays = Complex64::zero();
    for (a, b) in contour.panels() {
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        for (x, w) in gx.iter().zip(&gw) {
            let t = mid + half * x;
            // upper side inward (dw = -dx, x decreasing) minus lower side outward
            let upper = g(Complex64::new(-t, contour.offset))?;
            let lower = g(Complex64::new(-t, -contour.offset))?;
            rays += half * w * (upper - lower);
        }
    }

    let arc = |shifted: bool| -> Result<Complex64> {
        let m = contour.nodes_arc;
        let h = 2.0 * std::f64::consts::PI / m as f64;
        let mut s = Complex64::zero();
        if shifted {
            // midpoint rule: θ = π - (j + 1/2) h
            for j in 0..m {
                let theta = std::f64::consts::PI - (j as f64 + 0.5) * h;
                let w = Complex64::from_polar(contour.arc_radius, theta);
                s += g(w)? * Complex64::i() * w;
            }
        } else {
            for j in 0..=m {
                let theta = std::f64::consts::PI - j as f64 * h;
                let w = Complex64::from_polar(contour.arc_radius, theta);
                let weight = if j == 0 || j == m { 0.5 } else { 1.0 };
                s += weight * g(w)? * Complex64::i() * w;
            }
        }
        // θ runs from π down to -π
        Ok(-s * h)
    };
    let arc_value = match arc(false) {
        Err(Error::BranchCut(_)) => arc(true)?,
        other => other?,
    };
    Ok((rays + arc_value) / (2.0 * std::f64::consts::PI * Complex64::i()))
}

/// `-1/Γ(-z)`, the limit of [`hankel_integral`].
pub fn hankel_limit(z: Complex64) -> Complex64 {
    -recip_gamma(&(-z))
}

/// Settings for [`verify_prop_main_term`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ContourOptions {
    /// Circle radius; default `1/(2q)`.
    pub radius: Option<f64>,
    /// Quadrature nodes; default `4n + 64`, enough that aliasing (`(qr)^nodes`) stays below `1e-18`.
    pub nodes: Option<usize>,
    /// Working precision in bits; default enough to resolve the cancellation
    /// `r^{-n}` against a result of size 1.
    pub precision: Option<usize>,
    pub strict: bool,
    /// Bound asserted on `|contour - exact| / |exact|`.
    pub tolerance: f64,
}

impl Default for ContourOptions {
    fn default() -> Self {
        ContourOptions { radius: None, nodes: None, precision: None, strict: false, tolerance: 1e-6 }
    }
}

/// Exact value, circle quadrature and main term of `M_z(n)` side by side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContourCheck {
    pub q: u64,
    pub n: usize,
    pub z: Complex64,
    pub kind: SeriesKind,
    pub radius: f64,
    pub nodes: usize,
    pub precision_bits: usize,
    pub exact: ScaledComplex,
    pub contour_value: ScaledComplex,
    pub mainterm: ScaledComplex,
    pub contour_rel_error: f64,
    /// `exact / mainterm`; absent when the main term vanishes (`1/Γ(z) = 0`).
    pub mainterm_ratio: Option<Complex64>,
    pub mainterm_rel_diff: Option<f64>,
    pub passed: bool,
}

fn scaled_from_mp(z: &Complex<MpFloat>) -> ScaledComplex {
    let (mr, er) = z.re.split();
    let (mi, ei) = z.im.split();
    let ln2 = std::f64::consts::LN_2;
    let top = match (mr == 0.0, mi == 0.0) {
        (true, true) => return ScaledComplex::from_c64(Complex64::zero()),
        (true, false) => ei,
        (false, true) => er,
        (false, false) => er.max(ei),
    };
    let re = if mr == 0.0 { 0.0 } else { mr * 2f64.powi((er - top).max(-1100) as i32) };
    let im = if mi == 0.0 { 0.0 } else { mi * 2f64.powi((ei - top).max(-1100) as i32) };
    ScaledComplex::new(Complex64::new(re, im), top as f64 * ln2)
}

fn rational_of(x: f64) -> Result<BigRational> {
    BigRational::from_f64(x).ok_or_else(|| Error::Domain(format!("{x} is not finite")))
}

/// Recovers `M_z(n)` by circle quadrature of `ζ(u)^z F_z(u)` (or the
/// no-linear analogue) and compares it with the exact series value and the
/// main term.
///
/// The quadrature runs in multiprecision with the Euler product cut at degree
/// `max(D, n)`, which makes the `u^n` coefficient of the truncated product
/// exact; the only errors left are aliasing and rounding.
pub fn verify_prop_main_term(
    series: &BivariateSeries,
    ctx: &AnalyticContext<f64>,
    n: usize,
    z: Complex64,
    options: &ContourOptions,
) -> Result<ContourCheck> {
    let q = series.q();
    let kind = series.kind();
    if ctx.q() != q {
        return Err(Error::Config("analytic context built for a different q".into()));
    }
    let qf = q.as_f64();
    let config = ctx.config();
    let limit = match kind {
        SeriesKind::AllMonics => qf - config.epsilon,
        SeriesKind::NoLinearFactors => qf * qf - config.delta,
    };
    if z.norm() > limit * (1.0 + 1e-12) {
        return Err(Error::Domain(format!("|z| = {} exceeds {limit}", z.norm())));
    }
    let radius = options.radius.unwrap_or(1.0 / (2.0 * qf));
    if !(radius > 0.0 && radius < 1.0 / qf) {
        return Err(Error::Domain(format!("radius must satisfy 0 < r < 1/q, got {radius}")));
    }
    let nodes = options.nodes.unwrap_or(4 * n + 64);
    let bits = options
        .precision
        .unwrap_or((n as f64 * (1.0 / radius).log2() + 2.0 * (n as f64 + 2.0).log2()).ceil() as usize + 96);

    let exact_rat = series.m_z_exact(n, &Complex::new(rational_of(z.re)?, rational_of(z.im)?))?;
    let contour_mp = with_precision(bits, || -> Result<(Complex<MpFloat>, Complex<MpFloat>)> {
        let mp_config = AnalyticConfig {
            trunc_degree: config.trunc_degree.max(n).max(2),
            taylor_terms: 0,
            ..config.clone()
        };
        let mp_ctx = AnalyticContext::<MpFloat>::products_only(q, mp_config)?;
        let zm = Complex::new(MpFloat::from_f64(z.re), MpFloat::from_f64(z.im));
        let value = circle_coefficient(
            |u: &Complex<MpFloat>| match kind {
                SeriesKind::AllMonics => mp_ctx.g_z(u, &zm),
                SeriesKind::NoLinearFactors => mp_ctx.g_tilde_z(u, &zm),
            },
            n,
            radius,
            nodes,
            options.strict,
        )?;
        let exact = Complex::new(MpFloat::from_rational(&exact_rat.re), MpFloat::from_rational(&exact_rat.im));
        Ok((value, exact))
    })?;
    let (value_mp, exact_mp) = contour_mp;
    let diff = with_precision(bits, || scaled_from_mp(&(value_mp.clone() - exact_mp.clone())));
    let exact = scaled_from_mp(&exact_mp);
    let contour_value = scaled_from_mp(&value_mp);
    let contour_rel_error = if exact.is_zero() {
        diff.to_c64().norm()
    } else {
        (diff.ln_abs() - exact.ln_abs()).exp()
    };
    let mainterm = mz_mainterm(n, z, ctx, kind)?;
    let mainterm_ratio = (!mainterm.is_zero()).then(|| exact.ratio(&mainterm));
    let mainterm_rel_diff = mainterm_ratio.map(|r| (r - 1.0).norm());
    Ok(ContourCheck {
        q: q.get(),
        n,
        z,
        kind,
        radius,
        nodes,
        precision_bits: bits,
        exact,
        contour_value,
        mainterm,
        contour_rel_error,
        mainterm_ratio,
        mainterm_rel_diff,
        passed: contour_rel_error <= options.tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSize;

    #[test]
    fn geometric_series_coefficient() {
        let v: Complex64 = circle_coefficient(
            |u: &Complex64| Ok(Complex64::new(1.0, 0.0) / (1.0 - 2.0 * u)),
            5,
            0.2,
            64,
            true,
        )
        .unwrap();
        assert!((v - 32.0).norm() < 1e-8);
    }

    #[test]
    fn strict_mode_rejects_too_few_nodes() {
        let r = circle_coefficient(|u: &Complex64| Ok(*u), 10, 0.2, 8, true);
        assert!(matches!(r, Err(Error::Accuracy(_))));
        assert!(circle_coefficient(|u: &Complex64| Ok(*u), 10, 0.2, 8, false).is_ok());
    }

    #[test]
    fn hankel_trivial_values() {
        for (z, expected) in [(-1.0, -1.0), (0.0, 0.0), (0.5, 1.0 / (2.0 * std::f64::consts::PI.sqrt()))] {
            let v = hankel_integral(Complex64::new(z, 0.0), &HankelContour::new(200, 1.0), HANKEL_Z_MAX).unwrap();
            assert!((v.re - expected).abs() < 0.05, "z = {z}: {v}");
        }
    }

    #[test]
    fn hankel_bound_on_z() {
        let r = hankel_integral(Complex64::new(11.0, 0.0), &HankelContour::new(10, 1.0), HANKEL_Z_MAX);
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn small_three_way_check() {
        let q = FieldSize::new(2).unwrap();
        let s = BivariateSeries::build(q, 8, SeriesKind::AllMonics);
        let ctx = AnalyticContext::products_only(q, AnalyticConfig::default()).unwrap();
        let c = verify_prop_main_term(&s, &ctx, 3, Complex64::new(1.0, 0.5), &ContourOptions::default()).unwrap();
        assert!(c.passed, "{c:?}");
    }
}
