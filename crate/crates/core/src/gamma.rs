//! The complex Gamma function.
//!
//! Double precision uses a Lanczos approximation (g = 7, 9 terms) with the
//! reflection formula for `Re z < 1/2`. Other scalars use a shifted Stirling
//! series whose length adapts to the working precision.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{cexp, cln, cscale, sin_pi, Real};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_nonpositive_integer<T: Real>(z: &Complex<T>) -> bool {
    if !z.im.is_zero() || z.re > T::zero() {
        return false;
    }
    let r = z.re.to_f64().round();
    (z.re.clone() - T::from_f64(r)).is_zero()
}

/// `Γ(z)`; errors at the poles `0, -1, -2, ...`.
pub fn gamma<T: Real>(z: &Complex<T>) -> Result<Complex<T>> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole {
            function: "Gamma",
            at: format!("{}", z.re.to_f64()),
        });
    }
    Ok(Complex::new(T::one(), T::zero()) / T::recip_gamma(z))
}

/// `1/Γ(z)`, an entire function: zero at the poles of `Γ`.
pub fn recip_gamma<T: Real>(z: &Complex<T>) -> Complex<T> {
    T::recip_gamma(z)
}

fn ln_gamma_lanczos_right(z: Complex<f64>) -> Complex<f64> {
    let z = z - 1.0;
    let mut x = Complex::new(LANCZOS[0], 0.0);
    for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
        x += p / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

pub(crate) fn recip_gamma_lanczos(z: Complex<f64>) -> Complex<f64> {
    if is_nonpositive_integer(&z) {
        return Complex::zero();
    }
    if z.re < 0.5 {
        // 1/Γ(z) = sin(πz) Γ(1-z) / π
        let s = sin_pi(&z);
        return s * ln_gamma_lanczos_right(1.0 - z).exp() / std::f64::consts::PI;
    }
    (-ln_gamma_lanczos_right(z)).exp()
}

static BERNOULLI: Mutex<Vec<BigRational>> = Mutex::new(Vec::new());

/// Exact Bernoulli numbers `B_0 .. B_m` (with `B_1 = -1/2`).
pub fn bernoulli_numbers(m: usize) -> Vec<BigRational> {
    let mut cache = BERNOULLI.lock().unwrap_or_else(|e| e.into_inner());
    if cache.is_empty() {
        cache.push(BigRational::one());
    }
    while cache.len() <= m {
        let n = cache.len();
        // sum_{k=0}^{n} C(n+1, k) B_k = 0
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (k, b) in cache.iter().enumerate() {
            if !b.is_zero() {
                acc += b * BigRational::from_integer(binom.clone());
            }
            binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
        }
        let b = -acc / BigRational::from_integer(BigInt::from(n + 1));
        cache.push(b);
    }
    cache[..=m].to_vec()
}

pub(crate) fn recip_gamma_stirling<T: Real>(z: &Complex<T>) -> Complex<T> {
    if is_nonpositive_integer(z) {
        return Complex::zero();
    }
    if z.re.to_f64() < 0.5 {
        let one = Complex::new(T::one(), T::zero());
        let s = sin_pi(z);
        let r = recip_gamma_stirling(&(one - z.clone()));
        return s / (r * T::pi());
    }
    let bits = T::precision_bits();
    let radius = 0.12 * bits + 8.0;
    let shift = (radius - z.re.to_f64()).ceil().max(0.0) as usize;
    let mut prefactor = Complex::new(T::one(), T::zero());
    for i in 0..shift {
        prefactor = prefactor * (z.clone() + Complex::new(T::from_u64(i as u64), T::zero()));
    }
    let x = z.clone() + Complex::new(T::from_u64(shift as u64), T::zero());
    let half = T::from_f64(0.5);
    let two_pi = T::pi() * T::from_f64(2.0);
    let mut lg = (x.clone() - Complex::new(half.clone(), T::zero())) * cln(&x) - x.clone()
        + Complex::new(half * two_pi.ln(), T::zero());

    let inv_x = Complex::new(T::one(), T::zero()) / x.clone();
    let inv_x2 = inv_x.clone() * inv_x.clone();
    let mut power = inv_x;
    let log_eps = -bits * std::f64::consts::LN_2;
    let max_k = (std::f64::consts::PI * cabs(&x).to_f64()).ceil() as usize + 2;
    let bern = bernoulli_numbers(2 * max_k);
    for k in 1..=max_k {
        let b = &bern[2 * k];
        let denom = BigInt::from(2 * k) * BigInt::from(2 * k - 1);
        let coef = T::from_rational(&(b / BigRational::from_integer(denom)));
        let term = cscale(&power, &coef);
        let small = crate::scalar::cabs_f64(&term).ln() < log_eps + crate::scalar::cabs_f64(&lg).ln();
        lg = lg + term;
        if small {
            break;
        }
        power = power * inv_x2.clone();
    }
    prefactor * cexp(&(-lg))
}

fn cabs<T: Real>(z: &Complex<T>) -> T {
    crate::scalar::cabs(z)
}
