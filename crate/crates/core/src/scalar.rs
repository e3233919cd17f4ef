//! Scalar abstraction shared by the numerical modules.
//!
//! `Real` is implemented for `f32`, `f64` and the multiprecision [`MpFloat`].
//! It is deliberately smaller than `num_traits::Float` because a
//! multiprecision value cannot be `Copy`.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::{BigInt, BigUint, Sign};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive, Zero};

use crate::gamma;
use crate::mp::MpFloat;

pub trait Real: Clone + Debug + PartialOrd + Num + Neg<Output = Self> + Send + Sync + 'static {
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn atan2(&self, x: &Self) -> Self;
    fn pi() -> Self;
    /// Unit roundoff of the current working precision.
    fn epsilon() -> Self;

    /// Bits of working precision.
    fn precision_bits() -> f64 {
        -Self::epsilon().to_f64().log2()
    }

    fn from_u64(x: u64) -> Self {
        if x < (1u64 << 53) {
            Self::from_f64(x as f64)
        } else {
            Self::from_biguint(&BigUint::from(x))
        }
    }

    fn from_i64(x: i64) -> Self {
        let m = Self::from_u64(x.unsigned_abs());
        if x < 0 {
            -m
        } else {
            m
        }
    }

    fn from_biguint(x: &BigUint) -> Self {
        // Horner over 32-bit limbs; exact whenever the precision allows it.
        let base = Self::from_f64(4294967296.0);
        let mut acc = Self::zero();
        for limb in x.iter_u32_digits().rev() {
            acc = acc * base.clone() + Self::from_f64(limb as f64);
        }
        acc
    }

    fn from_bigint(x: &BigInt) -> Self {
        let m = Self::from_biguint(x.magnitude());
        if x.sign() == Sign::Minus {
            -m
        } else {
            m
        }
    }

    fn from_rational(x: &BigRational) -> Self {
        Self::from_bigint(x.numer()) / Self::from_bigint(x.denom())
    }

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn hypot(&self, other: &Self) -> Self {
        (self.clone() * self.clone() + other.clone() * other.clone()).sqrt()
    }

    fn powi(&self, n: i32) -> Self {
        let mut base = if n < 0 {
            Self::one() / self.clone()
        } else {
            self.clone()
        };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    fn is_finite(&self) -> bool {
        self.to_f64().is_finite() || self.to_f64() == 0.0
    }

    /// `1/Γ(z)`, entire in `z`.
    fn recip_gamma(z: &Complex<Self>) -> Complex<Self> {
        gamma::recip_gamma_stirling(z)
    }
}

macro_rules! impl_real_prim {
    ($t:ty) => {
        impl Real for $t {
            fn from_f64(x: f64) -> Self {
                x as $t
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
            fn exp(&self) -> Self {
                <$t>::exp(*self)
            }
            fn ln(&self) -> Self {
                <$t>::ln(*self)
            }
            fn sqrt(&self) -> Self {
                <$t>::sqrt(*self)
            }
            fn sin(&self) -> Self {
                <$t>::sin(*self)
            }
            fn cos(&self) -> Self {
                <$t>::cos(*self)
            }
            fn atan2(&self, x: &Self) -> Self {
                <$t>::atan2(*self, *x)
            }
            fn pi() -> Self {
                std::f64::consts::PI as $t
            }
            fn epsilon() -> Self {
                <$t>::EPSILON
            }
            fn from_biguint(x: &BigUint) -> Self {
                crate::bigconv::biguint_to_f64(x) as $t
            }
            fn abs(&self) -> Self {
                <$t>::abs(*self)
            }
            fn hypot(&self, other: &Self) -> Self {
                <$t>::hypot(*self, *other)
            }
            fn powi(&self, n: i32) -> Self {
                <$t>::powi(*self, n)
            }
            fn is_finite(&self) -> bool {
                <$t>::is_finite(*self)
            }
            fn recip_gamma(z: &Complex<Self>) -> Complex<Self> {
                let w = gamma::recip_gamma_lanczos(Complex::new(z.re as f64, z.im as f64));
                Complex::new(w.re as $t, w.im as $t)
            }
        }
    };
}

impl_real_prim!(f32);
impl_real_prim!(f64);

impl Real for MpFloat {
    fn from_f64(x: f64) -> Self {
        MpFloat::from_f64(x)
    }
    fn to_f64(&self) -> f64 {
        MpFloat::to_f64(self)
    }
    fn exp(&self) -> Self {
        MpFloat::exp(self)
    }
    fn ln(&self) -> Self {
        MpFloat::ln(self)
    }
    fn sqrt(&self) -> Self {
        MpFloat::sqrt(self)
    }
    fn sin(&self) -> Self {
        MpFloat::sin(self)
    }
    fn cos(&self) -> Self {
        MpFloat::cos(self)
    }
    fn atan2(&self, x: &Self) -> Self {
        MpFloat::atan2(self, x)
    }
    fn pi() -> Self {
        MpFloat::pi()
    }
    fn epsilon() -> Self {
        MpFloat::epsilon()
    }
    fn from_biguint(x: &BigUint) -> Self {
        MpFloat::from_biguint(x)
    }
    fn abs(&self) -> Self {
        MpFloat::abs(self)
    }
    fn is_finite(&self) -> bool {
        MpFloat::is_finite(self)
    }
    fn precision_bits() -> f64 {
        crate::mp::precision() as f64
    }
}

/// Shorthand constructor.
pub fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::from_f64(re), T::from_f64(im))
}

pub fn cabs<T: Real>(z: &Complex<T>) -> T {
    z.re.hypot(&z.im)
}

pub fn cabs_f64<T: Real>(z: &Complex<T>) -> f64 {
    z.re.to_f64().hypot(z.im.to_f64())
}

pub fn to_c64<T: Real>(z: &Complex<T>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

pub fn from_c64<T: Real>(z: Complex<f64>) -> Complex<T> {
    Complex::new(T::from_f64(z.re), T::from_f64(z.im))
}

pub fn cscale<T: Real>(z: &Complex<T>, s: &T) -> Complex<T> {
    Complex::new(z.re.clone() * s.clone(), z.im.clone() * s.clone())
}

pub fn cexp<T: Real>(z: &Complex<T>) -> Complex<T> {
    let m = z.re.exp();
    Complex::new(m.clone() * z.im.cos(), m * z.im.sin())
}

/// Principal logarithm, branch cut along the negative real axis.
pub fn cln<T: Real>(z: &Complex<T>) -> Complex<T> {
    Complex::new(cabs(z).ln(), z.im.atan2(&z.re))
}

/// Principal power `base^e = exp(e log base)`.
pub fn cpow<T: Real>(base: &Complex<T>, e: &Complex<T>) -> Complex<T> {
    cexp(&(e.clone() * cln(base)))
}

/// `log(1 - w)` on the principal branch, accurate for small `|w|`.
pub fn ln_1m<T: Real>(w: &Complex<T>) -> Complex<T> {
    let aw = cabs_f64(w);
    if aw >= 0.25 {
        let one_minus = Complex::new(T::one() - w.re.clone(), -w.im.clone());
        return cln(&one_minus);
    }
    if w.re.is_zero() && w.im.is_zero() {
        return Complex::zero();
    }
    // -sum_{m>=1} w^m / m, stopped once the terms fall below working precision.
    let log_eps = -T::precision_bits() * std::f64::consts::LN_2;
    // An |w| below the double range needs only the first terms.
    let terms = ((log_eps / aw.ln()).ceil() as usize).max(1) + 2;
    let mut power = w.clone();
    let mut sum = w.clone();
    for m in 2..=terms {
        power = power * w.clone();
        let inv = T::one() / T::from_u64(m as u64);
        sum = sum + cscale(&power, &inv);
    }
    -sum
}

/// `sin(pi z)` with argument reduction on the real part.
pub fn sin_pi<T: Real>(z: &Complex<T>) -> Complex<T> {
    let n = z.re.to_f64().round();
    let x = (z.re.clone() - T::from_f64(n)) * T::pi();
    let y = z.im.clone() * T::pi();
    let ey = y.exp();
    let emy = T::one() / ey.clone();
    let two = T::from_f64(2.0);
    let cosh = (ey.clone() + emy.clone()) / two.clone();
    let sinh = (ey - emy) / two;
    let s = Complex::new(x.sin() * cosh, x.cos() * sinh);
    let parity = (n as i64).rem_euclid(2);
    if parity == 1 {
        -s
    } else {
        s
    }
}

/// Rounds to the nearest `i64`, if representable.
pub fn round_i64<T: Real>(x: &T) -> Option<i64> {
    x.to_f64().round().to_i64()
}
