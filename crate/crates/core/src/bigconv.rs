//! Conversions from exact big integers to floating point without overflow.

use num_bigint::{BigInt, BigUint, Sign};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Splits `x > 0` as `m * 2^e` with `m` holding the leading 64 bits.
pub fn split_biguint(x: &BigUint) -> (f64, i64) {
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().unwrap_or(0) as f64, 0);
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().unwrap_or(u64::MAX);
    (top as f64, shift as i64)
}

/// Nearest double (infinite past the double range).
pub fn biguint_to_f64(x: &BigUint) -> f64 {
    let (m, e) = split_biguint(x);
    if e > 2000 {
        return f64::INFINITY;
    }
    m * 2f64.powi(e as i32)
}

pub fn bigint_to_f64(x: &BigInt) -> f64 {
    let v = biguint_to_f64(x.magnitude());
    if x.sign() == Sign::Minus {
        -v
    } else {
        v
    }
}

/// Natural logarithm of a big integer; `-inf` at zero.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (m, e) = split_biguint(x);
    m.ln() + e as f64 * std::f64::consts::LN_2
}

/// `a / b` as a double, exact to double rounding for any sizes.
pub fn ratio_biguint(a: &BigUint, b: &BigUint) -> f64 {
    if b.is_zero() {
        return f64::INFINITY;
    }
    if a.is_zero() {
        return 0.0;
    }
    let (ma, ea) = split_biguint(a);
    let (mb, eb) = split_biguint(b);
    (ma / mb) * 2f64.powi((ea - eb).clamp(-3000, 3000) as i32)
}

/// A complex number stored as `mantissa * exp(ln_scale)`, for magnitudes far
/// outside the double range.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaledComplex {
    pub mantissa: Complex64,
    pub ln_scale: f64,
}

impl ScaledComplex {
    pub fn new(mantissa: Complex64, ln_scale: f64) -> Self {
        ScaledComplex { mantissa, ln_scale }.normalized()
    }

    pub fn from_c64(v: Complex64) -> Self {
        Self::new(v, 0.0)
    }

    pub fn from_biguint(x: &BigUint) -> Self {
        if x.is_zero() {
            return ScaledComplex { mantissa: Complex64::new(0.0, 0.0), ln_scale: 0.0 };
        }
        let (m, e) = split_biguint(x);
        Self::new(Complex64::new(m, 0.0), e as f64 * std::f64::consts::LN_2)
    }

    pub fn from_bigint(x: &BigInt) -> Self {
        let s = Self::from_biguint(x.magnitude());
        if x.sign() == Sign::Minus {
            ScaledComplex { mantissa: -s.mantissa, ..s }
        } else {
            s
        }
    }

    fn normalized(self) -> Self {
        let a = self.mantissa.norm();
        if a == 0.0 || !a.is_finite() {
            return self;
        }
        let shift = a.ln();
        ScaledComplex { mantissa: self.mantissa / a, ln_scale: self.ln_scale + shift }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.norm() == 0.0
    }

    /// `ln |value|`.
    pub fn ln_abs(&self) -> f64 {
        self.mantissa.norm().ln() + self.ln_scale
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.mantissa * other.mantissa, self.ln_scale + other.ln_scale)
    }

    pub fn div(&self, other: &Self) -> Self {
        Self::new(self.mantissa / other.mantissa, self.ln_scale - other.ln_scale)
    }

    /// The value as a double-precision complex number (may overflow).
    pub fn to_c64(&self) -> Complex64 {
        self.mantissa * self.ln_scale.exp()
    }

    /// `self / other` as a plain complex number.
    pub fn ratio(&self, other: &Self) -> Complex64 {
        self.div(other).to_c64()
    }
}
