//! Multiprecision real numbers backed by `astro-float`.
//!
//! Operations round to a thread-local working precision, set with
//! [`with_precision`]. Values themselves carry whatever precision they were
//! produced at.

use std::cell::{Cell, RefCell};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word};
use num_bigint::BigUint;
use num_traits::{Num, One, Zero};

const RM: RoundingMode = RoundingMode::ToEven;
pub const DEFAULT_PRECISION: usize = 128;

thread_local! {
    static PRECISION: Cell<usize> = const { Cell::new(DEFAULT_PRECISION) };
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

/// Current working precision in bits.
pub fn precision() -> usize {
    PRECISION.with(|p| p.get())
}

/// Runs `f` with the working precision set to `bits`, restoring it afterwards.
pub fn with_precision<R>(bits: usize, f: impl FnOnce() -> R) -> R {
    struct Restore(usize);
    impl Drop for Restore {
        fn drop(&mut self) {
            PRECISION.with(|p| p.set(self.0));
        }
    }
    let bits = bits.max(64);
    let _restore = Restore(PRECISION.with(|p| p.replace(bits)));
    f()
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

#[derive(Clone)]
pub struct MpFloat(BigFloat);

impl MpFloat {
    pub fn from_f64(x: f64) -> Self {
        MpFloat(BigFloat::from_f64(x, precision().max(64)))
    }

    pub fn inner(&self) -> &BigFloat {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf() {
            return if self.0.is_positive() {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            };
        }
        let Some((words, _, sign, exponent, _)) = self.0.as_raw_parts() else {
            return f64::NAN;
        };
        let top = match words.last() {
            Some(&w) if w != 0 => w,
            _ => return 0.0,
        };
        // value = 0.m * 2^e with the top word holding the leading bits.
        let frac = top as f64 / 18446744073709551616.0;
        let v = ldexp(frac, exponent as i64);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }

    /// `(m, e)` with `self = m * 2^e` and `0.5 <= |m| < 1` (zero gives `(0, 0)`).
    pub fn split(&self) -> (f64, i64) {
        let Some((words, _, sign, exponent, _)) = self.0.as_raw_parts() else {
            return (f64::NAN, 0);
        };
        match words.last() {
            Some(&top) if top != 0 => {
                let m = top as f64 / 18446744073709551616.0;
                (if sign == Sign::Neg { -m } else { m }, exponent as i64)
            }
            _ => (0.0, 0),
        }
    }

    pub fn from_biguint(x: &BigUint) -> Self {
        if x.is_zero() {
            return Self::zero();
        }
        let words: Vec<Word> = x.iter_u64_digits().collect();
        let bits = words.len() * 64;
        let mut v = BigFloat::from_words(&words, Sign::Pos, bits as i32);
        let p = precision();
        if p < bits {
            v.set_precision(p, RM).expect("valid precision");
        }
        MpFloat(v)
    }

    pub fn exp(&self) -> Self {
        let p = precision();
        MpFloat(with_consts(|cc| self.0.exp(p, RM, cc)))
    }

    pub fn ln(&self) -> Self {
        let p = precision();
        MpFloat(with_consts(|cc| self.0.ln(p, RM, cc)))
    }

    pub fn sqrt(&self) -> Self {
        MpFloat(self.0.sqrt(precision(), RM))
    }

    pub fn sin(&self) -> Self {
        let p = precision();
        MpFloat(with_consts(|cc| self.0.sin(p, RM, cc)))
    }

    pub fn cos(&self) -> Self {
        let p = precision();
        MpFloat(with_consts(|cc| self.0.cos(p, RM, cc)))
    }

    pub fn atan(&self) -> Self {
        let p = precision();
        MpFloat(with_consts(|cc| self.0.atan(p, RM, cc)))
    }

    /// Four-quadrant arctangent of `self / x`.
    pub fn atan2(&self, x: &Self) -> Self {
        let y = self;
        let zero = Self::zero();
        if x.is_zero() {
            return match y.partial_cmp(&zero) {
                Some(Ordering::Greater) => Self::pi() / Self::from_f64(2.0),
                Some(Ordering::Less) => -(Self::pi() / Self::from_f64(2.0)),
                _ => zero,
            };
        }
        if y.abs() <= x.abs() {
            let base = (y.clone() / x.clone()).atan();
            if *x > zero {
                base
            } else if *y >= zero {
                base + Self::pi()
            } else {
                base - Self::pi()
            }
        } else {
            // atan2(y, x) = ±pi/2 - atan(x/y) keeps the argument bounded.
            let half_pi = Self::pi() / Self::from_f64(2.0);
            let base = (x.clone() / y.clone()).atan();
            if *y > zero {
                half_pi - base
            } else {
                -half_pi - base
            }
        }
    }

    pub fn pi() -> Self {
        let p = precision();
        MpFloat(with_consts(|cc| cc.pi(p, RM)))
    }

    pub fn epsilon() -> Self {
        Self::one().scale2(-(precision() as i64))
    }

    /// `self * 2^k`.
    pub fn scale2(&self, k: i64) -> Self {
        let two = BigFloat::from_f64(2.0, 64);
        let p = precision();
        let f = two.powi(k.unsigned_abs() as usize, p, RM);
        if k >= 0 {
            MpFloat(self.0.mul(&f, p, RM))
        } else {
            MpFloat(self.0.div(&f, p, RM))
        }
    }

    pub fn abs(&self) -> Self {
        MpFloat(self.0.abs())
    }

    pub fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }
}

fn ldexp(x: f64, e: i64) -> f64 {
    if e > 1100 {
        return f64::INFINITY * x.signum();
    }
    if e < -1200 {
        return 0.0;
    }
    let mut v = x;
    let mut e = e;
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
    }
    v * 2f64.powi(e as i32)
}

impl fmt::Debug for MpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for MpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl PartialEq for MpFloat {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for MpFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:ident) => {
        impl $tr for MpFloat {
            type Output = MpFloat;
            fn $method(self, rhs: MpFloat) -> MpFloat {
                MpFloat(self.0.$op(&rhs.0, precision(), RM))
            }
        }
        impl<'a> $tr<&'a MpFloat> for &'a MpFloat {
            type Output = MpFloat;
            fn $method(self, rhs: &'a MpFloat) -> MpFloat {
                MpFloat(self.0.$op(&rhs.0, precision(), RM))
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Rem for MpFloat {
    type Output = MpFloat;
    fn rem(self, rhs: MpFloat) -> MpFloat {
        MpFloat(self.0.rem(&rhs.0))
    }
}

impl Neg for MpFloat {
    type Output = MpFloat;
    fn neg(self) -> MpFloat {
        MpFloat(self.0.neg())
    }
}

impl Zero for MpFloat {
    fn zero() -> Self {
        MpFloat(BigFloat::from_f64(0.0, 64))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for MpFloat {
    fn one() -> Self {
        MpFloat(BigFloat::from_f64(1.0, 64))
    }
}

impl Num for MpFloat {
    type FromStrRadixErr = String;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, String> {
        if radix != 10 {
            return Err(format!("unsupported radix {radix}"));
        }
        let v = with_consts(|cc| BigFloat::parse(s, astro_float::Radix::Dec, precision(), RM, cc));
        if v.is_nan() {
            Err(format!("cannot parse {s:?}"))
        } else {
            Ok(MpFloat(v))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_round_trip() {
        for x in [1.0, -2.5, 1e-300, 3.0f64.powi(100), std::f64::consts::PI] {
            assert_eq!(MpFloat::from_f64(x).to_f64(), x);
        }
    }

    #[test]
    fn biguint_conversion_is_exact_at_high_precision() {
        with_precision(512, || {
            let x = BigUint::from(3u32).pow(200);
            let back = MpFloat::from_biguint(&x);
            let three = MpFloat::from_f64(3.0);
            let mut p = MpFloat::one();
            for _ in 0..200 {
                p = p * three.clone();
            }
            assert!(back == p);
        });
    }

    #[test]
    fn atan2_quadrants() {
        with_precision(128, || {
            for (y, x) in [(1.0, 1.0), (1.0, -1.0), (-1.0, -1.0), (-1.0, 1.0), (2.0, 0.1), (-3.0, -0.2)] {
                let v = MpFloat::atan2(&MpFloat::from_f64(y), &MpFloat::from_f64(x)).to_f64();
                assert!((v - f64::atan2(y, x)).abs() < 1e-15, "{y} {x}");
            }
        });
    }

    #[test]
    fn transcendental_consistency() {
        with_precision(256, || {
            let x = MpFloat::from_f64(0.7);
            let back = x.exp().ln();
            assert!((back - x).abs().to_f64() < 1e-70);
            let s = MpFloat::from_f64(1.1).sin();
            let c = MpFloat::from_f64(1.1).cos();
            let one = s.clone() * s + c.clone() * c;
            assert!((one - MpFloat::one()).abs().to_f64() < 1e-70);
        });
    }

    #[test]
    fn epsilon_tracks_precision() {
        let e = with_precision(200, MpFloat::epsilon).to_f64();
        assert!((e - 2f64.powi(-200)).abs() < 1e-70);
    }
}
