//! Counting monic polynomials over finite fields by their number of
//! irreducible factors: exact generating-function tables, a brute-force
//! oracle, Euler-product constants and the asymptotic formulas, with the
//! contour integrals behind them checked numerically.
//!
//! Numerical code is generic over [`scalar::Real`]; the aliases below fix the
//! common choices.

pub mod analytic;
pub mod asymptotics;
pub mod bigconv;
pub mod contour;
pub mod error;
pub mod field;
pub mod gamma;
pub mod irreducibles;
pub mod mp;
pub mod oracle;
pub mod poly;
pub mod quadrature;
pub mod scalar;
pub mod selftest;
pub mod serde_big;
pub mod series;

pub use error::{Error, Result};
pub use field::FieldSize;
pub use mp::MpFloat;

/// Double-precision complex numbers.
pub type C64 = num_complex::Complex<f64>;
/// Multiprecision complex numbers at the thread's working precision.
pub type CMp = num_complex::Complex<MpFloat>;
/// Analytic context in double precision.
pub type Context = analytic::AnalyticContext<f64>;
/// Analytic context in single precision.
pub type Context32 = analytic::AnalyticContext<f32>;
/// Analytic context in multiprecision.
pub type MpContext = analytic::AnalyticContext<MpFloat>;
