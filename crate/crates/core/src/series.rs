//! Exact bivariate generating functions `Σ N(n,k) z^k u^n`.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bigconv::{ln_biguint, ScaledComplex};
use crate::error::{Error, Result};
use crate::field::FieldSize;
use crate::irreducibles::IrreducibleTable;
use crate::scalar::{cabs_f64, Real};

/// Which monic polynomials the series counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SeriesKind {
    /// Every monic polynomial.
    AllMonics,
    /// Monic polynomials with no root in `F_q`.
    NoLinearFactors,
}

impl SeriesKind {
    fn first_degree(self) -> usize {
        match self {
            SeriesKind::AllMonics => 1,
            SeriesKind::NoLinearFactors => 2,
        }
    }
}

/// Truncated series with `coeffs[n][k]` = number of degree-`n` monics (of the
/// given kind) with exactly `k` irreducible factors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BivariateSeries {
    q: FieldSize,
    n_max: usize,
    kind: SeriesKind,
    coeffs: Vec<Vec<BigUint>>,
}

/// `binom(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

impl BivariateSeries {
    /// Multiplies out `∏_d (1 - z u^d)^{-π_q(d)}` up to `u^{n_max}`.
    pub fn build(q: FieldSize, n_max: usize, kind: SeriesKind) -> Self {
        let table = IrreducibleTable::counts(q, n_max);
        Self::build_with_table(&table, n_max, kind)
    }

    /// As [`build`](Self::build), reusing precomputed irreducible counts.
    pub fn build_with_table(table: &IrreducibleTable, n_max: usize, kind: SeriesKind) -> Self {
        assert!(table.d_max() >= n_max, "irreducible counts must reach n_max");
        let mut coeffs: Vec<Vec<BigUint>> =
            (0..=n_max).map(|n| vec![BigUint::zero(); n + 1]).collect();
        coeffs[0][0] = BigUint::one();
        let mut scratch = BigUint::zero();
        for d in kind.first_degree()..=n_max {
            let pi = table.count_ref(d);
            if pi.is_zero() {
                continue;
            }
            // c_m = binom(π + m - 1, m), built incrementally.
            let m_max = n_max / d;
            let mut c = Vec::with_capacity(m_max + 1);
            c.push(BigUint::one());
            for m in 1..=m_max {
                let next = &c[m - 1] * (pi + BigUint::from(m - 1)) / BigUint::from(m);
                c.push(next);
            }
            // In place, highest degree first, so every source row is still old.
            for n in (d..=n_max).rev() {
                let (lower, upper) = coeffs.split_at_mut(n);
                let target = &mut upper[0];
                for m in 1..=n / d {
                    let src = &lower[n - d * m];
                    let cm = &c[m];
                    for (k, v) in src.iter().enumerate() {
                        if v.is_zero() {
                            continue;
                        }
                        scratch.clone_from(v);
                        scratch *= cm;
                        target[k + m] += &scratch;
                    }
                }
            }
        }
        BivariateSeries { q: table.q(), n_max, kind, coeffs }
    }

    pub fn q(&self) -> FieldSize {
        self.q
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.n_max {
            Err(Error::OutOfRange { n, n_max: self.n_max })
        } else {
            Ok(())
        }
    }

    /// `N(n,k)` (or `N'(n,k)`); zero outside `0 <= k <= n`.
    pub fn count(&self, n: usize, k: i64) -> Result<BigUint> {
        self.check(n)?;
        if k < 0 || k as usize > n {
            return Ok(BigUint::zero());
        }
        Ok(self.coeffs[n][k as usize].clone())
    }

    pub fn count_ref(&self, n: usize, k: usize) -> &BigUint {
        &self.coeffs[n][k]
    }

    pub fn row(&self, n: usize) -> Result<&[BigUint]> {
        self.check(n)?;
        Ok(&self.coeffs[n])
    }

    /// `M_z(n) = Σ_k N(n,k) z^k` by Horner's rule in the scalar type `T`.
    pub fn m_z<T: Real>(&self, n: usize, z: &Complex<T>) -> Result<Complex<T>> {
        let row = self.row(n)?;
        let mut acc = Complex::new(T::zero(), T::zero());
        for c in row.iter().rev() {
            acc = acc * z.clone() + Complex::new(T::from_biguint(c), T::zero());
        }
        Ok(acc)
    }

    /// `M_z(n)` without overflow for any `n`, via per-term logarithms.
    pub fn m_z_scaled(&self, n: usize, z: Complex<f64>) -> Result<ScaledComplex> {
        let row = self.row(n)?;
        let az = cabs_f64(&z);
        let arg = z.im.atan2(z.re);
        let terms: Vec<(usize, f64)> = row
            .iter()
            .enumerate()
            .filter(|(k, c)| !c.is_zero() && (az > 0.0 || *k == 0))
            .map(|(k, c)| (k, ln_biguint(c) + if k == 0 { 0.0 } else { k as f64 * az.ln() }))
            .collect();
        let Some(top) = terms.iter().map(|t| t.1).fold(None, |m: Option<f64>, x| {
            Some(m.map_or(x, |m| m.max(x)))
        }) else {
            return Ok(ScaledComplex::from_c64(Complex::new(0.0, 0.0)));
        };
        let mut sum = Complex::new(0.0, 0.0);
        for (k, l) in terms {
            sum += Complex::from_polar((l - top).exp(), k as f64 * arg);
        }
        Ok(ScaledComplex::new(sum, top))
    }

    /// `M_z(n)` exactly for Gaussian-rational `z`.
    pub fn m_z_exact(&self, n: usize, z: &Complex<BigRational>) -> Result<Complex<BigRational>> {
        let row = self.row(n)?;
        let den = num_integer::Integer::lcm(z.re.denom(), z.im.denom());
        let a = (&z.re * BigRational::from_integer(den.clone())).to_integer();
        let b = (&z.im * BigRational::from_integer(den.clone())).to_integer();
        let w = Complex::new(a, b);
        // Σ c_k w^k den^{n-k}, then divide by den^n.
        let mut acc: Complex<BigInt> = Complex::new(BigInt::from(row[n].clone()), BigInt::zero());
        let mut den_pow = BigInt::one();
        for k in (0..n).rev() {
            den_pow *= &den;
            acc = acc * w.clone() + Complex::new(BigInt::from(row[k].clone()) * &den_pow, BigInt::zero());
        }
        let scale = BigRational::from_integer(den.pow(n as u32));
        Ok(Complex::new(
            BigRational::from_integer(acc.re) / scale.clone(),
            BigRational::from_integer(acc.im) / scale,
        ))
    }

    /// `M_z(n)` exactly for integer `z`.
    pub fn m_z_integer(&self, n: usize, z: &BigInt) -> Result<BigInt> {
        let row = self.row(n)?;
        let mut acc = BigInt::zero();
        for c in row.iter().rev() {
            acc = acc * z + BigInt::from(c.clone());
        }
        Ok(acc)
    }
}

/// One term `binom(k-j+q-1, q-1) N'(n+j-k, j)` of the decomposition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionTerm {
    pub j: usize,
    #[serde(with = "crate::serde_big::biguint")]
    pub binomial_weight: BigUint,
    #[serde(with = "crate::serde_big::biguint")]
    pub n_prime_count: BigUint,
    #[serde(with = "crate::serde_big::biguint")]
    pub product: BigUint,
}

/// `N(n,k)` split by the number `j` of non-linear irreducible factors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionBreakdown {
    pub n: usize,
    pub k: usize,
    pub terms: Vec<DecompositionTerm>,
    /// Sum over `j <= split`.
    #[serde(with = "crate::serde_big::biguint")]
    pub t1: BigUint,
    /// Sum over `j > split`.
    #[serde(with = "crate::serde_big::biguint")]
    pub t2: BigUint,
    /// `log(n - k)`.
    pub y: f64,
    /// Largest `j` counted in `t1`.
    pub split: usize,
}

/// Default split factor `e·q` for the head/tail boundary `j <= e q log(n-k)`.
pub fn default_split_factor(q: FieldSize) -> f64 {
    std::f64::consts::E * q.as_f64()
}

/// Decomposes `N(n,k)` over the number of non-linear factors, with the default
/// head/tail split.
pub fn decompose(
    all: &BivariateSeries,
    no_lin: &BivariateSeries,
    n: usize,
    k: usize,
) -> Result<DecompositionBreakdown> {
    decompose_with_split(all, no_lin, n, k, default_split_factor(all.q()))
}

/// As [`decompose`], with `t1` summing `j <= ⌊split_factor · log(n-k)⌋`.
pub fn decompose_with_split(
    all: &BivariateSeries,
    no_lin: &BivariateSeries,
    n: usize,
    k: usize,
    split_factor: f64,
) -> Result<DecompositionBreakdown> {
    if all.kind() != SeriesKind::AllMonics || no_lin.kind() != SeriesKind::NoLinearFactors {
        return Err(Error::Config("decompose needs an all-monics and a no-linear series".into()));
    }
    if all.q() != no_lin.q() {
        return Err(Error::Config("series built over different fields".into()));
    }
    if k < 1 || 2 * k > n {
        return Err(Error::Hypothesis(format!("decomposition needs 1 <= k <= n/2, got n = {n}, k = {k}")));
    }
    all.check(n)?;
    no_lin.check(n)?;
    let q = all.q().get();
    let y = ((n - k) as f64).ln();
    let split = (split_factor * y).floor().max(0.0) as usize;
    let mut terms = Vec::with_capacity(k);
    let mut t1 = BigUint::zero();
    let mut t2 = BigUint::zero();
    for j in 1..=k {
        let binomial_weight = binomial((k - j) as u64 + q - 1, q - 1);
        let n_prime_count = no_lin.count_ref(n + j - k, j).clone();
        let product = &binomial_weight * &n_prime_count;
        if j <= split {
            t1 += &product;
        } else {
            t2 += &product;
        }
        terms.push(DecompositionTerm { j, binomial_weight, n_prime_count, product });
    }
    let total = all.count_ref(n, k);
    if &(&t1 + &t2) != total {
        return Err(Error::Consistency(format!(
            "t1 + t2 = {} differs from N({n},{k}) = {total}",
            &t1 + &t2
        )));
    }
    Ok(DecompositionBreakdown { n, k, terms, t1, t2, y, split })
}
