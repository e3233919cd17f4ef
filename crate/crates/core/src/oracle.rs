//! Brute-force factor counts over all monic polynomials of a given degree.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSize;
use crate::irreducibles::IrreducibleTable;
use crate::poly::MonicPoly;

/// Histogram of `Ω` over all monic polynomials of degree `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleTable {
    pub q: u64,
    pub n: usize,
    /// `histogram[k]` = number of degree-`n` monics with `Ω(f) = k`.
    #[serde(with = "crate::serde_big::biguint_map")]
    pub histogram: BTreeMap<usize, BigUint>,
    /// Same, restricted to polynomials with no root in `F_q`.
    #[serde(with = "crate::serde_big::biguint_map")]
    pub no_linear_histogram: BTreeMap<usize, BigUint>,
}

/// Factorization summary of a single polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorCount {
    /// Irreducible factors counted with multiplicity.
    pub omega: usize,
    /// Whether some factor has degree 1.
    pub has_linear_factor: bool,
}

/// Counts irreducible factors of `f` with multiplicity, by trial division in
/// increasing degree. Once the cofactor has no factor of degree at most half
/// its own, it is itself irreducible; that is confirmed against the table.
pub fn factor_count(f: &MonicPoly, irr: &IrreducibleTable) -> Result<FactorCount> {
    let n = f.degree();
    if !irr.has_elements() || irr.d_max() < n {
        return Err(Error::Config(format!(
            "irreducible table must be enumerated up to degree {n} (have {})",
            if irr.has_elements() { irr.d_max() } else { 0 }
        )));
    }
    let p = irr.q().get() as u32;
    let mut rem = f.clone();
    let mut omega = 0;
    let mut has_linear_factor = false;
    let mut d = 1;
    while !rem.is_one() {
        if 2 * d > rem.degree() {
            if irr.contains(&rem) != Some(true) {
                return Err(Error::Consistency(format!("cofactor {rem} of {f} is not listed as irreducible")));
            }
            has_linear_factor |= rem.degree() == 1;
            omega += 1;
            break;
        }
        for g in irr.elements(d).unwrap_or(&[]) {
            while let Some(quot) = rem.div_exact(g, p) {
                rem = quot;
                omega += 1;
                has_linear_factor |= d == 1;
            }
        }
        d += 1;
    }
    Ok(FactorCount { omega, has_linear_factor })
}

/// `Ω(f)`.
pub fn omega(f: &MonicPoly, irr: &IrreducibleTable) -> Result<usize> {
    factor_count(f, irr).map(|c| c.omega)
}

/// Factors every monic polynomial of degree `n` over the prime field `F_q`.
pub fn exhaustive_table(q: FieldSize, n: usize, guard: u64) -> Result<OracleTable> {
    let q = q.require_prime()?;
    let total = q.as_f64().powi(n as i32);
    if total > guard as f64 {
        return Err(Error::SizeLimit { q: q.get(), degree: n, count: total, guard });
    }
    let irr = IrreducibleTable::enumerate(q, n, guard)?;
    let total = q.get().pow(n as u32);
    let p = q.get() as u32;
    const CHUNK: u64 = 4096;
    let chunks = total.div_ceil(CHUNK);
    let partials: Vec<Result<(Vec<u64>, Vec<u64>)>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut all = vec![0u64; n + 1];
            let mut no_lin = vec![0u64; n + 1];
            for idx in c * CHUNK..((c + 1) * CHUNK).min(total) {
                let f = MonicPoly::from_index(idx, n, p);
                let fc = factor_count(&f, &irr)?;
                let rootless = !f.has_root(p);
                if rootless == fc.has_linear_factor {
                    return Err(Error::Consistency(format!(
                        "polynomial #{idx} ({f}): root test and linear-factor test disagree"
                    )));
                }
                all[fc.omega] += 1;
                if rootless {
                    no_lin[fc.omega] += 1;
                }
            }
            Ok((all, no_lin))
        })
        .collect();
    let mut all = vec![0u64; n + 1];
    let mut no_lin = vec![0u64; n + 1];
    for part in partials {
        let (a, b) = part?;
        for k in 0..=n {
            all[k] += a[k];
            no_lin[k] += b[k];
        }
    }
    let to_map = |v: Vec<u64>| -> BTreeMap<usize, BigUint> {
        v.into_iter().enumerate().filter(|(_, c)| *c > 0).map(|(k, c)| (k, BigUint::from(c))).collect()
    };
    Ok(OracleTable { q: q.get(), n, histogram: to_map(all), no_linear_histogram: to_map(no_lin) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::irreducibles::DEFAULT_GUARD;

    fn map(pairs: &[(usize, u32)]) -> BTreeMap<usize, BigUint> {
        pairs.iter().map(|&(k, v)| (k, BigUint::from(v))).collect()
    }

    #[test]
    fn omega_of_small_polynomials() {
        let q = FieldSize::new(2).unwrap();
        let irr = IrreducibleTable::enumerate(q, 4, DEFAULT_GUARD).unwrap();
        assert_eq!(omega(&MonicPoly::from_lower(&[0, 1, 0]), &irr).unwrap(), 3);
        assert_eq!(omega(&MonicPoly::from_lower(&[1, 1]), &irr).unwrap(), 1);
        assert_eq!(omega(&MonicPoly::from_lower(&[1, 0, 1, 0]), &irr).unwrap(), 2);
    }

    #[test]
    fn incomplete_table_is_a_configuration_error() {
        let q = FieldSize::new(2).unwrap();
        let irr = IrreducibleTable::enumerate(q, 2, DEFAULT_GUARD).unwrap();
        let f = MonicPoly::from_lower(&[1, 0, 1, 0]);
        assert!(matches!(omega(&f, &irr), Err(Error::Config(_))));
        let counts_only = IrreducibleTable::counts(q, 8);
        assert!(matches!(omega(&f, &counts_only), Err(Error::Config(_))));
    }

    #[test]
    fn small_histograms() {
        let t = exhaustive_table(FieldSize::new(2).unwrap(), 3, DEFAULT_GUARD).unwrap();
        assert_eq!(t.histogram, map(&[(1, 2), (2, 2), (3, 4)]));
        let t = exhaustive_table(FieldSize::new(2).unwrap(), 4, DEFAULT_GUARD).unwrap();
        assert_eq!(t.no_linear_histogram, map(&[(1, 3), (2, 1)]));
        let t = exhaustive_table(FieldSize::new(3).unwrap(), 2, DEFAULT_GUARD).unwrap();
        assert_eq!(t.histogram, map(&[(1, 3), (2, 6)]));
    }

    #[test]
    fn guard_and_field_checks() {
        assert!(matches!(
            exhaustive_table(FieldSize::new(3).unwrap(), 16, DEFAULT_GUARD),
            Err(Error::SizeLimit { .. })
        ));
        assert_eq!(
            exhaustive_table(FieldSize::new(4).unwrap(), 2, DEFAULT_GUARD).unwrap_err(),
            Error::NotPrimeField(4)
        );
    }
}
