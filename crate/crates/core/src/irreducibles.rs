//! Counting and enumerating monic irreducible polynomials over `F_q`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{divisors, mobius, FieldSize};
use crate::poly::MonicPoly;

/// Default cap on the number of polynomials an exhaustive routine may visit.
pub const DEFAULT_GUARD: u64 = 10_000_000;

/// `π_q(d)`, the number of monic irreducibles of degree `d`, via the Möbius
/// formula `(1/d) Σ_{e|d} μ(d/e) q^e`.
pub fn count_irreducibles(q: FieldSize, d: usize) -> Result<BigUint> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    let qb = BigInt::from(q.get());
    let mut sum = BigInt::zero();
    for e in divisors(d as u64) {
        let mu = mobius(d as u64 / e);
        if mu != 0 {
            sum += BigInt::from(mu) * qb.pow(e as u32);
        }
    }
    debug_assert!(!sum.is_negative());
    let (quot, rem) = (&sum / BigInt::from(d), &sum % BigInt::from(d));
    debug_assert!(rem.is_zero());
    Ok(quot.to_biguint().expect("non-negative count"))
}

/// Counts `π_q(1..=d_max)` and, optionally, the irreducibles themselves.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IrreducibleTable {
    q: FieldSize,
    /// `counts[d]` for `0 <= d <= d_max`, with `counts[0] = 0`.
    counts: Vec<BigUint>,
    #[serde(skip)]
    elements: Option<Vec<Vec<MonicPoly>>>,
}

impl IrreducibleTable {
    /// Counts only.
    pub fn counts(q: FieldSize, d_max: usize) -> Self {
        let powers: Vec<BigInt> = {
            let qb = BigInt::from(q.get());
            let mut v = Vec::with_capacity(d_max + 1);
            let mut acc = BigInt::one();
            for _ in 0..=d_max {
                v.push(acc.clone());
                acc *= &qb;
            }
            v
        };
        let mut counts = vec![BigUint::zero()];
        for d in 1..=d_max {
            let mut sum = BigInt::zero();
            for e in divisors(d as u64) {
                let mu = mobius(d as u64 / e);
                if mu > 0 {
                    sum += &powers[e as usize];
                } else if mu < 0 {
                    sum -= &powers[e as usize];
                }
            }
            counts.push((sum / BigInt::from(d)).to_biguint().expect("non-negative count"));
        }
        IrreducibleTable { q, counts, elements: None }
    }

    /// Exhaustive list of irreducibles up to `d_max`, each certified by trial
    /// division against every listed irreducible of lower degree.
    pub fn enumerate(q: FieldSize, d_max: usize, guard: u64) -> Result<Self> {
        let q = q.require_prime()?;
        let qf = q.as_f64();
        let visits = qf.powi(d_max as i32);
        if visits > guard as f64 {
            return Err(Error::SizeLimit { q: q.get(), degree: d_max, count: visits, guard });
        }
        let p = q.get() as u32;
        let mut elements: Vec<Vec<MonicPoly>> = vec![Vec::new()];
        for d in 1..=d_max {
            let total = (q.get()).pow(d as u32);
            let mut list = Vec::new();
            for idx in 0..total {
                let f = MonicPoly::from_index(idx, d, p);
                let reducible = (1..=d / 2)
                    .any(|e| elements[e].iter().any(|g| f.div_exact(g, p).is_some()));
                if !reducible {
                    list.push(f);
                }
            }
            elements.push(list);
        }
        let mut table = Self::counts(q, d_max);
        for d in 1..=d_max {
            if BigUint::from(elements[d].len()) != table.counts[d] {
                return Err(Error::Consistency(format!(
                    "degree {d}: enumerated {} irreducibles, Möbius count {}",
                    elements[d].len(),
                    table.counts[d]
                )));
            }
        }
        table.elements = Some(elements);
        Ok(table)
    }

    pub fn q(&self) -> FieldSize {
        self.q
    }

    pub fn d_max(&self) -> usize {
        self.counts.len() - 1
    }

    /// `π_q(d)`; zero for `d = 0` or `d > d_max`.
    pub fn count(&self, d: usize) -> BigUint {
        self.counts.get(d).cloned().unwrap_or_default()
    }

    pub fn count_ref(&self, d: usize) -> &BigUint {
        &self.counts[d]
    }

    pub fn all_counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn has_elements(&self) -> bool {
        self.elements.is_some()
    }

    /// The sorted list of degree-`d` irreducibles, if enumerated.
    pub fn elements(&self, d: usize) -> Option<&[MonicPoly]> {
        self.elements.as_ref().and_then(|e| e.get(d)).map(|v| v.as_slice())
    }

    /// Membership in the enumerated list (binary search in index order).
    pub fn contains(&self, f: &MonicPoly) -> Option<bool> {
        let list = self.elements(f.degree())?;
        Some(
            list.binary_search_by(|g| g.lower().iter().rev().cmp(f.lower().iter().rev()))
                .is_ok(),
        )
    }
}
