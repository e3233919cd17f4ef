//! Field sizes and elementary arithmetic functions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Size `q = p^e` of a finite field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct FieldSize {
    q: u64,
    p: u64,
    e: u32,
}

impl FieldSize {
    /// Validates that `q` is a prime power; `q < 2^32` keeps coefficient
    /// products inside `u64`.
    pub fn new(q: u64) -> Result<Self> {
        if !(2..(1u64 << 32)).contains(&q) {
            return Err(Error::NotPrimePower(q));
        }
        let f = factorize(q);
        if f.len() != 1 {
            return Err(Error::NotPrimePower(q));
        }
        Ok(FieldSize { q, p: f[0].0, e: f[0].1 })
    }

    pub fn get(self) -> u64 {
        self.q
    }

    pub fn characteristic(self) -> u64 {
        self.p
    }

    pub fn is_prime(self) -> bool {
        self.e == 1
    }

    pub fn as_f64(self) -> f64 {
        self.q as f64
    }

    /// Fails unless `q` is prime.
    pub fn require_prime(self) -> Result<Self> {
        if self.is_prime() {
            Ok(self)
        } else {
            Err(Error::NotPrimeField(self.q))
        }
    }
}

impl TryFrom<u64> for FieldSize {
    type Error = Error;
    fn try_from(q: u64) -> Result<Self> {
        FieldSize::new(q)
    }
}

impl From<FieldSize> for u64 {
    fn from(q: FieldSize) -> u64 {
        q.q
    }
}

impl fmt::Display for FieldSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q)
    }
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The Möbius function.
pub fn mobius(n: u64) -> i8 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
