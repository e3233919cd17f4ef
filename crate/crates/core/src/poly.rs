//! Monic polynomials over a prime field `F_p`.

use std::fmt;

/// A monic polynomial stored as little-endian coefficients in `0..p`,
/// including the leading 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonicPoly {
    coeffs: Vec<u32>,
}

impl MonicPoly {
    pub fn one() -> Self {
        MonicPoly { coeffs: vec![1] }
    }

    /// Builds `t^n + lower[n-1] t^{n-1} + ... + lower[0]`, with the leading 1
    /// implicit.
    pub fn from_lower(lower: &[u32]) -> Self {
        let mut coeffs = lower.to_vec();
        coeffs.push(1);
        MonicPoly { coeffs }
    }

    /// Full coefficient vector; panics unless it is monic.
    pub fn from_coeffs(coeffs: Vec<u32>) -> Self {
        assert_eq!(coeffs.last(), Some(&1), "polynomial must be monic");
        MonicPoly { coeffs }
    }

    /// The `index`-th monic polynomial of degree `n` in lexicographic order of
    /// its lower coefficients read as a base-`p` number, constant term least
    /// significant.
    pub fn from_index(mut index: u64, n: usize, p: u32) -> Self {
        let mut coeffs = Vec::with_capacity(n + 1);
        for _ in 0..n {
            coeffs.push((index % p as u64) as u32);
            index /= p as u64;
        }
        coeffs.push(1);
        MonicPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficients below the leading one.
    pub fn lower(&self) -> &[u32] {
        &self.coeffs[..self.degree()]
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Value at `a ∈ F_p` by Horner's rule.
    pub fn eval(&self, a: u32, p: u32) -> u32 {
        let (a, p) = (a as u64, p as u64);
        self.coeffs.iter().rev().fold(0u64, |acc, &c| (acc * a + c as u64) % p) as u32
    }

    pub fn has_root(&self, p: u32) -> bool {
        (0..p).any(|a| self.eval(a, p) == 0)
    }

    pub fn mul(&self, other: &MonicPoly, p: u32) -> MonicPoly {
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % p as u64;
            }
        }
        MonicPoly { coeffs: out.into_iter().map(|c| c as u32).collect() }
    }

    /// Quotient by `divisor` when the division is exact. Division by a monic
    /// polynomial needs no field inverses.
    pub fn div_exact(&self, divisor: &MonicPoly, p: u32) -> Option<MonicPoly> {
        let n = self.degree();
        let m = divisor.degree();
        if m > n {
            return None;
        }
        let p64 = p as u64;
        let mut rem: Vec<u64> = self.coeffs.iter().map(|&c| c as u64).collect();
        let mut quot = vec![0u32; n - m + 1];
        for i in (0..=n - m).rev() {
            let c = rem[i + m] % p64;
            quot[i] = c as u32;
            if c != 0 {
                for (j, &d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = (rem[i + j] + (p64 - c) * d as u64) % p64;
                }
            }
        }
        if rem[..m].iter().any(|&r| r % p64 != 0) {
            return None;
        }
        Some(MonicPoly { coeffs: quot })
    }
}

impl fmt::Display for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{c}t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{c}t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
