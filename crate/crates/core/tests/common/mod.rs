#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigUint;

/// Full coefficient vectors, constant term first, leading 1 last.
pub type Poly = Vec<u32>;

pub fn mul(a: &Poly, b: &Poly, p: u32) -> Poly {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

pub fn monics(p: u32, n: usize) -> Vec<Poly> {
    let mut all = vec![vec![1u32]];
    for _ in 0..n {
        let mut next = Vec::with_capacity(all.len() * p as usize);
        for c in 0..p {
            for f in &all {
                let mut g = vec![c];
                g.extend_from_slice(f);
                next.push(g);
            }
        }
        all = next;
    }
    all
}

/// `Ω` for every monic of degree `1..=n`, by multiplying out all products.
pub fn omega_map(p: u32, n: usize) -> HashMap<Poly, usize> {
    let mut omega: HashMap<Poly, usize> = HashMap::new();
    omega.insert(vec![1], 0);
    for d in 1..=n {
        let mut reducible: HashMap<Poly, usize> = HashMap::new();
        for i in 1..d {
            for a in monics(p, i) {
                let oa = omega[&a];
                for b in monics(p, d - i) {
                    reducible.insert(mul(&a, &b, p), oa + omega[&b]);
                }
            }
        }
        for f in monics(p, d) {
            let o = reducible.get(&f).copied().unwrap_or(1);
            omega.insert(f, o);
        }
    }
    omega
}

pub fn has_root(f: &Poly, p: u32) -> bool {
    (0..p).any(|a| f.iter().rev().fold(0u32, |acc, &c| (acc * a + c) % p) == 0)
}

fn mobius(n: u64) -> i64 {
    let mut m = n;
    let mut r = 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            m /= d;
            if m % d == 0 {
                return 0;
            }
            r = -r;
        }
        d += 1;
    }
    if m > 1 {
        r = -r;
    }
    r
}

/// `π_q(d)` as a float, from the necklace formula.
pub fn pi_f64(q: u64, d: usize) -> f64 {
    let mut s = 0.0;
    for e in 1..=d {
        if d % e == 0 {
            s += mobius((d / e) as u64) as f64 * (q as f64).powi(e as i32);
        }
    }
    s / d as f64
}

pub fn binom(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Coefficient table `N(n,k)` by brute force over all monics up to degree `n`.
pub fn brute_rows(p: u32, n: usize, no_linear: bool) -> Vec<Vec<u64>> {
    let omega = omega_map(p, n);
    let mut rows = vec![vec![0u64; n + 1]; n + 1];
    rows[0][0] = 1;
    for (f, &o) in &omega {
        let d = f.len() - 1;
        if d == 0 || (no_linear && has_root(f, p)) {
            continue;
        }
        rows[d][o] += 1;
    }
    rows
}
