//! Sieve-based prime utilities.

use serde::{Deserialize, Serialize};

/// `is[k]` for `k ≤ n`.
pub fn sieve(n: usize) -> Vec<bool> {
    let mut is = vec![true; n + 1];
    for k in [0, 1] {
        if k <= n {
            is[k] = false;
        }
    }
    let mut i = 2;
    while i * i <= n {
        if is[i] {
            for j in (i * i..=n).step_by(i) {
                is[j] = false;
            }
        }
        i += 1;
    }
    is
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_count(n: usize) -> usize {
    sieve(n).iter().filter(|&&b| b).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrimeBound {
    pub n: u64,
    pub pi: u64,
    /// `n / ln n`.
    pub bound: f64,
    pub holds: bool,
}

/// `π(n)` against `n / ln n`. The inequality is only claimed for `n ≥ 17`.
pub fn prime_bound_check(n: u64) -> PrimeBound {
    let pi = prime_count(n as usize) as u64;
    let bound = n as f64 / (n as f64).ln();
    PrimeBound {
        n,
        pi,
        bound,
        holds: pi as f64 > bound,
    }
}

/// Every `n` in `lo..=hi` with one sieve: `(n, π(n), holds)`.
pub fn prime_bound_sweep(lo: u64, hi: u64) -> Vec<PrimeBound> {
    let is = sieve(hi as usize);
    let mut pi = 0u64;
    let mut out = Vec::new();
    for n in 0..=hi {
        if is[n as usize] {
            pi += 1;
        }
        if n >= lo {
            let bound = n as f64 / (n as f64).ln();
            out.push(PrimeBound {
                n,
                pi,
                bound,
                holds: pi as f64 > bound,
            });
        }
    }
    out
}

/// Primes in `lo..=hi`.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    if hi < lo {
        return vec![];
    }
    let is = sieve(hi as usize);
    (lo..=hi).filter(|&k| is[k as usize]).collect()
}
