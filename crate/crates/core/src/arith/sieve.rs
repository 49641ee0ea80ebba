//! Smallest-prime-factor, prime and totient sieves.

use crate::error::{Error, Result};

/// Default memory budget for a smallest-prime-factor table, in bytes.
pub const DEFAULT_SIEVE_BUDGET_BYTES: u64 = 1 << 30;

/// Table of smallest prime factors for `2 ≤ n ≤ limit`.
///
/// Built once, then shared read-only.
#[derive(Debug, Clone)]
pub struct SpfSieve {
    limit: u64,
    spf: Vec<u32>,
}

impl SpfSieve {
    pub fn new(limit: u64) -> Result<Self> {
        Self::with_budget(limit, DEFAULT_SIEVE_BUDGET_BYTES)
    }

    pub fn with_budget(limit: u64, budget_bytes: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::Domain(format!(
                "sieve limit must be at least 2, got {limit}"
            )));
        }
        let bytes = (limit + 1).saturating_mul(std::mem::size_of::<u32>() as u64);
        if limit > u64::from(u32::MAX) || bytes > budget_bytes {
            return Err(Error::Resource(format!(
                "sieve up to {limit} needs {bytes} bytes, budget is {budget_bytes} bytes"
            )));
        }
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        for i in 2..=n {
            if spf[i] != 0 {
                continue;
            }
            spf[i] = i as u32;
            let Some(start) = i.checked_mul(i) else {
                continue;
            };
            let mut j = start;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
        Ok(Self { limit, spf })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Smallest prime factor of `n`, or `None` outside `[2, limit]`.
    pub fn spf(&self, n: u64) -> Option<u64> {
        if n < 2 || n > self.limit {
            return None;
        }
        Some(u64::from(self.spf[n as usize]))
    }

    pub fn is_prime(&self, n: u64) -> bool {
        self.spf(n) == Some(n)
    }

    /// Primes up to the sieve limit, in increasing order.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        (2..=self.limit).filter(move |&n| self.spf[n as usize] as u64 == n)
    }
}

/// All primes `p ≤ limit` in increasing order (segmented sieve of Eratosthenes).
pub fn primes_up_to(limit: u64) -> Vec<u32> {
    let mut out = Vec::new();
    for_each_prime(limit, |p| out.push(p as u32));
    out
}

/// Calls `f` on every prime `p ≤ limit` in increasing order.
pub fn for_each_prime(limit: u64, mut f: impl FnMut(u64)) {
    if limit < 2 {
        return;
    }
    assert!(
        limit <= u64::from(u32::MAX),
        "prime sieve limit {limit} exceeds u32 range"
    );
    f(2);
    let root = (limit as f64).sqrt() as u64 + 1;
    let mut base = vec![true; root as usize + 1];
    let mut small = Vec::new();
    for i in 2..=root as usize {
        if base[i] {
            if i > 2 {
                small.push(i as u64);
            }
            let mut j = i * i;
            while j <= root as usize {
                base[j] = false;
                j += i;
            }
        }
    }

    // Segments cover odd numbers only; slot k of a segment starting at `lo` is lo + 2k.
    const SEGMENT: u64 = 1 << 18;
    let mut seg = vec![true; SEGMENT as usize];
    let mut lo = 3u64;
    while lo <= limit {
        let hi = (lo + 2 * SEGMENT - 2).min(limit);
        let slots = ((hi - lo) / 2 + 1) as usize;
        seg[..slots].fill(true);
        for &p in &small {
            if p * p > hi {
                break;
            }
            let mut start = (p * p).max(lo.div_ceil(p) * p);
            if start % 2 == 0 {
                start += p;
            }
            let mut j = start;
            while j <= hi {
                seg[((j - lo) / 2) as usize] = false;
                j += 2 * p;
            }
        }
        for (k, &is_p) in seg[..slots].iter().enumerate() {
            if is_p {
                f(lo + 2 * k as u64);
            }
        }
        lo = hi + 2;
    }
}

/// Euler's totient for every `0 ≤ n ≤ limit` (entry 0 is 0).
pub fn totients(limit: u64) -> Vec<u32> {
    assert!(
        limit <= u64::from(u32::MAX),
        "totient sieve limit {limit} exceeds u32 range"
    );
    let n = limit as usize;
    let mut phi: Vec<u32> = (0..=n as u32).collect();
    for i in 2..=n {
        if phi[i] == i as u32 {
            let mut j = i;
            while j <= n {
                phi[j] -= phi[j] / i as u32;
                j += i;
            }
        }
    }
    phi
}
