use serde::Serialize;

use super::sieve::SpfSieve;
use crate::error::{Error, Result};

/// A positive integer together with its prime factorization.
///
/// Factors are `(p, e)` pairs with strictly increasing primes and `e ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactoredInteger {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    /// The integer 1 (empty factorization).
    pub fn one() -> Self {
        Self {
            n: 1,
            factors: Vec::new(),
        }
    }

    /// Builds from an explicit factorization. Primality of the bases is the
    /// caller's responsibility; ordering, exponents and overflow are checked.
    pub fn from_factors(factors: Vec<(u64, u32)>) -> Result<Self> {
        let mut n: u64 = 1;
        for (i, &(p, e)) in factors.iter().enumerate() {
            if p < 2 || e == 0 {
                return Err(Error::Domain(format!("invalid factor {p}^{e}")));
            }
            if i > 0 && factors[i - 1].0 >= p {
                return Err(Error::Domain(
                    "factor primes must be strictly increasing".into(),
                ));
            }
            n = p
                .checked_pow(e)
                .and_then(|pe| n.checked_mul(pe))
                .ok_or_else(|| Error::Resource("factored integer overflows u64".into()))?;
        }
        Ok(Self { n, factors })
    }

    /// Factorization read off a smallest-prime-factor sieve.
    pub fn from_sieve(n: u64, sieve: &SpfSieve) -> Result<Self> {
        if n == 1 {
            return Ok(Self::one());
        }
        if n == 0 || n > sieve.limit() {
            return Err(Error::OutOfRange {
                value: n,
                limit: sieve.limit(),
            });
        }
        let mut factors: Vec<(u64, u32)> = Vec::new();
        let mut m = n;
        while m > 1 {
            let p = sieve.spf(m).expect("m within sieve range");
            match factors.last_mut() {
                Some((last, e)) if *last == p => *e += 1,
                _ => factors.push((p, 1)),
            }
            m /= p;
        }
        Ok(Self { n, factors })
    }

    /// Deterministic trial division up to √n, for isolated values.
    pub fn by_trial_division(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("cannot factor 0".into()));
        }
        let mut factors = Vec::new();
        let mut m = n;
        let mut p = 2u64;
        while p.saturating_mul(p) <= m {
            if m.is_multiple_of(p) {
                let mut e = 0;
                while m.is_multiple_of(p) {
                    m /= p;
                    e += 1;
                }
                factors.push((p, e));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if m > 1 {
            factors.push((m, 1));
        }
        Ok(Self { n, factors })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_prime(&self) -> bool {
        matches!(self.factors.as_slice(), [(_, 1)])
    }

    pub fn is_odd(&self) -> bool {
        self.n % 2 == 1
    }

    /// Smallest prime factor, `None` for 1.
    pub fn smallest_prime(&self) -> Option<u64> {
        self.factors.first().map(|&(p, _)| p)
    }

    /// Euler's totient φ(n).
    pub fn phi(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| (p - 1) * p.pow(e - 1))
            .product()
    }

    /// Number of divisors d(n).
    pub fn num_divisors(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(_, e)| u64::from(e) + 1)
            .product()
    }

    /// Exponent of `p` in n.
    pub fn valuation(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// Product of the distinct primes.
    pub fn radical(&self) -> FactoredInteger {
        let factors: Vec<_> = self.factors.iter().map(|&(p, _)| (p, 1)).collect();
        let n = factors.iter().map(|&(p, _)| p).product();
        FactoredInteger { n, factors }
    }

    /// All divisors in increasing order, each with its factorization.
    pub fn factored_divisors(&self) -> Vec<FactoredInteger> {
        let mut out = vec![FactoredInteger::one()];
        for &(p, e) in &self.factors {
            let len = out.len();
            for k in 1..=e {
                let pk = p.pow(k);
                for i in 0..len {
                    let mut factors = out[i].factors.clone();
                    factors.push((p, k));
                    let n = out[i].n * pk;
                    out.push(FactoredInteger { n, factors });
                }
            }
        }
        out.sort_by_key(|d| d.n);
        out
    }

    pub fn divisors(&self) -> Vec<u64> {
        self.factored_divisors().into_iter().map(|d| d.n).collect()
    }
}

/// Exponent of prime `p` in `r` (`r ≥ 1`).
pub fn valuation(mut r: u64, p: u64) -> u32 {
    debug_assert!(r > 0 && p >= 2);
    let mut e = 0;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    e
}
