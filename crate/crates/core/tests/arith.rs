use erdos_core::arith::rational::ratio_u;
use erdos_core::arith::{
    divisor_totient_sum, smooth_numbers, smooth_sum_partial, ExactRational, FactoredInteger,
    SpfSieve,
};
use num_integer::Integer;
use proptest::prelude::*;

fn factor(n: u64) -> FactoredInteger {
    FactoredInteger::by_trial_division(n).unwrap()
}

proptest! {
    #[test]
    fn phi_and_divisor_count_are_multiplicative(a in 1u64..=1_000_000, b in 1u64..=1_000_000) {
        prop_assume!(a.gcd(&b) == 1);
        let (fa, fb, fab) = (factor(a), factor(b), factor(a * b));
        prop_assert_eq!(fab.phi(), fa.phi() * fb.phi());
        prop_assert_eq!(fab.num_divisors(), fa.num_divisors() * fb.num_divisors());
    }
}

#[test]
fn squarefree_sum_is_a_product() {
    let sieve = SpfSieve::new(10_000).unwrap();
    for q in (3..=10_000u64).step_by(2) {
        let fq = FactoredInteger::from_sieve(q, &sieve).unwrap();
        if fq.factors().iter().all(|&(_, e)| e == 1) {
            let product = fq
                .primes()
                .fold(ratio_u(1, 1), |acc, p| acc * ratio_u(p, p - 1))
                - ratio_u(1, 1);
            assert_eq!(divisor_totient_sum(&fq).unwrap(), product, "q = {q}");
        }
    }
}

#[test]
fn smooth_bracket_is_exact() {
    let sieve = SpfSieve::new(1000).unwrap();
    for d in 2..=1000u64 {
        let fd = FactoredInteger::from_sieve(d, &sieve).unwrap();
        let total = ratio_u(d, fd.phi());
        for bound in [1, 7, d, 1000, 1_000_000] {
            let b = smooth_sum_partial(&fd, bound).unwrap();
            assert!(b.partial <= total, "d = {d}, bound = {bound}");
            let sum: ExactRational = &b.partial + &b.tail;
            assert_eq!(sum, total, "d = {d}, bound = {bound}");
        }
    }
}

#[test]
fn smooth_numbers_have_only_allowed_primes() {
    let primes = [3u64, 7, 11];
    let ms = smooth_numbers(&primes, 100_000);
    let brute: Vec<u64> = (1..=100_000u64)
        .filter(|&n| {
            let mut m = n;
            for p in primes {
                while m % p == 0 {
                    m /= p;
                }
            }
            m == 1
        })
        .collect();
    let mut sorted = ms.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, brute);
}

#[test]
fn factorization_reconstructs() {
    let sieve = SpfSieve::new(1_000_000).unwrap();
    for n in 2..=1_000_000u64 {
        let f = FactoredInteger::from_sieve(n, &sieve).unwrap();
        let back: u64 = f.factors().iter().map(|&(p, e)| p.pow(e)).product();
        assert_eq!(back, n);
    }
}
