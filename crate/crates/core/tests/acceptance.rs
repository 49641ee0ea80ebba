//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

#![allow(clippy::approx_constant)]

use std::time::{Duration, Instant};

use erdos_core::arith::rational::{ratio_u, to_fraction_string};
use erdos_core::arith::{
    divisor_totient_sum, smooth_sum_partial, totients, ExactRational, FactoredInteger, SpfSieve,
};
use erdos_core::certify::census;
use erdos_core::density::{
    first_moment_constant, mertens_ratio, minimize_alt, minimize_moment, moment_constant_integer,
    second_moment_constant, wirsing_check, MomentCurve, MomentEvaluator, DEFAULT_DEPTH,
};
use erdos_core::okada::brute::{brute_force_verify, BruteOptions};
use erdos_core::okada::digamma_fraction;
use num_integer::Integer;

const E_NEG_GAMMA: f64 = 0.561_459_483_6;

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(failures: &mut Vec<String>, label: &str, pass: bool, detail: impl Into<String>) {
    if !pass {
        failures.push(format!("{label}: {}", detail.into()));
    }
}

fn finish(failures: Vec<String>, notes: Vec<String>, elapsed: Duration) -> Outcome {
    let mut parts = notes;
    parts.push(format!("{:.2}s", elapsed.as_secs_f64()));
    if failures.is_empty() {
        Outcome {
            pass: true,
            detail: parts.join("; "),
        }
    } else {
        parts.extend(failures.into_iter().map(|f| format!("FAILED {f}")));
        Outcome {
            pass: false,
            detail: parts.join("; "),
        }
    }
}

fn first_moment() -> Outcome {
    let start = Instant::now();
    let est = first_moment_constant(1_000_000).expect("first moment");
    let elapsed = start.elapsed();
    let (value, tail) = (est.value, est.tail_bound);
    let mut f = Vec::new();
    check(
        &mut f,
        "value in [0.318, 0.327]",
        (0.318..=0.327).contains(&value),
        format!("{value}"),
    );
    check(&mut f, "rigorous", est.rigorous, "flag not set");
    check(&mut f, "tail < 1e-4", tail < 1e-4, format!("{tail:e}"));
    check(
        &mut f,
        "value + tail <= 0.33",
        value + tail <= 0.33,
        format!("{}", value + tail),
    );
    check(&mut f, "runtime < 5s", elapsed < Duration::from_secs(5), "");
    finish(f, vec![format!("value={value} tail={tail:e}")], elapsed)
}

/// Σ over odd 3 ≤ d1, d2 ≤ limit of 1/(φ(d1)φ(d2)[d1, d2]).
fn brute_double_sum(limit: u64) -> f64 {
    let phi = totients(limit);
    let ds: Vec<u64> = (3..=limit).step_by(2).collect();
    let mut total = 0.0;
    for &a in &ds {
        let mut row = 0.0;
        for &b in &ds {
            row += 1.0 / (phi[b as usize] as f64 * a.lcm(&b) as f64);
        }
        total += row / phi[a as usize] as f64;
    }
    total
}

fn second_moment() -> Outcome {
    let start = Instant::now();
    let est = second_moment_constant(1_000_000, DEFAULT_DEPTH).expect("second moment");
    let lower = brute_double_sum(10_000);
    let elapsed = start.elapsed();
    let mut f = Vec::new();
    check(
        &mut f,
        "value in [0.19, 0.22]",
        (0.19..=0.22).contains(&est.value),
        format!("{}", est.value),
    );
    check(
        &mut f,
        "value <= 0.22",
        est.value <= 0.22,
        format!("{}", est.value),
    );
    check(
        &mut f,
        "double sum <= value",
        lower <= est.value,
        format!("{lower} > {}", est.value),
    );
    check(
        &mut f,
        "runtime < 30s",
        elapsed < Duration::from_secs(30),
        "",
    );
    finish(
        f,
        vec![format!(
            "value={} tail={:e} double_sum(1e4)={lower}",
            est.value, est.tail_bound
        )],
        elapsed,
    )
}

fn fractional_moment(curve: &MomentCurve, build: Duration) -> Outcome {
    let start = Instant::now();
    let report = minimize_moment(MomentEvaluator::Empirical(curve), (1.0, 10.0)).expect("minimize");
    let elapsed = build + start.elapsed();
    let mut f = Vec::new();
    check(
        &mut f,
        "r* in [3.3, 4.4]",
        (3.3..=4.4).contains(&report.exponent_star),
        format!("{}", report.exponent_star),
    );
    check(
        &mut f,
        "value <= 0.20",
        report.value <= 0.20,
        format!("{}", report.value),
    );
    check(&mut f, "interior", report.interior, "minimizer on boundary");
    check(
        &mut f,
        "runtime < 600s",
        elapsed < Duration::from_secs(600),
        "",
    );
    finish(
        f,
        vec![format!(
            "r*={} value={}",
            report.exponent_star, report.value
        )],
        elapsed,
    )
}

fn alternative() -> Outcome {
    let start = Instant::now();
    let report = minimize_alt(1_000_000, DEFAULT_DEPTH, (1.0, 16.0)).expect("alt-min");
    let elapsed = start.elapsed();
    let (alpha, value) = (report.exponent_star, report.value);
    let mut f = Vec::new();
    check(
        &mut f,
        "alpha* in [7, 9.5]",
        (7.0..=9.5).contains(&alpha),
        format!("{alpha}"),
    );
    check(
        &mut f,
        "value in [0.17, 0.22]",
        (0.17..=0.22).contains(&value),
        format!("{value}"),
    );
    let p2 = report.p2.as_ref();
    check(
        &mut f,
        "p2 truncation recorded",
        p2.is_some_and(|p| p.prime_limit == 1_000_000 && p.depth.is_some() && !p.rigorous),
        format!("{p2:?}"),
    );
    check(
        &mut f,
        "runtime < 60s",
        elapsed < Duration::from_secs(60),
        "",
    );
    let p2_value = p2.map_or(f64::NAN, |p| p.value);
    finish(
        f,
        vec![format!("alpha*={alpha} value={value} p2={p2_value}")],
        elapsed,
    )
}

fn cross_validation(curve: &MomentCurve) -> Outcome {
    let start = Instant::now();
    let first = first_moment_constant(1_000_000).expect("first").value;
    let second = second_moment_constant(1_000_000, DEFAULT_DEPTH)
        .expect("second")
        .value;
    let fourth = moment_constant_integer(4, 1_000_000, DEFAULT_DEPTH)
        .expect("fourth")
        .value;
    let (e1, e2, e4) = (
        curve.normalized_sum(1.0),
        curve.normalized_sum(2.0),
        curve.normalized_sum(4.0),
    );
    let elapsed = start.elapsed();
    let mut f = Vec::new();
    check(
        &mut f,
        "|M1 - first| <= 0.01",
        (e1 - first).abs() <= 0.01,
        format!("{}", (e1 - first).abs()),
    );
    check(
        &mut f,
        "|M2 - second| <= 0.015",
        (e2 - second).abs() <= 0.015,
        format!("{}", (e2 - second).abs()),
    );
    check(
        &mut f,
        "integer r=4 within 10%",
        (fourth - e4).abs() <= 0.1 * e4,
        format!("{fourth} vs {e4}"),
    );
    finish(
        f,
        vec![format!(
            "M1={e1} first={first} M2={e2} second={second} M4={e4} integer4={fourth}"
        )],
        elapsed,
    )
}

fn brute_force() -> Outcome {
    let start = Instant::now();
    let mut f = Vec::new();
    let mut notes = Vec::new();
    for (q, expected, prime) in [(5u64, 6u64, true), (9, 70, false), (13, 924, true)] {
        let r = brute_force_verify(q, &BruteOptions::default()).expect("brute force");
        check(
            &mut f,
            &format!("q={q} enumerated"),
            r.enumerated == expected,
            format!("{}", r.enumerated),
        );
        check(&mut f, &format!("q={q} all nonzero"), r.all_nonzero, "");
        if prime {
            check(
                &mut f,
                &format!("q={q} criterion nonzero for all"),
                r.criterion_nonzero == r.enumerated,
                format!("{}/{}", r.criterion_nonzero, r.enumerated),
            );
        }
        if q == 5 {
            check(
                &mut f,
                "q=5 min",
                (r.min_abs_value - 0.430_408_94).abs() <= 1e-6,
                format!("{}", r.min_abs_value),
            );
        }
        notes.push(format!("q={q} min={:.8}", r.min_abs_value));
    }
    let elapsed = start.elapsed();
    check(
        &mut f,
        "runtime < 10s",
        elapsed < Duration::from_secs(10),
        "",
    );
    finish(f, notes, elapsed)
}

fn census_check() -> Outcome {
    let start = Instant::now();
    let report = census(100_000, 1).expect("census");
    let elapsed = start.elapsed();
    let below: Vec<u64> = report
        .unknown_moduli
        .iter()
        .copied()
        .filter(|&q| q < 106)
        .collect();
    let expected_total = (5..=100_000u64).filter(|q| q % 4 == 1).count() as u64;
    let frac = report.unknown_fraction;
    let mut f = Vec::new();
    check(
        &mut f,
        "every modulus classified",
        report.total == expected_total,
        format!("{}", report.total),
    );
    check(
        &mut f,
        "certified + unknown = total",
        report.certified + report.unknown == report.total,
        "",
    );
    check(
        &mut f,
        "unknown fraction <= 0.18",
        frac <= 0.18,
        format!("{frac}"),
    );
    check(
        &mut f,
        "only unknown below 106 is 105",
        below == [105],
        format!("{below:?}"),
    );
    check(
        &mut f,
        "runtime < 60s",
        elapsed < Duration::from_secs(60),
        "",
    );
    finish(
        f,
        vec![format!("unknown={} fraction={frac}", report.unknown)],
        elapsed,
    )
}

fn mertens() -> Outcome {
    let start = Instant::now();
    let ratio = mertens_ratio(100_000_000).expect("mertens");
    let elapsed = start.elapsed();
    let rel = (ratio - E_NEG_GAMMA).abs() / E_NEG_GAMMA;
    let mut f = Vec::new();
    check(&mut f, "within 1%", rel <= 0.01, format!("{rel}"));
    check(
        &mut f,
        "runtime < 120s",
        elapsed < Duration::from_secs(120),
        "",
    );
    finish(f, vec![format!("ratio={ratio} rel_err={rel:e}")], elapsed)
}

fn wirsing() -> Outcome {
    let start = Instant::now();
    let w = wirsing_check(1.0, 10_000_000).expect("wirsing");
    let elapsed = start.elapsed();
    let mut f = Vec::new();
    check(
        &mut f,
        "ratio in [0.95, 1.05]",
        (0.95..=1.05).contains(&w.ratio),
        format!("{}", w.ratio),
    );
    finish(f, vec![format!("ratio={}", w.ratio)], elapsed)
}

fn exact_identities() -> Outcome {
    let start = Instant::now();
    let mut f = Vec::new();

    for d in [3u64, 9, 15, 105] {
        let fd = FactoredInteger::by_trial_division(d).expect("factor");
        let expected = ratio_u(d, fd.phi());
        for bound in [1u64, d, 1000, 100_000] {
            let b = smooth_sum_partial(&fd, bound).expect("bracket");
            let total: ExactRational = &b.partial + &b.tail;
            check(
                &mut f,
                &format!("bracket d={d} bound={bound}"),
                total == expected,
                to_fraction_string(&total),
            );
        }
    }

    let sieve = SpfSieve::new(100_000).expect("sieve");
    let mut squarefree = 0;
    for q in (3..=10_000u64).step_by(2) {
        let fq = FactoredInteger::from_sieve(q, &sieve).expect("factor");
        if fq.factors().iter().any(|&(_, e)| e > 1) {
            continue;
        }
        squarefree += 1;
        let product = fq
            .primes()
            .fold(ratio_u(1, 1), |acc, p| acc * ratio_u(p, p - 1))
            - ratio_u(1, 1);
        let sum = divisor_totient_sum(&fq).expect("odd");
        if sum != product {
            check(
                &mut f,
                &format!("squarefree product q={q}"),
                false,
                to_fraction_string(&sum),
            );
        }
    }

    let one = ratio_u(1, 1);
    let mut implications = 0;
    for q in (3..=100_000u64).step_by(2) {
        let fq = FactoredInteger::from_sieve(q, &sieve).expect("factor");
        if fq.smallest_prime().expect("q > 1") >= fq.num_divisors() {
            implications += 1;
            let sum = divisor_totient_sum(&fq).expect("odd");
            if sum >= one {
                check(
                    &mut f,
                    &format!("spf >= d(q) => sum < 1 at q={q}"),
                    false,
                    to_fraction_string(&sum),
                );
            }
        }
    }

    let mut worst: f64 = 0.0;
    for q in 2..=50u64 {
        for a in 1..q {
            let x = a as f64 / q as f64;
            let lhs =
                digamma_fraction(q - a, q).expect("psi") - digamma_fraction(a, q).expect("psi");
            let rhs = std::f64::consts::PI / (std::f64::consts::PI * x).tan();
            worst = worst.max((lhs - rhs).abs());
        }
    }
    check(
        &mut f,
        "reflection to 1e-10",
        worst <= 1e-10,
        format!("{worst:e}"),
    );

    let elapsed = start.elapsed();
    finish(
        f,
        vec![format!(
            "squarefree={squarefree} spf>=d(q) cases={implications} reflection max err={worst:e}"
        )],
        elapsed,
    )
}

fn main() {
    let build = Instant::now();
    let curve = MomentCurve::new(10_000_000, 1).expect("moment curve");
    let build = build.elapsed();

    let results = [
        ("1 first-moment constant", first_moment()),
        ("2 second-moment constant", second_moment()),
        (
            "3 fractional-moment minimization",
            fractional_moment(&curve, build),
        ),
        ("4 alternative bound", alternative()),
        ("5 cross-validation", cross_validation(&curve)),
        ("6 brute force", brute_force()),
        ("7 certification census", census_check()),
        ("8 mertens", mertens()),
        ("9 wirsing", wirsing()),
        ("10 exact identities", exact_identities()),
    ];

    let mut failed = 0;
    for (name, outcome) in &results {
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {name}: {tag} ({})", outcome.detail);
        failed += usize::from(!outcome.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
