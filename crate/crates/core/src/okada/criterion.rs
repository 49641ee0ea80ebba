//! Okada's criterion for `L(1, f) = 0`.
//!
//! `L(1, f) = 0` exactly when, for every `a` coprime to `q`, the smooth sum
//! `Σ_{m ∈ M(q)} f(am)/m` vanishes (condition A), and for every prime `p | q`
//! the finite sum `Σ_{(r,q)>1} f(r) ε(r, p)` vanishes (condition B). The
//! cyclotomic irreducibility hypothesis holds automatically because `f` is
//! integer-valued.
//!
//! Condition B is evaluated exactly. Condition A has an infinite tail, so it is
//! enclosed in an interval `[P − T, P + T]` from the terms `m ≤ bound`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::erdosian::ErdosianFunction;
use crate::arith::sums::smooth_reciprocal_total;
use crate::arith::{rational, smooth_numbers, valuation, ExactRational, FactoredInteger};
use crate::error::{Error, Result};

/// `ε(r, p)`: `v_p(r)` when `v_p(r) < v_p(q)`, else `v_p(q) + 1/(p − 1)`.
pub fn epsilon(r: u64, p: u64, q: &FactoredInteger) -> Result<ExactRational> {
    let vq = q.valuation(p);
    if vq == 0 {
        return Err(Error::Domain(format!("{p} does not divide {}", q.n())));
    }
    if r == 0 {
        return Err(Error::Domain("ε(r, p) needs r ≥ 1".into()));
    }
    let vr = valuation(r, p);
    Ok(if vr < vq {
        ExactRational::from_integer(BigInt::from(vr))
    } else {
        ExactRational::from_integer(BigInt::from(vq)) + rational::ratio_u(1, p - 1)
    })
}

/// Condition-B sums, one per prime divisor of `q`, in increasing prime order.
pub fn condition_b(f: &ErdosianFunction) -> Vec<(u64, ExactRational)> {
    let q = f.modulus();
    q.primes()
        .map(|p| {
            let mut s = ExactRational::zero();
            for r in 1..=q.n() {
                let fr = f.value(r);
                if fr == 0 || r.gcd(&q.n()) == 1 {
                    continue;
                }
                let eps = epsilon(r, p, q).expect("p divides q");
                if fr > 0 {
                    s += eps;
                } else {
                    s -= eps;
                }
            }
            (p, s)
        })
        .collect()
}

/// Enclosure of a condition-A value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionAInterval {
    pub a: u64,
    /// Exact sum over `m ∈ M(q)`, `m ≤ bound`.
    #[serde(serialize_with = "rational::serialize")]
    pub partial: ExactRational,
    /// `Σ_{m ∈ M(q), m > bound} 1/m`.
    #[serde(serialize_with = "rational::serialize")]
    pub tail: ExactRational,
}

impl ConditionAInterval {
    pub fn lower(&self) -> ExactRational {
        &self.partial - &self.tail
    }

    pub fn upper(&self) -> ExactRational {
        &self.partial + &self.tail
    }

    pub fn excludes_zero(&self) -> bool {
        self.partial.abs() > self.tail
    }

    pub fn contains(&self, other: &ConditionAInterval) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }
}

/// Smooth numbers up to a bound and their scaled reciprocals, shared by every
/// condition-A evaluation for one modulus.
#[derive(Debug, Clone)]
pub struct ConditionAContext {
    q: u64,
    bound: u64,
    smooth: Vec<u64>,
    /// `lcm / m` for each smooth `m`.
    weights: Vec<BigInt>,
    lcm: BigInt,
    tail: ExactRational,
}

impl ConditionAContext {
    pub fn new(q: &FactoredInteger, bound: u64) -> Result<Self> {
        if q.n() < 2 {
            return Err(Error::Domain("condition A needs q ≥ 2".into()));
        }
        if bound == 0 {
            return Err(Error::Domain("condition A bound must be positive".into()));
        }
        let primes: Vec<u64> = q.primes().collect();
        let smooth = smooth_numbers(&primes, bound);
        let mut lcm = BigInt::one();
        for &m in &smooth {
            lcm = lcm.lcm(&BigInt::from(m));
        }
        let weights: Vec<BigInt> = smooth.iter().map(|&m| &lcm / BigInt::from(m)).collect();
        let mass: BigInt = weights.iter().sum();
        let tail = smooth_reciprocal_total(q) - BigRational::new(mass, lcm.clone());
        Ok(Self {
            q: q.n(),
            bound,
            smooth,
            weights,
            lcm,
            tail,
        })
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn tail(&self) -> &ExactRational {
        &self.tail
    }

    fn numerator(&self, signs: &[i8], a: u64) -> BigInt {
        let mut num = BigInt::zero();
        for (&m, w) in self.smooth.iter().zip(&self.weights) {
            let r = ((u128::from(a) * u128::from(m)) % u128::from(self.q)) as usize;
            match r {
                0 => {}
                r if signs[r - 1] > 0 => num += w,
                _ => num -= w,
            }
        }
        num
    }

    pub fn interval(&self, f: &ErdosianFunction, a: u64) -> Result<ConditionAInterval> {
        if f.q() != self.q {
            return Err(Error::Domain(
                "context built for a different modulus".into(),
            ));
        }
        if a == 0 || a >= self.q || a.gcd(&self.q) != 1 {
            return Err(Error::Domain(format!(
                "condition A needs 1 ≤ a < q with gcd(a, q) = 1, got a = {a}, q = {}",
                self.q
            )));
        }
        let partial = BigRational::new(self.numerator(f.signs(), a), self.lcm.clone());
        Ok(ConditionAInterval {
            a,
            partial,
            tail: self.tail.clone(),
        })
    }

    /// Sign test without building rationals: `|P| > T`.
    fn excludes_zero(&self, signs: &[i8], a: u64) -> bool {
        let num = self.numerator(signs, a);
        // |num| / lcm > tail.numer / tail.denom
        num.abs() * self.tail.denom() > &self.lcm * self.tail.numer()
    }
}

pub fn condition_a(f: &ErdosianFunction, a: u64, bound: u64) -> Result<ConditionAInterval> {
    ConditionAContext::new(f.modulus(), bound)?.interval(f, a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Nonzero,
    Zero,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionBValue {
    pub p: u64,
    #[serde(serialize_with = "rational::serialize")]
    pub value: ExactRational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionVerdict {
    pub outcome: Outcome,
    pub bound: u64,
    pub condition_a: Vec<ConditionAInterval>,
    pub condition_b: Vec<ConditionBValue>,
}

fn require_balanced(f: &ErdosianFunction) -> Result<()> {
    if !f.is_balanced() {
        return Err(Error::Precondition(format!(
            "period sum is {}, so L(1, f) diverges",
            f.period_sum()
        )));
    }
    Ok(())
}

/// Full verdict with evidence for every condition.
///
/// `Zero` is returned only when every condition is proven to vanish exactly,
/// which needs a zero tail; with `M(q)` infinite that never happens, so a
/// composite modulus whose intervals all straddle 0 stays `Undecided`.
pub fn criterion_verdict(f: &ErdosianFunction, bound: u64) -> Result<CriterionVerdict> {
    require_balanced(f)?;
    let ctx = ConditionAContext::new(f.modulus(), bound)?;
    let q = f.q();
    let condition_a = (1..q)
        .filter(|a| a.gcd(&q) == 1)
        .map(|a| ctx.interval(f, a))
        .collect::<Result<Vec<_>>>()?;
    let condition_b: Vec<ConditionBValue> = condition_b(f)
        .into_iter()
        .map(|(p, value)| ConditionBValue { p, value })
        .collect();

    let outcome = if condition_b.iter().any(|b| !b.value.is_zero())
        || condition_a.iter().any(ConditionAInterval::excludes_zero)
    {
        Outcome::Nonzero
    } else if condition_a
        .iter()
        .all(|c| c.partial.is_zero() && c.tail.is_zero())
    {
        Outcome::Zero
    } else {
        Outcome::Undecided
    };
    Ok(CriterionVerdict {
        outcome,
        bound,
        condition_a,
        condition_b,
    })
}

/// Outcome only, reusing a prepared context. Used by exhaustive enumeration.
pub fn criterion_outcome(ctx: &ConditionAContext, f: &ErdosianFunction) -> Result<Outcome> {
    require_balanced(f)?;
    let q = f.q();
    if condition_b(f).iter().any(|(_, v)| !v.is_zero()) {
        return Ok(Outcome::Nonzero);
    }
    let coprime: Vec<u64> = (1..q).filter(|a| a.gcd(&q) == 1).collect();
    if coprime.iter().any(|&a| ctx.excludes_zero(f.signs(), a)) {
        return Ok(Outcome::Nonzero);
    }
    let all_zero = ctx.tail.is_zero()
        && coprime
            .iter()
            .all(|&a| ctx.numerator(f.signs(), a).is_zero());
    Ok(if all_zero {
        Outcome::Zero
    } else {
        Outcome::Undecided
    })
}
