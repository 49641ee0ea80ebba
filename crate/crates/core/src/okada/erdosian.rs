use std::fmt;

use crate::arith::FactoredInteger;
use crate::error::{Error, Result};

/// A period-`q` function with values ±1 off multiples of `q` and 0 on them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErdosianFunction {
    modulus: FactoredInteger,
    /// `signs[a - 1] = f(a)` for `1 ≤ a < q`.
    signs: Vec<i8>,
}

impl ErdosianFunction {
    pub fn new(q: u64, signs: Vec<i8>) -> Result<Self> {
        if q < 2 {
            return Err(Error::Domain(format!(
                "modulus must be at least 2, got {q}"
            )));
        }
        if signs.len() as u64 != q - 1 {
            return Err(Error::Domain(format!(
                "expected {} signs for q = {q}, got {}",
                q - 1,
                signs.len()
            )));
        }
        if let Some(bad) = signs.iter().find(|s| s.abs() != 1) {
            return Err(Error::Domain(format!("sign values must be ±1, got {bad}")));
        }
        Ok(Self {
            modulus: FactoredInteger::by_trial_division(q)?,
            signs,
        })
    }

    /// Parses a string of `+`/`-` characters of length `q − 1`.
    pub fn from_sign_str(q: u64, s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(Error::Domain(format!("invalid sign character {other:?}"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        Self::new(q, signs)
    }

    pub fn q(&self) -> u64 {
        self.modulus.n()
    }

    pub fn modulus(&self) -> &FactoredInteger {
        &self.modulus
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// `f(n)`, extended periodically.
    pub fn value(&self, n: u64) -> i8 {
        match n % self.q() {
            0 => 0,
            r => self.signs[r as usize - 1],
        }
    }

    /// `Σ_{n=1}^{q} f(n)`; the series for `L(1, f)` converges exactly when this is 0.
    pub fn period_sum(&self) -> i64 {
        self.signs.iter().map(|&s| i64::from(s)).sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.period_sum() == 0
    }

    pub fn negated(&self) -> Self {
        Self {
            modulus: self.modulus.clone(),
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }
}

impl fmt::Display for ErdosianFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.signs {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn period_sums() {
        let f = ErdosianFunction::from_sign_str(5, "+--+").unwrap();
        assert_eq!(f.period_sum(), 0);
        assert!(f.is_balanced());
        assert_eq!(
            ErdosianFunction::from_sign_str(5, "+++-")
                .unwrap()
                .period_sum(),
            2
        );
        for s in ["+++", "+-+", "---", "-++"] {
            assert_eq!(
                ErdosianFunction::from_sign_str(4, s)
                    .unwrap()
                    .period_sum()
                    .rem_euclid(2),
                1
            );
        }
    }

    #[test]
    fn periodic_values() {
        let f = ErdosianFunction::from_sign_str(5, "+--+").unwrap();
        let v: Vec<i8> = (1..=11).map(|n| f.value(n)).collect();
        assert_eq!(v, vec![1, -1, -1, 1, 0, 1, -1, -1, 1, 0, 1]);
        assert_eq!(f.to_string(), "+--+");
        assert_eq!(f.negated().to_string(), "-++-");
    }

    #[test]
    fn rejects_malformed() {
        assert!(ErdosianFunction::from_sign_str(5, "+-+").is_err());
        assert!(ErdosianFunction::from_sign_str(5, "+-x+").is_err());
        assert!(ErdosianFunction::new(5, vec![1, 0, -1, 1]).is_err());
        assert!(ErdosianFunction::new(1, vec![]).is_err());
    }
}
