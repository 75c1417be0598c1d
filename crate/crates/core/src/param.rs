//! The accuracy parameter ε as an exact rational.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EpsilonError {
    #[error("epsilon must lie in (0, 1], got {0}")]
    OutOfRange(String),
    #[error("cannot parse epsilon from {0:?}")]
    Parse(String),
}

/// ε ∈ (0, 1], stored exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Epsilon(Ratio<i64>);

impl Epsilon {
    pub fn new(numer: i64, denom: i64) -> Result<Self, EpsilonError> {
        if denom == 0 {
            return Err(EpsilonError::Parse(format!("{numer}/{denom}")));
        }
        let r = Ratio::new(numer, denom);
        if r <= Ratio::from_integer(0) || r > Ratio::from_integer(1) {
            return Err(EpsilonError::OutOfRange(r.to_string()));
        }
        Ok(Epsilon(r))
    }

    pub fn half() -> Self {
        Epsilon(Ratio::new(1, 2))
    }

    pub fn ratio(self) -> Ratio<i64> {
        self.0
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    /// ⌈x / ε⌉.
    pub fn ceil_div(self, x: i64) -> i64 {
        Integer::div_ceil(&(x * self.denom()), &self.numer())
    }

    /// ⌈(1 − ε)·k⌉.
    pub fn ceil_keep(self, k: usize) -> usize {
        let num = (self.denom() - self.numer()) * k as i64;
        Integer::div_ceil(&num, &self.denom()) as usize
    }

    /// ⌈ε·k⌉.
    pub fn ceil_times(self, k: usize) -> usize {
        Integer::div_ceil(&(self.numer() * k as i64), &self.denom()) as usize
    }

    /// ⌈ε^{-e}⌉, saturating at `u64::MAX`.
    pub fn ceil_inverse_pow(self, e: u32) -> u64 {
        let num = (self.denom() as u128).checked_pow(e);
        let den = (self.numer() as u128).checked_pow(e);
        match (num, den) {
            (Some(n), Some(d)) => u64::try_from(n.div_ceil(d)).unwrap_or(u64::MAX),
            _ => u64::MAX,
        }
    }

    /// ε / m as a new parameter.
    pub fn divided_by(self, m: i64) -> Self {
        Epsilon(self.0 / Ratio::from_integer(m))
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Epsilon {
    type Err = EpsilonError;

    /// Accepts `p/q` or a plain decimal such as `0.25`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || EpsilonError::Parse(s.to_string());
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            return Epsilon::new(p, q);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 12 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let int: i64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let scale = 10i64.pow(frac.len() as u32);
        let frac_val: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        Epsilon::new(int * scale + frac_val, scale)
    }
}

impl TryFrom<String> for Epsilon {
    type Error = EpsilonError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Epsilon> for String {
    fn from(e: Epsilon) -> String {
        e.to_string()
    }
}
