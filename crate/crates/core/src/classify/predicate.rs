use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{divides, MeanKind};
use crate::arith::{gcd, sigma_k, DivisorFunctions, PrimePower};
use crate::error::{Error, Result};

/// A number class that can be tested from a factorization and its divisor
/// functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Predicate {
    Harmonic,
    UnitaryHarmonic,
    BiunitaryHarmonic,
    /// H1..H6 number; holds the 1-based index.
    HNumber(u8),
    Perfect,
    /// sigma(n) = k n for some k.
    MultiPerfect,
    UnitaryPerfect,
    /// sigma**(n) = 2n.
    BiunitaryPerfect,
    /// sigma**(n) = k n for some k.
    BiunitaryMultiPerfect,
    Balanced,
    Friendly,
    Powerful,
    PerfectSquare,
    Squarefree,
    KHarmonic(u32),
}

impl Predicate {
    /// Tests the predicate on `n` with its factors and precomputed functions.
    #[inline]
    pub fn eval(&self, n: u64, factors: &[PrimePower], f: &DivisorFunctions) -> Result<bool> {
        let n128 = n as u128;
        Ok(match *self {
            Predicate::Harmonic => f.mean_is_integer(n128, MeanKind::H)?,
            Predicate::UnitaryHarmonic => f.mean_is_integer(n128, MeanKind::HStar)?,
            Predicate::BiunitaryHarmonic => f.mean_is_integer(n128, MeanKind::HBistar)?,
            Predicate::HNumber(i) => f.mean_is_integer(n128, MeanKind::MIXED[i as usize - 1])?,
            Predicate::Perfect => f.sigma == 2 * n128,
            Predicate::MultiPerfect => divides(n128, f.sigma),
            Predicate::UnitaryPerfect => f.sigma_star == 2 * n128,
            Predicate::BiunitaryPerfect => f.sigma_bistar == 2 * n128,
            Predicate::BiunitaryMultiPerfect => divides(n128, f.sigma_bistar),
            Predicate::Balanced => balanced(n, f),
            Predicate::Friendly => friendly(n, f),
            Predicate::Powerful => powerful(factors),
            Predicate::PerfectSquare => square(factors),
            Predicate::Squarefree => squarefree(factors),
            Predicate::KHarmonic(k) => k_harmonic(n, factors, k)?,
        })
    }

    pub fn name(&self) -> String {
        match self {
            Predicate::Harmonic => "harmonic".into(),
            Predicate::UnitaryHarmonic => "unitary-harmonic".into(),
            Predicate::BiunitaryHarmonic => "biunitary-harmonic".into(),
            Predicate::HNumber(i) => format!("h{i}"),
            Predicate::Perfect => "perfect".into(),
            Predicate::MultiPerfect => "multiperfect".into(),
            Predicate::UnitaryPerfect => "unitary-perfect".into(),
            Predicate::BiunitaryPerfect => "biunitary-perfect".into(),
            Predicate::BiunitaryMultiPerfect => "biunitary-multiperfect".into(),
            Predicate::Balanced => "balanced".into(),
            Predicate::Friendly => "friendly".into(),
            Predicate::Powerful => "powerful".into(),
            Predicate::PerfectSquare => "square".into(),
            Predicate::Squarefree => "squarefree".into(),
            Predicate::KHarmonic(k) => format!("k-harmonic:{k}"),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        if let Some(k) = lower.strip_prefix("k-harmonic:") {
            let k: u32 = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad k in predicate {s:?}")))?;
            if k == 0 {
                return Err(Error::Parse("k-harmonic needs k >= 1".into()));
            }
            return Ok(Predicate::KHarmonic(k));
        }
        let p = match lower.as_str() {
            "harmonic" => Predicate::Harmonic,
            "unitary-harmonic" => Predicate::UnitaryHarmonic,
            "biunitary-harmonic" | "bi-unitary-harmonic" => Predicate::BiunitaryHarmonic,
            "h1" => Predicate::HNumber(1),
            "h2" => Predicate::HNumber(2),
            "h3" => Predicate::HNumber(3),
            "h4" => Predicate::HNumber(4),
            "h5" => Predicate::HNumber(5),
            "h6" => Predicate::HNumber(6),
            "perfect" => Predicate::Perfect,
            "multiperfect" => Predicate::MultiPerfect,
            "unitary-perfect" => Predicate::UnitaryPerfect,
            "biunitary-perfect" | "bi-unitary-perfect" => Predicate::BiunitaryPerfect,
            "biunitary-multiperfect" => Predicate::BiunitaryMultiPerfect,
            "balanced" => Predicate::Balanced,
            "friendly" | "duffinian" => Predicate::Friendly,
            "powerful" => Predicate::Powerful,
            "square" | "perfect-square" => Predicate::PerfectSquare,
            "squarefree" => Predicate::Squarefree,
            _ => return Err(Error::Parse(format!("unknown predicate {s:?}"))),
        };
        Ok(p)
    }
}

/// A predicate, possibly negated. Parses from `name`, `not-name` or `!name`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PredicateSpec {
    pub predicate: Predicate,
    pub negated: bool,
}

impl PredicateSpec {
    pub fn is(predicate: Predicate) -> Self {
        PredicateSpec {
            predicate,
            negated: false,
        }
    }

    pub fn not(predicate: Predicate) -> Self {
        PredicateSpec {
            predicate,
            negated: true,
        }
    }

    #[inline]
    pub fn eval(&self, n: u64, factors: &[PrimePower], f: &DivisorFunctions) -> Result<bool> {
        Ok(self.predicate.eval(n, factors, f)? != self.negated)
    }
}

impl fmt::Display for PredicateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("not-")?;
        }
        fmt::Display::fmt(&self.predicate, f)
    }
}

impl FromStr for PredicateSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("not-").or_else(|| s.strip_prefix('!')) {
            Ok(PredicateSpec::not(rest.parse()?))
        } else {
            Ok(PredicateSpec::is(s.parse()?))
        }
    }
}

impl Serialize for PredicateSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PredicateSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) fn level(sum: u128, n: u64) -> Option<u128> {
    let n = n as u128;
    (sum % n == 0).then_some(sum / n)
}

pub(crate) fn balanced(n: u64, f: &DivisorFunctions) -> bool {
    2 * f.sigma == n as u128 * f.d
}

pub(crate) fn friendly(n: u64, f: &DivisorFunctions) -> bool {
    n > 1 && gcd(n, (f.sigma % n as u128) as u64) == 1
}

pub(crate) fn powerful(factors: &[PrimePower]) -> bool {
    factors.iter().all(|pp| pp.exponent >= 2)
}

pub(crate) fn square(factors: &[PrimePower]) -> bool {
    factors.iter().all(|pp| pp.exponent % 2 == 0)
}

pub(crate) fn squarefree(factors: &[PrimePower]) -> bool {
    factors.iter().all(|pp| pp.exponent == 1)
}

pub(crate) fn k_harmonic(n: u64, factors: &[PrimePower], k: u32) -> Result<bool> {
    let sk = sigma_k(factors, k)?;
    let num = (n as u128)
        .checked_pow(k)
        .and_then(|nk| nk.checked_mul(crate::arith::d_count(factors) as u128))
        .ok_or(Error::overflow("n^k d(n)", n))?;
    Ok(divides(sk, num))
}
