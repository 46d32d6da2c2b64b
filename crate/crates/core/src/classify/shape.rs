use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::PrimePower;
use crate::error::{Error, Result};

/// An exponent multiset such as `{2, 2, 1}` for numbers of the form `p^2 q^2 r`.
/// Stored sorted in descending order, so equal multisets compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShapePattern {
    exponents: Vec<u32>,
}

impl ShapePattern {
    pub fn new(mut exponents: Vec<u32>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::Parse("shape needs at least one exponent".into()));
        }
        if exponents.contains(&0) {
            return Err(Error::Parse("shape exponents must be at least 1".into()));
        }
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        Ok(ShapePattern { exponents })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// True iff the factorization's exponent multiset equals this pattern.
    pub fn matches(&self, factors: &[PrimePower]) -> bool {
        if factors.len() != self.exponents.len() {
            return false;
        }
        let mut exps = [0u32; 16];
        let exps = &mut exps[..factors.len()];
        for (slot, pp) in exps.iter_mut().zip(factors) {
            *slot = pp.exponent;
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        exps == self.exponents.as_slice()
    }
}

impl fmt::Display for ShapePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for ShapePattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let exps = s
            .trim()
            .trim_start_matches('{')
            .trim_end_matches('}')
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad shape {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ShapePattern::new(exps)
    }
}

impl Serialize for ShapePattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ShapePattern {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize;

    fn shape(s: &str) -> ShapePattern {
        s.parse().unwrap()
    }

    #[test]
    fn catalog_shapes() {
        assert!(shape("2,1").matches(&factorize(45).unwrap()));
        assert!(shape("2,1,1").matches(&factorize(60).unwrap()));
        assert!(!shape("2,1").matches(&factorize(8).unwrap()));
        assert!(shape("1,2").matches(&factorize(12).unwrap()));
        assert!(!shape("2,1").matches(&factorize(1).unwrap()));
    }

    #[test]
    fn order_insensitive() {
        assert_eq!(shape("1,2,2"), shape("{2,1,2}"));
        assert_eq!(shape("1,2,2").to_string(), "2,2,1");
    }

    #[test]
    fn rejects_bad_input() {
        assert!("".parse::<ShapePattern>().is_err());
        assert!("2,0".parse::<ShapePattern>().is_err());
        assert!("a".parse::<ShapePattern>().is_err());
    }
}
