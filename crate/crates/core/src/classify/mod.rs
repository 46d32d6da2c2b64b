//! Harmonic means of divisor functions and the number classes built on them.
//!
//! Every mean has the form `n * count / sum`, where `count` is one of the
//! three divisor counts and `sum` one of the three divisor sums. A number
//! belongs to a class when the corresponding mean is an integer.

mod predicate;
mod profile;
mod shape;
mod theorem5;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, DivisorFunctions};
use crate::error::{Error, Result};
use crate::ratio::ExactRatio;

pub use predicate::{Predicate, PredicateSpec};
pub use profile::{Flags, Means, NumberProfile};
pub use shape::ShapePattern;
pub use theorem5::{theorem5_decompose, theorem5_identity_holds, theorem5_parts, theorem5_split};

/// The nine harmonic means: H, H*, H** and the six mixed fractions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MeanKind {
    #[serde(rename = "H")]
    H,
    #[serde(rename = "H*")]
    HStar,
    #[serde(rename = "H**")]
    HBistar,
    H1,
    H2,
    H3,
    H4,
    H5,
    H6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Count {
    D,
    DStar,
    DBistar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Sum {
    Sigma,
    SigmaStar,
    SigmaBistar,
}

impl MeanKind {
    pub const ALL: [MeanKind; 9] = [
        MeanKind::H,
        MeanKind::HStar,
        MeanKind::HBistar,
        MeanKind::H1,
        MeanKind::H2,
        MeanKind::H3,
        MeanKind::H4,
        MeanKind::H5,
        MeanKind::H6,
    ];

    /// The six mixed fractions in order H1..H6.
    pub const MIXED: [MeanKind; 6] = [
        MeanKind::H1,
        MeanKind::H2,
        MeanKind::H3,
        MeanKind::H4,
        MeanKind::H5,
        MeanKind::H6,
    ];

    pub(crate) fn parts(self) -> (Count, Sum) {
        use Count::*;
        use Sum::*;
        match self {
            MeanKind::H => (D, Sigma),
            MeanKind::HStar => (DStar, SigmaStar),
            MeanKind::HBistar => (DBistar, SigmaBistar),
            MeanKind::H1 => (D, SigmaStar),
            MeanKind::H2 => (DStar, Sigma),
            MeanKind::H3 => (D, SigmaBistar),
            MeanKind::H4 => (DBistar, Sigma),
            MeanKind::H5 => (DStar, SigmaBistar),
            MeanKind::H6 => (DBistar, SigmaStar),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            MeanKind::H => "H",
            MeanKind::HStar => "H*",
            MeanKind::HBistar => "H**",
            MeanKind::H1 => "H1",
            MeanKind::H2 => "H2",
            MeanKind::H3 => "H3",
            MeanKind::H4 => "H4",
            MeanKind::H5 => "H5",
            MeanKind::H6 => "H6",
        }
    }
}

impl fmt::Display for MeanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for MeanKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let k = match s.to_ascii_lowercase().as_str() {
            "h" => MeanKind::H,
            "h*" | "hstar" | "h-star" => MeanKind::HStar,
            "h**" | "hbistar" | "h-bistar" => MeanKind::HBistar,
            "h1" => MeanKind::H1,
            "h2" => MeanKind::H2,
            "h3" => MeanKind::H3,
            "h4" => MeanKind::H4,
            "h5" => MeanKind::H5,
            "h6" => MeanKind::H6,
            _ => return Err(Error::Parse(format!("unknown mean kind {s:?}"))),
        };
        Ok(k)
    }
}

impl DivisorFunctions {
    pub(crate) fn count(&self, c: Count) -> u128 {
        match c {
            Count::D => self.d,
            Count::DStar => self.d_star,
            Count::DBistar => self.d_bistar,
        }
    }

    pub(crate) fn sum(&self, s: Sum) -> u128 {
        match s {
            Sum::Sigma => self.sigma,
            Sum::SigmaStar => self.sigma_star,
            Sum::SigmaBistar => self.sigma_bistar,
        }
    }

    /// `n * count / sum` for the given mean, reduced.
    pub fn mean(&self, n: u128, kind: MeanKind) -> Result<ExactRatio> {
        let (c, s) = kind.parts();
        let num = n
            .checked_mul(self.count(c))
            .ok_or(Error::overflow("harmonic mean", n))?;
        Ok(ExactRatio::new(num, self.sum(s)))
    }

    /// Whether `sum` divides `n * count`, without building the ratio.
    #[inline]
    pub fn mean_is_integer(&self, n: u128, kind: MeanKind) -> Result<bool> {
        let (c, s) = kind.parts();
        let num = n
            .checked_mul(self.count(c))
            .ok_or(Error::overflow("harmonic mean", n))?;
        Ok(divides(self.sum(s), num))
    }
}

/// `a | b`, using 64-bit division when both operands fit.
#[inline]
pub(crate) fn divides(a: u128, b: u128) -> bool {
    if (a | b) >> 64 == 0 {
        (b as u64) % (a as u64) == 0
    } else {
        b % a == 0
    }
}

/// The harmonic mean of the given kind for `n`.
pub fn harmonic_mean(n: u64, kind: MeanKind) -> Result<ExactRatio> {
    let f = factorize(n)?;
    DivisorFunctions::of(&f)?.mean(n as u128, kind)
}

fn mean_integral(n: u64, kind: MeanKind) -> Result<bool> {
    let f = factorize(n)?;
    DivisorFunctions::of(&f)?.mean_is_integer(n as u128, kind)
}

/// `sigma(n) | n d(n)`.
pub fn is_harmonic(n: u64) -> Result<bool> {
    mean_integral(n, MeanKind::H)
}

/// `sigma*(n) | n d*(n)`.
pub fn is_unitary_harmonic(n: u64) -> Result<bool> {
    mean_integral(n, MeanKind::HStar)
}

/// `sigma**(n) | n d**(n)`.
pub fn is_biunitary_harmonic(n: u64) -> Result<bool> {
    mean_integral(n, MeanKind::HBistar)
}

/// Whether the mean of `kind` is integral at `n`; with a mixed kind this is
/// the H1..H6 number test.
pub fn is_h_variant_number(n: u64, kind: MeanKind) -> Result<bool> {
    mean_integral(n, kind)
}

/// `sigma_k(n) | n^k d(n)`.
pub fn is_k_harmonic(n: u64, k: u32) -> Result<bool> {
    let f = factorize(n)?;
    predicate::k_harmonic(n, &f, k)
}

pub fn is_perfect(n: u64) -> Result<bool> {
    Ok(k_perfect_level(n)? == Some(2))
}

/// `k` with `sigma(n) = k n`, if any.
pub fn k_perfect_level(n: u64) -> Result<Option<u128>> {
    let f = DivisorFunctions::of(&factorize(n)?)?;
    Ok(predicate::level(f.sigma, n))
}

pub fn is_unitary_perfect(n: u64) -> Result<bool> {
    let f = DivisorFunctions::of(&factorize(n)?)?;
    Ok(f.sigma_star == 2 * n as u128)
}

/// `k` with `sigma**(n) = k n`, if any.
pub fn biunitary_k_perfect_level(n: u64) -> Result<Option<u128>> {
    let f = DivisorFunctions::of(&factorize(n)?)?;
    Ok(predicate::level(f.sigma_bistar, n))
}

/// `2 sigma(n) = n d(n)`, i.e. H(n) = 2.
pub fn is_balanced(n: u64) -> Result<bool> {
    let f = DivisorFunctions::of(&factorize(n)?)?;
    Ok(predicate::balanced(n, &f))
}

/// `n > 1` and `gcd(n, sigma(n)) = 1`.
pub fn is_friendly(n: u64) -> Result<bool> {
    let f = DivisorFunctions::of(&factorize(n)?)?;
    Ok(predicate::friendly(n, &f))
}

pub fn is_powerful(n: u64) -> Result<bool> {
    Ok(predicate::powerful(&factorize(n)?))
}

pub fn is_perfect_square(n: u64) -> Result<bool> {
    Ok(predicate::square(&factorize(n)?))
}

pub fn is_squarefree(n: u64) -> Result<bool> {
    Ok(predicate::squarefree(&factorize(n)?))
}
