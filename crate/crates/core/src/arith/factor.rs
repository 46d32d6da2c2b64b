use std::fmt;

use serde::{Deserialize, Serialize};

use super::prime::{is_prime, mul_mod, small_primes};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

impl PrimePower {
    pub const fn new(prime: u64, exponent: u32) -> Self {
        PrimePower { prime, exponent }
    }
}

/// Canonical prime-power decomposition: primes strictly increasing, every
/// exponent at least one, product fits in a `u64`. The empty list is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Factorization {
    factors: Vec<PrimePower>,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization::default()
    }

    /// Builds a factorization from `(prime, exponent)` pairs, checking every
    /// canonical-form invariant including primality of each listed prime.
    pub fn from_pairs(pairs: &[(u64, u32)]) -> Result<Self> {
        let mut product: u64 = 1;
        let mut prev = 0;
        for &(p, e) in pairs {
            if p <= prev {
                return Err(Error::InvalidFactorization(format!(
                    "primes must be strictly increasing ({prev} then {p})"
                )));
            }
            if e == 0 {
                return Err(Error::InvalidFactorization(format!("zero exponent on {p}")));
            }
            if !is_prime(p) {
                return Err(Error::InvalidFactorization(format!("{p} is not prime")));
            }
            let pe = p
                .checked_pow(e)
                .ok_or_else(|| Error::InvalidFactorization(format!("{p}^{e} exceeds 64 bits")))?;
            product = product
                .checked_mul(pe)
                .ok_or_else(|| Error::InvalidFactorization("product exceeds 64 bits".into()))?;
            prev = p;
        }
        Ok(Factorization::from_sorted_unchecked(
            pairs.iter().map(|&(p, e)| PrimePower::new(p, e)).collect(),
        ))
    }

    pub(crate) fn from_sorted_unchecked(factors: Vec<PrimePower>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].prime < w[1].prime));
        Factorization { factors }
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn value(&self) -> u64 {
        self.factors
            .iter()
            .map(|pp| pp.prime.pow(pp.exponent))
            .product()
    }

    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.factors.iter().map(|pp| pp.exponent)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }
}

impl std::ops::Deref for Factorization {
    type Target = [PrimePower];

    fn deref(&self) -> &[PrimePower] {
        &self.factors
    }
}

/// Renders as `2^4*3^4*7`, with `1` for the empty product.
impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, pp) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if pp.exponent == 1 {
                write!(f, "{}", pp.prime)?;
            } else {
                write!(f, "{}^{}", pp.prime, pp.exponent)?;
            }
        }
        Ok(())
    }
}

/// Trial division stops at this bound; Pollard rho takes the rest.
const TRIAL_CUTOFF: u64 = 1 << 12;

/// Factors any positive 64-bit integer: trial division by small primes,
/// then primality testing and Pollard rho on whatever cofactor remains.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let mut rest = n;
    let mut factors = Vec::new();
    for &p in small_primes() {
        let p = p as u64;
        if p * p > rest || p >= TRIAL_CUTOFF {
            break;
        }
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            factors.push(PrimePower::new(p, e));
        }
    }
    if rest > 1 {
        let mut large = Vec::new();
        split_cofactor(rest, &mut large);
        large.sort_unstable();
        for p in large {
            match factors.last_mut() {
                Some(last) if last.prime == p => last.exponent += 1,
                _ => factors.push(PrimePower::new(p, 1)),
            }
        }
    }
    Ok(Factorization::from_sorted_unchecked(factors))
}

/// Pushes the prime factors (with multiplicity) of `n`, which has no factor
/// below the trial cutoff.
fn split_cofactor(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_cofactor(d, out);
    split_cofactor(n / d, out);
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Returns a nontrivial divisor of the odd composite `n`.
fn pollard_brent(n: u64) -> u64 {
    const BATCH: u64 = 128;
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut ys) = (0u64, 2u64, 2u64);
        let mut q = 1u64;
        let mut g = 1u64;
        let mut r = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("pollard rho exhausted its polynomial family")
}
