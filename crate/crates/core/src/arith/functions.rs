//! Multiplicative divisor functions evaluated from a factorization.
//!
//! All sums are accumulated in `u128` with checked arithmetic, so values for
//! any 64-bit input are exact and anything larger reports an overflow.

use serde::{Deserialize, Serialize};

use super::factor::PrimePower;
use crate::error::{Error, Result};

/// The six divisor-function values of one integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorFunctions {
    pub d: u128,
    pub d_star: u128,
    pub d_bistar: u128,
    pub sigma: u128,
    pub sigma_star: u128,
    pub sigma_bistar: u128,
}

/// Product of the prime powers as a `u128`.
pub fn value_of(factors: &[PrimePower]) -> Result<u128> {
    factors.iter().try_fold(1u128, |acc, pp| {
        (pp.prime as u128)
            .checked_pow(pp.exponent)
            .and_then(|pe| acc.checked_mul(pe))
            .ok_or(Error::overflow("n", u128::MAX))
    })
}

fn overflow(what: &'static str, factors: &[PrimePower]) -> Error {
    Error::overflow(what, value_of(factors).unwrap_or(u128::MAX))
}

/// Per-prime-power pieces: `(p^e, sigma(p^e), p^(e/2))`.
#[inline]
fn local_terms(pp: PrimePower) -> Option<(u128, u128, u128)> {
    let p = pp.prime as u128;
    let mut power = 1u128;
    let mut sum = 1u128;
    let mut half = 1u128;
    for i in 1..=pp.exponent {
        power = power.checked_mul(p)?;
        sum = sum.checked_add(power)?;
        if 2 * i == pp.exponent {
            half = power;
        }
    }
    Some((power, sum, half))
}

impl DivisorFunctions {
    /// Evaluates all six functions in one pass over the factors.
    pub fn of(factors: &[PrimePower]) -> Result<Self> {
        let mut out = DivisorFunctions {
            d: 1,
            d_star: 1,
            d_bistar: 1,
            sigma: 1,
            sigma_star: 1,
            sigma_bistar: 1,
        };
        for &pp in factors {
            let e = pp.exponent as u128;
            let (power, sum, half) =
                local_terms(pp).ok_or_else(|| overflow("divisor sums", factors))?;
            let bistar = if e % 2 == 0 { sum - half } else { sum };
            out.d *= e + 1;
            out.d_star *= 2;
            out.d_bistar *= if e % 2 == 0 { e } else { e + 1 };
            out.sigma = out
                .sigma
                .checked_mul(sum)
                .ok_or_else(|| overflow("sigma", factors))?;
            out.sigma_star = out
                .sigma_star
                .checked_mul(power + 1)
                .ok_or_else(|| overflow("sigma*", factors))?;
            out.sigma_bistar = out
                .sigma_bistar
                .checked_mul(bistar)
                .ok_or_else(|| overflow("sigma**", factors))?;
        }
        Ok(out)
    }
}

/// Sum of divisors.
pub fn sigma(factors: &[PrimePower]) -> Result<u128> {
    sigma_k(factors, 1)
}

/// Sum of `k`th powers of divisors, `prod (p^(k(a+1)) - 1) / (p^k - 1)`.
pub fn sigma_k(factors: &[PrimePower], k: u32) -> Result<u128> {
    assert!(k >= 1, "sigma_k needs k >= 1");
    factors.iter().try_fold(1u128, |acc, pp| {
        let pk = (pp.prime as u128)
            .checked_pow(k)
            .ok_or_else(|| overflow("sigma_k", factors))?;
        let mut power = 1u128;
        let mut sum = 1u128;
        for _ in 0..pp.exponent {
            power = power
                .checked_mul(pk)
                .ok_or_else(|| overflow("sigma_k", factors))?;
            sum = sum
                .checked_add(power)
                .ok_or_else(|| overflow("sigma_k", factors))?;
        }
        acc.checked_mul(sum)
            .ok_or_else(|| overflow("sigma_k", factors))
    })
}

/// Number of divisors, `prod (a + 1)`.
pub fn d_count(factors: &[PrimePower]) -> u64 {
    factors.iter().map(|pp| pp.exponent as u64 + 1).product()
}

/// Number of unitary divisors, `2^omega`.
pub fn d_star(factors: &[PrimePower]) -> u64 {
    1u64 << factors.len()
}

/// Sum of unitary divisors, `prod (p^a + 1)`.
pub fn sigma_star(factors: &[PrimePower]) -> Result<u128> {
    factors.iter().try_fold(1u128, |acc, pp| {
        (pp.prime as u128)
            .checked_pow(pp.exponent)
            .and_then(|pe| acc.checked_mul(pe + 1))
            .ok_or_else(|| overflow("sigma*", factors))
    })
}

/// Sum of bi-unitary divisors: `sigma(p^a)` for odd `a`, and
/// `sigma(p^a) - p^(a/2)` for even `a`.
pub fn sigma_bistar(factors: &[PrimePower]) -> Result<u128> {
    factors.iter().try_fold(1u128, |acc, &pp| {
        let (_, sum, half) = local_terms(pp).ok_or_else(|| overflow("sigma**", factors))?;
        let local = if pp.exponent % 2 == 0 {
            sum - half
        } else {
            sum
        };
        acc.checked_mul(local)
            .ok_or_else(|| overflow("sigma**", factors))
    })
}

/// Number of bi-unitary divisors: `a` for even exponents, `a + 1` for odd.
pub fn d_bistar(factors: &[PrimePower]) -> u64 {
    factors
        .iter()
        .map(|pp| {
            let e = pp.exponent as u64;
            if e % 2 == 0 {
                e
            } else {
                e + 1
            }
        })
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize;

    fn f(n: u64) -> Vec<PrimePower> {
        factorize(n).unwrap().factors().to_vec()
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&f(6)).unwrap(), 12);
        assert_eq!(sigma(&f(672)).unwrap(), 2016);
        assert_eq!(sigma_k(&f(28), 2).unwrap(), 1050);
        for p in [2u64, 3, 101, 1_000_003] {
            for k in 1..=4 {
                assert_eq!(sigma_k(&f(p), k).unwrap(), 1 + (p as u128).pow(k));
            }
        }
    }

    #[test]
    fn unitary_examples() {
        assert_eq!(sigma_star(&f(60)).unwrap(), 120);
        assert_eq!(d_star(&f(60)), 8);
        assert_eq!(d_count(&f(1)), 1);
    }

    #[test]
    fn biunitary_examples() {
        assert_eq!(sigma_bistar(&f(16)).unwrap(), 27);
        assert_eq!(sigma_bistar(&f(90)).unwrap(), 180);
        assert_eq!(sigma_bistar(&f(97)).unwrap(), 98);
        assert_eq!(d_bistar(&f(16)), 4);
        assert_eq!(d_bistar(&f(9072)), 32);
        assert_eq!(d_bistar(&f(49)), 2);
    }

    #[test]
    fn one_is_all_ones() {
        let all = DivisorFunctions::of(&[]).unwrap();
        assert_eq!(
            all,
            DivisorFunctions {
                d: 1,
                d_star: 1,
                d_bistar: 1,
                sigma: 1,
                sigma_star: 1,
                sigma_bistar: 1
            }
        );
    }

    #[test]
    fn fused_matches_individual() {
        for n in [1u64, 2, 12, 9072, 9_922_500, 1 << 62, u64::MAX] {
            let fs = f(n);
            let all = DivisorFunctions::of(&fs).unwrap();
            assert_eq!(all.sigma, sigma(&fs).unwrap());
            assert_eq!(all.sigma_star, sigma_star(&fs).unwrap());
            assert_eq!(all.sigma_bistar, sigma_bistar(&fs).unwrap());
            assert_eq!(all.d, d_count(&fs) as u128);
            assert_eq!(all.d_star, d_star(&fs) as u128);
            assert_eq!(all.d_bistar, d_bistar(&fs) as u128);
        }
    }

    #[test]
    fn overflow_is_reported() {
        let huge = [PrimePower::new(18_446_744_073_709_551_557, 3)];
        assert!(matches!(sigma(&huge), Err(Error::Overflow { .. })));
        assert!(matches!(
            sigma_k(&f(u64::MAX), 3),
            Err(Error::Overflow { .. })
        ));
        assert!(sigma_k(&f(u64::MAX), 2).is_err());
        assert!(sigma_k(&f((1 << 63) - 1), 2).is_ok());
    }
}
