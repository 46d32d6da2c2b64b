//! The odd/even exponent split under which H**(n) = H(n1) H*(n2).
//!
//! For `n = prod p_i^(2a_i+1) prod q_j^(2b_j)` the split puts every
//! odd-exponent prime power into `n1`, and sends `q_j^(b_j - 1)` to `n1` and
//! `q_j^(b_j + 1)` to `n2`. Per prime this telescopes:
//! `sigma(q^(b-1)) (q^(b+1) + 1) = sigma(q^(2b)) - q^b = sigma**(q^(2b))`,
//! and `d(q^(b-1)) * 2 = 2b = d**(q^(2b))`, so the identity holds exactly.

use super::MeanKind;
use crate::arith::{factorize, value_of, DivisorFunctions, PrimePower};
use crate::error::Result;
use crate::ratio::ExactRatio;

/// Factor lists of `(n1, n2)`.
pub fn theorem5_split(factors: &[PrimePower]) -> (Vec<PrimePower>, Vec<PrimePower>) {
    let mut n1 = Vec::with_capacity(factors.len());
    let mut n2 = Vec::new();
    for &pp in factors {
        if pp.exponent % 2 == 1 {
            n1.push(pp);
        } else {
            let b = pp.exponent / 2;
            if b > 1 {
                n1.push(PrimePower::new(pp.prime, b - 1));
            }
            n2.push(PrimePower::new(pp.prime, b + 1));
        }
    }
    (n1, n2)
}

pub fn theorem5_decompose(n: u64) -> Result<(u64, u64)> {
    let f = factorize(n)?;
    let (a, b) = theorem5_split(&f);
    // both parts divide n
    Ok((value_of(&a)? as u64, value_of(&b)? as u64))
}

/// `(H**(n), H(n1), H*(n2))` computed from the factors.
pub fn theorem5_parts(factors: &[PrimePower]) -> Result<(ExactRatio, ExactRatio, ExactRatio)> {
    let (a, b) = theorem5_split(factors);
    let n = value_of(factors)?;
    let lhs = DivisorFunctions::of(factors)?.mean(n, MeanKind::HBistar)?;
    let h1 = DivisorFunctions::of(&a)?.mean(value_of(&a)?, MeanKind::H)?;
    let h2 = DivisorFunctions::of(&b)?.mean(value_of(&b)?, MeanKind::HStar)?;
    Ok((lhs, h1, h2))
}

/// Whether H**(n) equals H(n1) H*(n2) as exact fractions.
pub fn theorem5_identity_holds(n: u64) -> Result<bool> {
    let f = factorize(n)?;
    let (lhs, h1, h2) = theorem5_parts(&f)?;
    Ok(lhs == h1.checked_mul(h2)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompositions() {
        assert_eq!(theorem5_decompose(9).unwrap(), (1, 9));
        assert_eq!(theorem5_decompose(9_922_500).unwrap(), (15, 661_500));
        assert_eq!(theorem5_decompose(270).unwrap(), (270, 1));
        assert_eq!(theorem5_decompose(1).unwrap(), (1, 1));
    }

    #[test]
    fn identity_examples() {
        assert!(theorem5_identity_holds(9).unwrap());
        let (lhs, h1, h2) = theorem5_parts(&factorize(9_922_500).unwrap()).unwrap();
        assert_eq!(lhs, ExactRatio::integer(30));
        assert_eq!(h1, ExactRatio::new(5, 2));
        assert_eq!(h2, ExactRatio::integer(12));
        assert!(theorem5_identity_holds(30).unwrap());
    }

    #[test]
    fn printed_split_fails_at_nine() {
        // with n2 = q^b the identity would read 9/5 = H(1) H*(3) = 3/2
        let printed = DivisorFunctions::of(&factorize(3).unwrap())
            .unwrap()
            .mean(3, MeanKind::HStar)
            .unwrap();
        assert_eq!(printed, ExactRatio::new(3, 2));
        assert_ne!(printed, ExactRatio::new(9, 5));
    }

    #[test]
    fn product_is_n() {
        for n in 1..20_000u64 {
            let (a, b) = theorem5_decompose(n).unwrap();
            assert_eq!(a * b, n);
        }
    }
}
