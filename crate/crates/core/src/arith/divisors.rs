//! Brute-force divisor enumeration.
//!
//! These routines never consult a factorization: they enumerate candidates
//! up to `sqrt(n)` and filter by the defining gcd conditions, which makes
//! them an independent check on the multiplicative formulas. Intended for
//! small `n` (up to about 10^6).

use serde::Serialize;

use super::prime::isqrt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DivisorKind {
    Ordinary,
    Unitary,
    BiUnitary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorList {
    pub kind: DivisorKind,
    pub values: Vec<u64>,
}

impl DivisorList {
    pub fn count(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn sum(&self) -> u128 {
        self.values.iter().map(|&d| d as u128).sum()
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn all_divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors of zero are undefined");
    let mut low = Vec::new();
    let mut high = Vec::new();
    for d in 1..=isqrt(n) {
        if n % d == 0 {
            low.push(d);
            if d != n / d {
                high.push(n / d);
            }
        }
    }
    low.extend(high.into_iter().rev());
    low
}

fn unitary_set(n: u64) -> Vec<u64> {
    all_divisors(n)
        .into_iter()
        .filter(|&d| gcd(d, n / d) == 1)
        .collect()
}

pub fn divisors(n: u64) -> DivisorList {
    DivisorList {
        kind: DivisorKind::Ordinary,
        values: all_divisors(n),
    }
}

pub fn unitary_divisors(n: u64) -> DivisorList {
    DivisorList {
        kind: DivisorKind::Unitary,
        values: unitary_set(n),
    }
}

/// Divisors `d` whose greatest common unitary divisor with `n / d` is 1.
pub fn biunitary_divisors(n: u64) -> DivisorList {
    let values = all_divisors(n)
        .into_iter()
        .filter(|&d| gcud(d, n / d) == 1)
        .collect();
    DivisorList {
        kind: DivisorKind::BiUnitary,
        values,
    }
}

/// Greatest common unitary divisor: the largest integer that is a unitary
/// divisor of both `a` and `b`.
pub fn gcud(a: u64, b: u64) -> u64 {
    assert!(a >= 1 && b >= 1, "gcud is defined on positive integers");
    let ub = unitary_set(b);
    unitary_set(a)
        .into_iter()
        .rev()
        .find(|d| ub.binary_search(d).is_ok())
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors_of_one() {
        assert_eq!(divisors(1).values, vec![1]);
        assert_eq!(unitary_divisors(1).values, vec![1]);
        assert_eq!(biunitary_divisors(1).values, vec![1]);
    }

    #[test]
    fn biunitary_divisors_of_16_skip_the_midpoint() {
        assert_eq!(biunitary_divisors(16).values, vec![1, 2, 8, 16]);
        assert_eq!(biunitary_divisors(16).sum(), 27);
    }

    #[test]
    fn unitary_divisors_of_60() {
        assert_eq!(
            unitary_divisors(60).values,
            vec![1, 3, 4, 5, 12, 15, 20, 60]
        );
        assert_eq!(unitary_divisors(60).sum(), 120);
    }

    #[test]
    fn gcud_examples() {
        assert_eq!(gcud(4, 4), 4);
        assert_eq!(gcud(12, 18), 1);
        assert_eq!(gcud(1, 97), 1);
        assert_eq!(gcud(12, 60), 12);
    }

    #[test]
    fn subsets_of_ordinary() {
        for n in 1..2000u64 {
            let all = divisors(n).values;
            assert_eq!(all.first(), Some(&1));
            assert_eq!(all.last(), Some(&n));
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            for list in [unitary_divisors(n), biunitary_divisors(n)] {
                assert!(list.values.iter().all(|d| all.contains(d)));
                assert!(list.values.contains(&1) && list.values.contains(&n));
            }
        }
    }
}
