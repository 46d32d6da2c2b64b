//! Primality and the shared small-prime table.
//!
//! Below 2^16 the test is a lookup in the sieved table; above it the test is
//! a strong-pseudoprime check against a witness set that is known to be
//! exact for every 64-bit integer.

use std::sync::OnceLock;

/// Primes up to this bound are kept in the shared table. It covers trial
/// division for single inputs and the square root of every range-search
/// bound (10^12 > 10^10).
pub const SMALL_PRIME_LIMIT: u32 = 1_000_000;

const TRIAL_LIMIT: u64 = 1 << 16;

/// Seven bases that make Miller-Rabin deterministic below 2^64 (Jim Sinclair's set).
const WITNESSES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

static SMALL_PRIMES: OnceLock<Vec<u32>> = OnceLock::new();

/// All primes `<= SMALL_PRIME_LIMIT`, ascending. Built once on first use.
pub fn small_primes() -> &'static [u32] {
    SMALL_PRIMES.get_or_init(|| primes_up_to(SMALL_PRIME_LIMIT))
}

/// Sieve of Eratosthenes over odd numbers.
pub fn primes_up_to(limit: u32) -> Vec<u32> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    // composite[i] describes 2i + 1
    let half = limit / 2 + 1;
    let mut composite = vec![false; half];
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= limit {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = Vec::with_capacity(limit / 10 + 16);
    primes.push(2);
    primes.extend(
        (1..half)
            .filter(|&i| !composite[i] && 2 * i < limit)
            .map(|i| (2 * i + 1) as u32),
    );
    primes
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Exact primality for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < TRIAL_LIMIT {
        return small_primes().binary_search(&(n as u32)).is_ok();
    }
    if n % 2 == 0 {
        return false;
    }
    for &p in &small_primes()[1..32] {
        if n % p as u64 == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Largest `r` with `r * r <= n`.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}
