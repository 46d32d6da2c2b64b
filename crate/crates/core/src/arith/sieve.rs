//! Segmented factoring sieve.
//!
//! Each block records, per integer, the primes up to `sqrt(hi)` that divide
//! it together with their exponents. Exponents are found by sieving with
//! successive prime powers, so the only division per integer is the final
//! one that exposes the (prime or unit) cofactor.

use super::factor::{Factorization, PrimePower};
use super::prime::{isqrt, small_primes};
use crate::error::{Error, Result};

/// Upper bound on integers handled by range operations.
pub const RANGE_LIMIT: u64 = 10_000_000_000;

/// Default number of integers per search segment.
pub const DEFAULT_SEGMENT_SIZE: u64 = 1 << 20;

/// Cache-sized sub-block used inside a segment.
const BLOCK_LEN: usize = 1 << 15;

/// 2*3*5*...*31 exceeds `RANGE_LIMIT`, so ten slots hold every small factor.
const SLOTS: usize = 10;

/// Fixed-capacity factor list that lives on the stack.
#[derive(Clone, Copy)]
pub struct FactorBuf {
    items: [PrimePower; 16],
    len: usize,
}

impl FactorBuf {
    pub fn new() -> Self {
        FactorBuf {
            items: [PrimePower::new(0, 0); 16],
            len: 0,
        }
    }

    #[inline]
    pub fn push(&mut self, pp: PrimePower) {
        self.items[self.len] = pp;
        self.len += 1;
    }

    #[inline]
    pub fn as_slice(&self) -> &[PrimePower] {
        &self.items[..self.len]
    }

    pub fn clear(&mut self) {
        self.len = 0;
    }
}

impl Default for FactorBuf {
    fn default() -> Self {
        FactorBuf::new()
    }
}

/// Reusable working storage for one sieve block.
pub struct FactorBlock {
    lo: u64,
    len: usize,
    counts: Vec<u8>,
    primes: Vec<u32>,
    exps: Vec<u8>,
    cofactor: Vec<u64>,
}

impl FactorBlock {
    pub fn new() -> Self {
        FactorBlock {
            lo: 1,
            len: 0,
            counts: vec![0; BLOCK_LEN],
            primes: vec![0; BLOCK_LEN * SLOTS],
            exps: vec![0; BLOCK_LEN * SLOTS],
            cofactor: vec![0; BLOCK_LEN],
        }
    }

    /// Sieves `[lo, lo + len)` where `len <= BLOCK_LEN` and the range is
    /// within `[1, RANGE_LIMIT]`.
    fn fill(&mut self, lo: u64, len: usize) {
        debug_assert!(lo >= 1 && len <= BLOCK_LEN);
        let hi = lo + len as u64 - 1;
        debug_assert!(hi <= RANGE_LIMIT);
        self.lo = lo;
        self.len = len;
        let counts = &mut self.counts[..len];
        let found = &mut self.cofactor[..len];
        counts.fill(0);
        found.fill(1);

        let root = isqrt(hi);
        for &p in small_primes() {
            let p64 = p as u64;
            if p64 > root {
                break;
            }
            let mut i = (lo.div_ceil(p64) * p64 - lo) as usize;
            while i < len {
                let slot = i * SLOTS + counts[i] as usize;
                self.primes[slot] = p;
                self.exps[slot] = 1;
                counts[i] += 1;
                found[i] *= p64;
                i += p as usize;
            }
            let mut pk = p64 * p64;
            while pk <= hi {
                let mut i = (lo.div_ceil(pk) * pk - lo) as usize;
                while i < len {
                    self.exps[i * SLOTS + counts[i] as usize - 1] += 1;
                    found[i] *= p64;
                    i += pk as usize;
                }
                pk = match pk.checked_mul(p64) {
                    Some(v) => v,
                    None => break,
                };
            }
        }
        for (i, f) in found.iter_mut().enumerate() {
            *f = (lo + i as u64) / *f;
        }
    }

    /// Factors of the `i`th integer of the block, ascending.
    #[inline]
    fn factors_into(&self, i: usize, out: &mut FactorBuf) {
        out.clear();
        let base = i * SLOTS;
        for s in 0..self.counts[i] as usize {
            out.push(PrimePower::new(
                self.primes[base + s] as u64,
                self.exps[base + s] as u32,
            ));
        }
        let c = self.cofactor[i];
        if c > 1 {
            out.push(PrimePower::new(c, 1));
        }
    }
}

impl Default for FactorBlock {
    fn default() -> Self {
        FactorBlock::new()
    }
}

fn check_range(lo: u64, hi: u64) -> Result<()> {
    if lo == 0 {
        return Err(Error::InvalidRange {
            lo,
            hi,
            reason: "lower bound must be at least 1",
        });
    }
    if lo > hi {
        return Err(Error::InvalidRange {
            lo,
            hi,
            reason: "lower bound exceeds upper bound",
        });
    }
    if hi > RANGE_LIMIT {
        return Err(Error::InvalidRange {
            lo,
            hi,
            reason: "upper bound exceeds 10^10",
        });
    }
    Ok(())
}

/// Calls `visit(n, factors)` for every `n` in `[lo, hi]` in ascending order.
/// `block` is scratch space that callers may reuse between calls.
pub fn for_each_factored<F>(lo: u64, hi: u64, block: &mut FactorBlock, mut visit: F) -> Result<()>
where
    F: FnMut(u64, &[PrimePower]) -> Result<()>,
{
    check_range(lo, hi)?;
    let mut buf = FactorBuf::new();
    let mut start = lo;
    loop {
        let len = (hi - start + 1).min(BLOCK_LEN as u64) as usize;
        block.fill(start, len);
        for i in 0..len {
            block.factors_into(i, &mut buf);
            visit(start + i as u64, buf.as_slice())?;
        }
        start += len as u64;
        if start > hi {
            return Ok(());
        }
    }
}

/// Factorizations of every integer in `[lo, hi]`, limited to the default
/// segment size.
pub fn sieve_segment(lo: u64, hi: u64) -> Result<Vec<Factorization>> {
    sieve_segment_with_limit(lo, hi, DEFAULT_SEGMENT_SIZE)
}

pub fn sieve_segment_with_limit(lo: u64, hi: u64, max_len: u64) -> Result<Vec<Factorization>> {
    check_range(lo, hi)?;
    let len = hi - lo + 1;
    if len > max_len {
        return Err(Error::SegmentTooLarge {
            lo,
            hi,
            len,
            max: max_len,
        });
    }
    let mut out = Vec::with_capacity(len as usize);
    let mut block = FactorBlock::new();
    for_each_factored(lo, hi, &mut block, |_, f| {
        out.push(Factorization::from_sorted_unchecked(f.to_vec()));
        Ok(())
    })?;
    Ok(out)
}
