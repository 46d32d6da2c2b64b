//! Inputs shared by the benchmarks.

/// Integers with varied factor structure: members of the census, large
/// semiprimes, prime powers and a 64-bit prime.
pub const SAMPLE: [u64; 10] = [
    9_072,
    9_922_500,
    555_660_000,
    646_425,
    1_000_000_007,
    999_999_000_001,
    4_294_967_291 * 4_294_967_279,
    3u64.pow(40),
    18_446_744_073_709_551_557,
    600_851_475_143,
];
