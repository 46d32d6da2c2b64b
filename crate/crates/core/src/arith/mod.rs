//! Factorization, primality, segment sieving, divisor enumeration, and
//! multiplicative divisor functions.

mod divisors;
mod factor;
mod functions;
mod prime;
mod sieve;

pub(crate) use divisors::gcd;
pub use divisors::{
    biunitary_divisors, divisors, gcud, unitary_divisors, DivisorKind, DivisorList,
};
pub use factor::{factorize, Factorization, PrimePower};
pub use functions::{
    d_bistar, d_count, d_star, sigma, sigma_bistar, sigma_k, sigma_star, value_of, DivisorFunctions,
};
pub use prime::{is_prime, isqrt, primes_up_to, small_primes, SMALL_PRIME_LIMIT};
pub use sieve::{
    for_each_factored, sieve_segment, sieve_segment_with_limit, FactorBlock, FactorBuf,
    DEFAULT_SEGMENT_SIZE, RANGE_LIMIT,
};
