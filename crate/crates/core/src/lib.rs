//! Exact divisor-function arithmetic and harmonic-type number search.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: primality, factorization, the segmented factoring sieve,
//!   brute-force divisor enumeration, and the multiplicative functions
//!   d, d*, d**, sigma, sigma*, sigma**.
//! * [`ratio`]: reduced fractions for the harmonic means.
//! * [`classify`]: the nine harmonic means, number-class predicates, factor
//!   shapes and the odd/even exponent split of H**.
//! * [`search`]: segmented, parallel, resumable range census.
//! * [`theorems`]: bounded falsification searches for the structural
//!   results about these classes.

pub mod arith;
pub mod classify;
pub mod error;
pub mod ratio;
pub mod search;
pub mod theorems;

pub use arith::{factorize, DivisorFunctions, Factorization, PrimePower};
pub use classify::{MeanKind, NumberProfile, Predicate, PredicateSpec, ShapePattern};
pub use error::{Error, Result};
pub use ratio::ExactRatio;
pub use search::{
    census_report, scan_segment, search, CensusReport, OutputFormat, SearchOptions, SearchQuery,
    SearchRecord, SearchSummary,
};
pub use theorems::VerificationOutcome;
