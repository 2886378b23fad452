//! Exact-arithmetic search for odd spoof multiperfect numbers of higher order.
//!
//! A spoof k-perfect number of order α is s = n·x with n, x ≥ 2 such that
//! σ(n)·S_α(x) = k·n·x, where S_α(x) = 1 + x + x² + … + x^α. In other words,
//! s would be k-perfect if x were a prime of multiplicity α. The classical
//! Descartes number D = 198585576189 is the order-1 case.
//!
//! The crate provides:
//! - [`arithmetic`]: σ sieve, gcd/fraction reduction, capped geometric sums,
//!   deterministic 64-bit primality, factorization.
//! - [`spoof`]: the candidate criterion, an independent identity verifier,
//!   and classification of the spoof factor.
//! - [`search`]: the exhaustive (n, k, α) range search with parallel blocks.
//! - [`robin`]: the spoof adaptation of Robin's inequality and the
//!   expected-appearance threshold heuristic.
//! - [`cli`]: record rendering (csv/json/table), the embedded golden result
//!   table, and diffing against it.

pub mod arithmetic;
pub mod cli;
pub mod robin;
pub mod search;
pub mod spoof;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid range: lo={lo}, hi={hi} (need 1 <= lo <= hi)")]
    InvalidRange { lo: u64, hi: u64 },
    #[error("range too large: hi={hi} exceeds sieve guard {guard}")]
    RangeTooLarge { hi: u64, guard: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
}

/// Classifies errors for process exit codes: usage errors exit 2,
/// resource limits exit 3.
impl Error {
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::RangeTooLarge { .. })
    }
}
