//! Finite multiple zeta values of level one and level two.
//!
//! The crate evaluates the truncated harmonic-type sums
//! `sum 1/(m_1^k_1 ... m_r^k_r) mod p` over `0 < m_1 < ... < m_r < p` (level one)
//! and over `m_r < p/2` (level two), together with the star and signed (Euler)
//! variants. On top of the evaluator sit
//!
//! * [`bernoulli`]: Bernoulli numbers mod `p`, `Z(k) = B_{p-k}/k` and the
//!   Fermat quotient `L(2)`,
//! * [`harmonic`]: the formal stuffle algebra of indices with exact rational
//!   coefficients,
//! * [`identities`]: verification suites producing per-prime reports,
//! * [`relations`]: integer-relation search across primes (lattice reduction,
//!   basis expression, dimension estimates).
//!
//! Values are only ever compared modulo explicit, finite prime sets; primes 2
//! and 3 are excluded everywhere.

pub mod bernoulli;
pub mod cli;
pub mod evaluator;
pub mod harmonic;
pub mod identities;
pub mod modmath;
pub mod relations;

pub use evaluator::{Index, ResidueCache, ResidueTable, SignVector, Variant};
pub use harmonic::IndexCombination;
pub use modmath::{Prime, Rational};

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime >= 5")]
    NotPrime(u64),
    #[error("invalid prime range {lo}..{hi} (need 5 <= lo <= hi)")]
    InvalidPrimeRange { lo: u64, hi: u64 },
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },
    #[error("zero entry at position {position} in batch inversion modulo {modulus}")]
    ZeroInBatch { position: usize, modulus: u64 },
    #[error("prime {0} appears twice")]
    DuplicatePrime(u64),
    #[error("denominator of coefficient {coefficient} vanishes modulo {prime}")]
    DenominatorVanishes { coefficient: String, prime: u64 },
    #[error("invalid index {0:?}")]
    InvalidIndex(String),
    #[error("invalid sign vector {0:?}")]
    InvalidSigns(String),
    #[error("variant {variant} {problem}")]
    VariantSigns { variant: Variant, problem: &'static str },
    #[error("Bernoulli index {n} too large for p = {p} (need n <= p - 2)")]
    BernoulliRange { n: u64, p: u64 },
    #[error("Z({k}) undefined at p = {p} (need 2 <= k < p)")]
    ZetaRange { k: u64, p: u64 },
    #[error("{0}")]
    Precondition(String),
    #[error("ambiguous relation: {0}")]
    Ambiguous(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: malformed cache line {content:?}")]
    CacheCorrupt { path: PathBuf, line: usize, content: String },
    #[error("cache cell {key} holds {cached} but recomputation gives {computed}")]
    CacheMismatch { key: String, cached: u64, computed: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
