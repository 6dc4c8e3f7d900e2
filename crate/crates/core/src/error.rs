use alloc::string::String;

use thiserror::Error;

/// Errors raised by the combinatorial and series machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("substituted series must have zero constant term")]
    NonzeroConstantTerm,
    #[error("series is not invertible under composition (needs f(0) = 0 and f'(0) != 0)")]
    NotInvertible,
    #[error("series has zero constant term and no multiplicative inverse")]
    ZeroConstantTerm,
    #[error("requested size {requested} exceeds the enumeration cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("ground sets differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("expected exactly one compatible complement, found {found}")]
    UniquenessViolation { found: usize },
    #[error("invalid size for {what}: n = {n}, m = {m}")]
    InvalidSize {
        what: &'static str,
        n: usize,
        m: usize,
    },
    #[error("partitions are not comparable in the refinement order")]
    NotComparable,
    #[error("needs data to order {needed}, only {available} available")]
    TruncationExceeded { needed: usize, available: usize },
    #[error("input is not normalized: {0}")]
    NotNormalized(&'static str),
    #[error("first moment is zero")]
    ZeroMean,
    #[error("scaling factor must be nonzero")]
    ZeroScale,
    #[error(
        "series is not divisible by z^{z_power} w^{w_power}: nonzero coefficient at z^{n} w^{m}"
    )]
    NotDivisible {
        z_power: usize,
        w_power: usize,
        n: usize,
        m: usize,
    },
    #[error("subclass {subclass} is not defined for the {family} family")]
    InvalidSubclass {
        family: &'static str,
        subclass: &'static str,
    },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
