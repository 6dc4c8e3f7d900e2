//! Exact combinatorics of bi-free probability.
//!
//! The crate works entirely over arbitrary-precision rationals and is
//! `no_std` (it needs `alloc`). It provides
//!
//! * truncated formal power series in one and two commuting variables
//!   ([`series`]),
//! * the lattice of non-crossing partitions, the Kreweras complement and
//!   `NC'(n)` ([`ncpart`]),
//! * bi-non-crossing partitions and the doubling partitions used to expand
//!   cumulants of products ([`bnc`]),
//! * multiplicative functions with their convolution and pinched
//!   convolution ([`multfn`]),
//! * two-faced pair distributions, moment/cumulant transforms and cumulants
//!   of sums and products of bi-free pairs ([`bicum`]),
//! * the one-variable S-transform and the two-variable partial T- and
//!   S-transforms together with executable multiplicativity checks
//!   ([`transforms`]),
//! * brute-force verifiers for the partition-class identities behind those
//!   checks ([`oracle`]).
//!
//! IO, file formats and the command line live in the `bifree-cli` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bicum;
pub mod bnc;
mod dsu;
mod enumerate;
pub mod error;
pub mod limits;
pub mod multfn;
pub mod ncpart;
pub mod oracle;
pub mod random;
pub mod report;
pub mod scalar;
pub mod series;
pub mod transforms;

pub use error::{Error, Result};
pub use limits::Limits;
pub use scalar::Rational;
