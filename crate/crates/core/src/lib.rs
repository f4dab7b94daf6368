//! Membership, representability and empirical checks for the multiplicative
//! sets of ideal norms of the cyclotomic rings `Z[exp(2πi/2^k)]` and
//! `Z[exp(2πi/p)]`.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of its inputs; the companion `cyclonorm` crate adds the CLI,
//! file formats and thread-parallel drivers on top of the segment-level
//! entry points exposed here.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod bits;
mod error;

pub mod arith;
pub mod census;
pub mod laws;
pub mod msets;
pub mod repr;

pub use error::{Error, Result};
pub use msets::{MSetSpec, Membership, MembershipSieve};

/// Largest number of integers a single sieve or search may cover.
///
/// One bit per integer, so the default caps a membership sieve at 128 MiB.
pub const DEFAULT_SPAN_BUDGET: u64 = 1 << 30;
