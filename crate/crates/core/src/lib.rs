//! Algorithmic core for uplink detection in large-scale MIMO systems that
//! receive communication signals and sensing echoes on the same array.
//!
//! The crate is `no_std` (with `alloc`) and carries no IO: signal generation,
//! the box-relaxed ADMM detectors with neighborhood-search refinement, the
//! maximum-likelihood oracles, the multiplication-count complexity model, and
//! statistical checks of the post-projection channel are all pure functions
//! of their inputs plus an explicit seeded generator. The companion `isac-sim`
//! crate adds the Monte-Carlo harness, CLI, and file formats.

#![no_std]
#![forbid(unsafe_code)]
// indexed loops mirror the matrix algebra they implement, and the negated
// float comparisons are deliberate NaN guards
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod config;
pub mod detect;
pub mod math;
pub mod rng;
pub mod signal;

mod error;

pub use error::Error;

pub type Result<T> = core::result::Result<T, Error>;
