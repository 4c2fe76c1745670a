//! Exact combinatorial and numerical machinery for isoperimetry on the
//! Hamming cube `Q_n`: vertex sets as bitmasks, edge/vertex boundaries,
//! the `∫ h_A^β dμ` family of functionals, monotone shifting, subcube
//! stability, exhaustive verification kernels and stochastic search.
//!
//! The crate is `no_std` (with `alloc`); IO, parallel orchestration and the
//! CLI live in the companion `cube-iso` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;

pub mod cube;
pub mod functionals;
pub mod search;
pub mod shifting;
pub mod stability;
pub mod verify;

pub use error::Error;

pub type Result<T> = core::result::Result<T, Error>;

/// Comparison tolerance for all floating-point inequality margins.
pub const TOLERANCE: f64 = 1e-9;
