//! Numerical core for a dual-symmetric treatment of the EM field in a
//! rectangular cavity: classical evolution of both partial Maxwell
//! solutions, truncated Fock-space quantization of both canonical
//! families, gauge currents, and electric/magnetic charge-density
//! observables.
//!
//! The crate is `no_std`-compatible (`alloc` required); all IO, file
//! formats, and the command-line front end live in the companion
//! `dualcavity` crate.
//!
//! Everything here is a pure function over immutable value types:
//! construction validates, after that operations can be called freely
//! from any number of threads. Mode sums use a fixed summation order so
//! repeated runs reproduce bit-identical results.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod charges;
pub mod classical;
pub mod config;
pub mod currents;
pub mod diagnostics;
pub mod energy;
pub mod fock;
pub mod linalg;
mod math;
pub mod matrix;
pub mod modes;

mod error;

pub use error::CoreError;
pub use num_complex::Complex64;

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, CoreError>;
