//! Spectra, coupling regimes and dynamics of two coupled lossy oscillators
//! whose reservoirs have frequency-dependent densities of states.
//!
//! Start from [`model::SystemConfig`], build the amplitude generator with
//! [`spectral::build_generator`], and take it from there.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod dynamics;
pub mod cli;
pub mod error;
pub mod microscopic;
pub mod model;
pub mod regimes;
pub mod spectral;
pub mod usc;

pub use error::{Error, Result};
pub use model::{DiagonalMode, EiMode, Oscillator, ReservoirSpectrum, SystemConfig};
