//! Statistical quantum force on a partition wall at the centre of a harmonic
//! trap.
//!
//! An impenetrable wall at the origin that imposes the Dirichlet condition on
//! one side and the Neumann condition on the other splits the oscillator into
//! two half-line towers with different spectra. With the same number of
//! noninteracting particles on both sides at a common temperature, the
//! mismatch of the per-level forces leaves a net push on the wall. This crate
//! computes that dimensionless net force for bosons or fermions at any
//! temperature:
//!
//! - [`spectrum`]: the half-line spectra and the per-level force coefficients.
//! - [`statmech`]: the particle-number constraint, the reduced chemical
//!   constant, and the exact net force by direct or resummed sums.
//! - [`approx`]: the closed-form high/low/medium temperature approximations,
//!   Padé regularizations, and the crossover interpolation.
//! - [`oracle`]: an eigenvalue-shooting cross-check of the per-level force
//!   coefficients.
//! - [`cli`]: the command-line front end (single solves, sweeps, comparison
//!   tables, fits, verification) behind the `partition-force` binary.
//!
//! Forces are reported in units of `E/(2 sqrt(pi) a)` with `a` the oscillator
//! length and `E` the doubled level spacing; see
//! [`spectrum::PhysicalScales`].

// Guards like `!(x > 0.0)` are deliberate: they reject NaN along with the
// out-of-domain values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod approx;
pub mod cli;
pub mod error;
mod numeric;
pub mod oracle;
pub mod spectrum;
pub mod statmech;

pub use error::{Error, RegimeWarning, Result};

/// Worker count for data-parallel sections: the `PARTITION_FORCE_THREADS`
/// environment variable when set to a positive value, otherwise (or when set
/// to 0) the available parallelism.
pub fn thread_count() -> usize {
    match std::env::var("PARTITION_FORCE_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        Some(n) if n > 0 => n,
        _ => std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1),
    }
}
