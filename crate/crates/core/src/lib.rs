//! Entropic uncertainty lower bounds for pairs of arbitrary quantum measurements.
//!
//! The crate works on finite-dimensional Hilbert spaces with dense complex
//! matrices and covers:
//!
//! - outcome distributions and Shannon entropies of measurements,
//! - state-dependent and state-independent lower bounds on `H(X) + H(Y)`
//!   for projective measurements and general POVMs,
//! - a single-measurement bound,
//! - Naimark dilation of a POVM to a projective measurement on `H ⊕ K`,
//! - numerical checks of the Riesz–Thorin interpolation chain behind the
//!   projective bound,
//! - the Peter–Weyl measurements and noncommutative Fourier transform of a
//!   small catalog of finite groups.
//!
//! All entropies and bounds are reported in bits.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and the
//! command-line driver live in the `eup-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod entropy_bounds;
pub mod error;
pub mod group_fourier;
pub mod interpolation;
mod math;
pub mod measurement;
pub mod naimark;
pub mod numerics;
pub mod tolerance;

pub use entropy_bounds::{
    bound_single, bound_state_dependent, bound_state_independent, entropy, minimize_gap,
    mixed_bound_check, outcome_distribution, overlap_matrix, BoundReport, GapSearch,
    MixedBoundReport, OverlapMatrix, Theorem,
};
pub use error::{Error, Result};
pub use measurement::{
    Measurement, MeasurementKind, MixedState, OutcomeDistribution, PureState, QuantumState,
};
pub use naimark::NaimarkDilation;
pub use num_complex::Complex64;
pub use numerics::{EigenDecomposition, Matrix};
