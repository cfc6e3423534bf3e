//! Fidelity-based signal-to-noise bounds for quantum detection.
//!
//! A detector reads out the difference between two preparations of a source
//! system through an observable of the device. The attainable
//! signal-to-noise ratio is limited by the quantum fidelity of the two
//! source states alone, independently of the interaction and of the
//! observable. This crate computes the signal, noise and SNR of arbitrary
//! finite-dimensional detection setups, evaluates the fidelity bounds and
//! their slack, constructs the bound-attaining state/observable pairs,
//! searches for SNR-optimal observables, and runs seeded randomized sweeps
//! that verify every inequality on thousands of instances.
//!
//! The `examples/` directory demonstrates each capability end to end; the
//! `qsnr` binary exposes the same machinery as subcommands emitting JSON
//! reports.

pub mod applications;
pub mod attainment;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod io;
pub mod linalg;
pub mod metrics;
pub mod random;

pub use bounds::{BoundReport, ExtendedReal, Observable, ReductionPoint};
pub use error::{Error, Result};
pub use linalg::{
    CMatrix, CVector, DensityMatrix, HermitianOperator, Keep, SpectralDecomposition,
    UnitaryMatrix,
};
pub use metrics::ProbabilityDistribution;
