//! Vacuum-vs-coherent-state SNR bounds on a truncated Fock space.
//!
//! The multimode amplitude integral enters every formula only through the
//! mean photon number `nbar`, so the state is reduced to a single mode with
//! real amplitude `sqrt(nbar)`.

use num_complex::Complex64;

use crate::bounds::ExtendedReal;
use crate::error::{Error, Result};
use crate::linalg::{CVector, DensityMatrix};

/// Mean photon number plus the Fock-space truncation used for numerics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoherentSpec {
    pub nbar: f64,
    pub truncation_dim: usize,
}

impl CoherentSpec {
    pub fn new(nbar: f64, truncation_dim: usize) -> Result<Self> {
        if !nbar.is_finite() || nbar < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "nbar must be nonnegative, got {nbar}"
            )));
        }
        if truncation_dim < 2 {
            return Err(Error::InvalidParameter(format!(
                "truncation_dim must be at least 2, got {truncation_dim}"
            )));
        }
        Ok(Self {
            nbar,
            truncation_dim,
        })
    }

    /// Smallest truncation whose Poisson tail mass is below `1e-10`.
    pub fn with_default_truncation(nbar: f64) -> Result<Self> {
        if !nbar.is_finite() || nbar < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "nbar must be nonnegative, got {nbar}"
            )));
        }
        let mut dim = 2;
        while poisson_tail(nbar, dim) >= 1e-10 {
            dim += 1;
        }
        Self::new(nbar, dim)
    }
}

/// Poisson(nbar) weights `e^{-nbar} nbar^n / n!` for `n < dim`.
pub(crate) fn poisson_weights(nbar: f64, dim: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(dim);
    let mut current = (-nbar).exp();
    for n in 0..dim {
        w.push(current);
        current *= nbar / (n + 1) as f64;
    }
    w
}

/// Probability mass above the truncation.
pub(crate) fn poisson_tail(nbar: f64, dim: usize) -> f64 {
    let kept: f64 = poisson_weights(nbar, dim).iter().sum();
    (1.0 - kept).max(0.0)
}

/// Closed-form vacuum overlap `F = exp(-nbar / 2)`.
pub fn coherent_fidelity(spec: &CoherentSpec) -> f64 {
    (-spec.nbar / 2.0).exp()
}

/// Truncated coherent state with amplitude `sqrt(nbar)` (phase 0):
/// Fock amplitudes proportional to `nbar^{n/2} / sqrt(n!)`, renormalized.
pub fn truncated_coherent_state(spec: &CoherentSpec) -> Result<DensityMatrix> {
    let tail = poisson_tail(spec.nbar, spec.truncation_dim);
    if tail > 1e-6 {
        return Err(Error::TruncationTooSmall {
            dim: spec.truncation_dim,
            tail,
        });
    }
    let weights = poisson_weights(spec.nbar, spec.truncation_dim);
    let mut v = CVector::zeros(spec.truncation_dim);
    for (n, &w) in weights.iter().enumerate() {
        v[n] = Complex64::new(w.sqrt(), 0.0);
    }
    DensityMatrix::pure(&v)
}

/// Which form of the coherent-state bound to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundVariant {
    /// `x / (1 - x)` with `x = sqrt(1 - e^{-nbar})`: the universal bound
    /// evaluated at the vacuum overlap `F = e^{-nbar/2}`.
    Strict,
    /// `2x / (1 - x)`: the variant whose numerator carries an extra factor
    /// of two, matching the small-amplitude behavior `2 sqrt(nbar)`.
    Doubled,
}

/// Coherent-state SNR bound in either variant; infinite once the
/// overlap underflows.
pub fn coherent_snr_bound(spec: &CoherentSpec, variant: BoundVariant) -> ExtendedReal {
    let x = (1.0 - (-spec.nbar).exp()).max(0.0).sqrt();
    if 1.0 - x <= 0.0 {
        return ExtendedReal::PosInfinity;
    }
    let factor = match variant {
        BoundVariant::Strict => 1.0,
        BoundVariant::Doubled => 2.0,
    };
    ExtendedReal::Finite(factor * x / (1.0 - x))
}
