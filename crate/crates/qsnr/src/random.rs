//! Seeded random sampling of states, unitaries and observables.
//!
//! Every sampler takes an explicit 64-bit seed and is deterministic; there is
//! no global generator. Sub-seeds for compound objects are derived with
//! [`derive_seed`] so that sweeps stay reproducible instance by instance.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{partial_trace, CMatrix, CVector, DensityMatrix, HermitianOperator, Keep, UnitaryMatrix};

/// SplitMix64-style mixing of a base seed with a salt.
pub fn derive_seed(base: u64, salt: u64) -> u64 {
    let mut z = base
        .wrapping_add(salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
        .wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    DMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Haar-like random unitary: QR of a complex Gaussian matrix with the
/// diagonal of the triangular factor rotated to be real positive.
pub fn random_unitary(dim: usize, seed: u64) -> UnitaryMatrix {
    let mut rng = rng_for(seed);
    let g = gaussian_matrix(dim, dim, &mut rng);
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for k in 0..dim {
        let rkk = r[(k, k)];
        let n = rkk.norm();
        let phase = if n > 0.0 {
            rkk / Complex64::new(n, 0.0)
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..dim {
            q[(i, k)] *= phase;
        }
    }
    UnitaryMatrix::new(q).expect("QR of a Gaussian matrix yields a unitary")
}

/// Random density matrix of the requested rank: partial trace over a
/// `rank`-dimensional environment of a pseudorandom pure state on
/// `dim x rank` (Hilbert-Schmidt-style induced measure).
pub fn random_density(dim: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    if rank < 1 || rank > dim {
        return Err(Error::RankOutOfRange { rank, dim });
    }
    let mut rng = rng_for(seed);
    let mut v = CVector::from_fn(dim * rank, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let n = v.norm();
    v /= Complex64::new(n, 0.0);
    let joint = &v * v.adjoint();
    let reduced = partial_trace(&joint, dim, rank, Keep::A)?;
    DensityMatrix::from_matrix(reduced)
}

/// Random pure state as a density matrix.
pub fn random_pure(dim: usize, seed: u64) -> DensityMatrix {
    random_density(dim, 1, seed).expect("rank 1 is always in range")
}

/// Random probability distribution: squared-Gaussian weights, normalized.
pub fn random_distribution(len: usize, seed: u64) -> crate::metrics::ProbabilityDistribution {
    let mut rng = rng_for(seed);
    let mut w: Vec<f64> = (0..len)
        .map(|_| {
            let x: f64 = rng.sample(StandardNormal);
            x * x
        })
        .collect();
    let sum: f64 = w.iter().sum();
    for x in &mut w {
        *x /= sum;
    }
    crate::metrics::ProbabilityDistribution::new(w).expect("normalized weights form a distribution")
}

/// GUE-style random Hermitian operator `(G + G+) / 2`.
pub fn random_hermitian(dim: usize, seed: u64) -> HermitianOperator {
    let mut rng = rng_for(seed);
    let g = gaussian_matrix(dim, dim, &mut rng);
    let h = (&g + g.adjoint()) * Complex64::new(0.5, 0.0);
    HermitianOperator::new(h).expect("symmetrized matrix is Hermitian")
}
