//! Quantum and classical fidelity, Bures distance, Born distributions,
//! purity, and the swap-test superfidelity bound.

use num_complex::Complex64;

use crate::bounds::Observable;
use crate::error::{Error, Result};
use crate::linalg::{
    eig_hermitian, psd_sqrt, trace_product, DensityMatrix, HermitianOperator, TOL_VALIDATION,
};

/// A validated classical probability distribution.
///
/// Tiny negative weights (down to `-1e-12`) are clamped to zero and a total
/// drift of up to `1e-10` is renormalized away; anything worse is rejected.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityDistribution {
    weights: Vec<f64>,
}

impl ProbabilityDistribution {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        let mut w = weights;
        for x in &mut w {
            if *x < 0.0 {
                if *x < -TOL_VALIDATION {
                    return Err(Error::InvalidDistribution(format!(
                        "negative weight {x:.3e}"
                    )));
                }
                *x = 0.0;
            }
        }
        let sum: f64 = w.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidDistribution(format!(
                "weights sum to {sum:.17}, expected 1"
            )));
        }
        if sum > 0.0 {
            for x in &mut w {
                *x /= sum;
            }
        }
        Ok(Self { weights: w })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Uhlmann fidelity `F(rho1, rho2) = Tr sqrt(sqrt(rho1) rho2 sqrt(rho1))`,
/// clamped into `[0, 1]`.
pub fn quantum_fidelity(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    if rho1.dim() != rho2.dim() {
        return Err(Error::DimMismatch {
            left: rho1.dim(),
            right: rho2.dim(),
        });
    }
    let s = psd_sqrt(rho1);
    let inner = s.matrix() * rho2.matrix() * s.matrix();
    let h = HermitianOperator::new(inner)?;
    let spec = eig_hermitian(&h);
    // PSD up to float drift; zero out drift-level eigenvalues before the
    // square root (a spurious 1e-16 would otherwise contribute 1e-8)
    let floor = spec
        .eigenvalues()
        .iter()
        .fold(0.0f64, |acc, x| acc.max(*x))
        * crate::linalg::PSD_NOISE_FLOOR;
    let mut f = 0.0;
    for &lam in spec.eigenvalues() {
        if lam > floor {
            f += lam.sqrt();
        }
    }
    Ok(f.clamp(0.0, 1.0))
}

/// Bures distance `sqrt(1 - F)` between states.
pub fn bures_distance(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    let f = quantum_fidelity(rho1, rho2)?;
    Ok((1.0 - f).max(0.0).sqrt())
}

/// Outcome distribution `p_i = <a_i| rho |a_i>` of measuring `a` on `rho`,
/// ordered by the observable's ascending eigenvalues.
pub fn born_distribution(rho: &DensityMatrix, a: &Observable) -> Result<ProbabilityDistribution> {
    if rho.dim() != a.dim() {
        return Err(Error::DimMismatch {
            left: rho.dim(),
            right: a.dim(),
        });
    }
    let d = rho.dim();
    let vecs = a.spectral().eigenvectors();
    let mut weights = Vec::with_capacity(d);
    for k in 0..d {
        let col = vecs.column(k);
        let mut p = Complex64::new(0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                p += col[i].conj() * rho.matrix()[(i, j)] * col[j];
            }
        }
        weights.push(p.re);
    }
    ProbabilityDistribution::new(weights)
}

/// Bhattacharyya coefficient `sum_i sqrt(p_i q_i)`.
pub fn classical_fidelity(
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    let f: f64 = p
        .weights()
        .iter()
        .zip(q.weights())
        .map(|(&pi, &qi)| (pi * qi).sqrt())
        .sum();
    Ok(f.clamp(0.0, 1.0))
}

/// Classical Bures distance `sqrt(1 - sum_i sqrt(p_i q_i))`.
pub fn classical_bures(p: &ProbabilityDistribution, q: &ProbabilityDistribution) -> Result<f64> {
    let f = classical_fidelity(p, q)?;
    Ok((1.0 - f).max(0.0).sqrt())
}

/// `Tr[rho^2]`, in `[1/d, 1]`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    trace_product(rho.matrix(), rho.matrix()).re
}

/// Swap-test upper bound on squared fidelity:
/// `Tr[rho1 rho2] + sqrt((1 - Tr[rho1^2])(1 - Tr[rho2^2]))`.
pub fn superfidelity_bound(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    if rho1.dim() != rho2.dim() {
        return Err(Error::DimMismatch {
            left: rho1.dim(),
            right: rho2.dim(),
        });
    }
    let overlap = trace_product(rho1.matrix(), rho2.matrix()).re;
    let m1 = (1.0 - purity(rho1)).max(0.0);
    let m2 = (1.0 - purity(rho2)).max(0.0);
    Ok(overlap + (m1 * m2).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{partial_trace, tensor, CVector, Keep};
    use crate::random::{derive_seed, random_density, random_hermitian, random_unitary};

    fn worked_pair() -> (DensityMatrix, DensityMatrix) {
        let rho1 = DensityMatrix::from_diagonal(&[0.5, 1.0 / 6.0, 1.0 / 3.0]).unwrap();
        let rho2 = DensityMatrix::from_diagonal(&[1.0 / 3.0, 1.0 / 6.0, 0.5]).unwrap();
        (rho1, rho2)
    }

    /// Spectra paired in the shared eigenbasis; independent route for
    /// commuting states.
    fn commuting_fidelity(p: &[f64], q: &[f64]) -> f64 {
        p.iter().zip(q).map(|(&a, &b)| (a * b).sqrt()).sum()
    }

    #[test]
    fn fidelity_of_identical_states_is_one() {
        let rho = random_density(4, 2, 1).unwrap();
        assert!((quantum_fidelity(&rho, &rho).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn fidelity_of_orthogonal_pure_states_is_zero() {
        let zero = DensityMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        let one = DensityMatrix::from_diagonal(&[0.0, 1.0]).unwrap();
        assert!(quantum_fidelity(&zero, &one).unwrap() < 1e-10);
        assert!((bures_distance(&zero, &one).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn fidelity_of_worked_pair_matches_commuting_route() {
        let (rho1, rho2) = worked_pair();
        let expected = commuting_fidelity(
            &[0.5, 1.0 / 6.0, 1.0 / 3.0],
            &[1.0 / 3.0, 1.0 / 6.0, 0.5],
        );
        let f = quantum_fidelity(&rho1, &rho2).unwrap();
        assert!((f - expected).abs() < 1e-10);
        assert!((f - 0.983164).abs() < 1e-6);
        let lb = bures_distance(&rho1, &rho2).unwrap();
        assert!((lb - (1.0 - expected).sqrt()).abs() < 1e-10);
        assert!((lb - 0.129756).abs() < 1e-6);
    }

    #[test]
    fn fidelity_is_symmetric() {
        let a = random_density(5, 3, 41).unwrap();
        let b = random_density(5, 5, 42).unwrap();
        let fab = quantum_fidelity(&a, &b).unwrap();
        let fba = quantum_fidelity(&b, &a).unwrap();
        assert!((fab - fba).abs() < 1e-10);
    }

    #[test]
    fn fidelity_is_unitarily_invariant() {
        for seed in 0..20u64 {
            let a = random_density(4, 2, derive_seed(seed, 1)).unwrap();
            let b = random_density(4, 4, derive_seed(seed, 2)).unwrap();
            let u = random_unitary(4, derive_seed(seed, 3));
            let rot = |rho: &DensityMatrix| {
                DensityMatrix::from_matrix(u.matrix() * rho.matrix() * u.matrix().adjoint())
                    .unwrap()
            };
            let f = quantum_fidelity(&a, &b).unwrap();
            let fr = quantum_fidelity(&rot(&a), &rot(&b)).unwrap();
            assert!((f - fr).abs() < 1e-10, "seed {seed}");
        }
    }

    #[test]
    fn classical_dominates_quantum_fidelity() {
        for seed in 0..50u64 {
            let rho1 = random_density(3, 3, derive_seed(seed, 4)).unwrap();
            let rho2 = random_density(3, 2, derive_seed(seed, 5)).unwrap();
            let a = Observable::new(random_hermitian(3, derive_seed(seed, 6)));
            let p = born_distribution(&rho1, &a).unwrap();
            let q = born_distribution(&rho2, &a).unwrap();
            let fc = classical_fidelity(&p, &q).unwrap();
            let fq = quantum_fidelity(&rho1, &rho2).unwrap();
            assert!(fc >= fq - 1e-9, "seed {seed}: {fc} < {fq}");
        }
    }

    #[test]
    fn partial_trace_increases_fidelity() {
        for seed in 0..30u64 {
            let s1 = random_density(6, 4, derive_seed(seed, 7)).unwrap();
            let s2 = random_density(6, 6, derive_seed(seed, 8)).unwrap();
            let r1 = DensityMatrix::from_matrix(
                partial_trace(s1.matrix(), 2, 3, Keep::A).unwrap(),
            )
            .unwrap();
            let r2 = DensityMatrix::from_matrix(
                partial_trace(s2.matrix(), 2, 3, Keep::A).unwrap(),
            )
            .unwrap();
            let joint = quantum_fidelity(&s1, &s2).unwrap();
            let reduced = quantum_fidelity(&r1, &r2).unwrap();
            assert!(reduced >= joint - 1e-9, "seed {seed}");
        }
    }

    #[test]
    fn fidelity_multiplies_over_tensor_products() {
        let a1 = random_density(2, 2, 61).unwrap();
        let a2 = random_density(2, 1, 62).unwrap();
        let b = random_density(3, 2, 63).unwrap();
        let j1 = DensityMatrix::from_matrix(tensor(a1.matrix(), b.matrix())).unwrap();
        let j2 = DensityMatrix::from_matrix(tensor(a2.matrix(), b.matrix())).unwrap();
        let f_joint = quantum_fidelity(&j1, &j2).unwrap();
        let f_factor = quantum_fidelity(&a1, &a2).unwrap();
        assert!((f_joint - f_factor).abs() < 1e-10);
    }

    #[test]
    fn born_distribution_basics() {
        let a = Observable::new(HermitianOperator::from_real_diagonal(&[-1.0, 0.0, 1.0]));
        let uniform = born_distribution(&DensityMatrix::maximally_mixed(3), &a).unwrap();
        for &w in uniform.weights() {
            assert!((w - 1.0 / 3.0).abs() < 1e-12);
        }

        let (rho1, _) = worked_pair();
        let p = born_distribution(&rho1, &a).unwrap();
        assert!((p.weights()[0] - 0.5).abs() < 1e-12);
        assert!((p.weights()[1] - 1.0 / 6.0).abs() < 1e-12);
        assert!((p.weights()[2] - 1.0 / 3.0).abs() < 1e-12);

        let rho = random_density(4, 3, 11).unwrap();
        let b = Observable::new(random_hermitian(4, 12));
        let w = born_distribution(&rho, &b).unwrap();
        assert!((w.weights().iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn classical_fidelity_and_bures() {
        let half = ProbabilityDistribution::new(vec![0.5, 0.5]).unwrap();
        assert!((classical_fidelity(&half, &half).unwrap() - 1.0).abs() < 1e-12);
        assert!(classical_bures(&half, &half).unwrap() < 1e-8);

        let p = ProbabilityDistribution::new(vec![1.0, 0.0]).unwrap();
        let q = ProbabilityDistribution::new(vec![0.0, 1.0]).unwrap();
        assert!(classical_fidelity(&p, &q).unwrap() < 1e-12);
        assert!((classical_bures(&p, &q).unwrap() - 1.0).abs() < 1e-12);

        let p3 = ProbabilityDistribution::new(vec![0.5, 1.0 / 6.0, 1.0 / 3.0]).unwrap();
        let q3 = ProbabilityDistribution::new(vec![1.0 / 3.0, 1.0 / 6.0, 0.5]).unwrap();
        let expected = commuting_fidelity(p3.weights(), q3.weights());
        assert!((classical_fidelity(&p3, &q3).unwrap() - expected).abs() < 1e-12);
        assert!((expected - 0.983164).abs() < 1e-6);
        assert!(
            (classical_bures(&p3, &q3).unwrap() - (1.0 - expected).sqrt()).abs() < 1e-12
        );
    }

    #[test]
    fn distribution_validation() {
        assert!(ProbabilityDistribution::new(vec![0.5, 0.4]).is_err());
        assert!(ProbabilityDistribution::new(vec![0.5, -0.1, 0.6]).is_err());
        // tiny negative clamps away
        let p = ProbabilityDistribution::new(vec![1.0 + 1e-13, -1e-13]).unwrap();
        assert_eq!(p.weights()[1], 0.0);
    }

    #[test]
    fn purity_values() {
        let pure = random_density(4, 1, 5).unwrap();
        assert!((purity(&pure) - 1.0).abs() < 1e-10);
        assert!((purity(&DensityMatrix::maximally_mixed(4)) - 0.25).abs() < 1e-12);
        let (rho1, _) = worked_pair();
        assert!((purity(&rho1) - 7.0 / 18.0).abs() < 1e-14);
    }

    #[test]
    fn superfidelity_dominates_squared_fidelity() {
        let pure = random_density(3, 1, 71).unwrap();
        assert!((superfidelity_bound(&pure, &pure).unwrap() - 1.0).abs() < 1e-10);

        let (rho1, rho2) = worked_pair();
        let sf = superfidelity_bound(&rho1, &rho2).unwrap();
        assert!((sf - 35.0 / 36.0).abs() < 1e-14);

        for seed in 0..30u64 {
            let a = random_density(4, 3, derive_seed(13, seed)).unwrap();
            let b = random_density(4, 2, derive_seed(14, seed)).unwrap();
            let f = quantum_fidelity(&a, &b).unwrap();
            let bound = superfidelity_bound(&a, &b).unwrap();
            assert!(bound >= f * f - 1e-10, "seed {seed}");
        }
    }

    #[test]
    fn commuting_states_reduce_to_classical_fidelity() {
        // shared random eigenbasis, different spectra
        let u = random_unitary(4, 81);
        let spectra = [
            [0.4, 0.3, 0.2, 0.1],
            [0.1, 0.2, 0.3, 0.4],
        ];
        let rot = |diag: &[f64]| {
            let d = HermitianOperator::from_real_diagonal(diag);
            DensityMatrix::from_matrix(u.matrix() * d.matrix() * u.matrix().adjoint()).unwrap()
        };
        let rho1 = rot(&spectra[0]);
        let rho2 = rot(&spectra[1]);
        let expected = commuting_fidelity(&spectra[0], &spectra[1]);
        assert!((quantum_fidelity(&rho1, &rho2).unwrap() - expected).abs() < 1e-10);
    }

    #[test]
    fn pure_states_via_vectors() {
        let mut v = CVector::zeros(2);
        v[0] = num_complex::Complex64::new(1.0, 0.0);
        v[1] = num_complex::Complex64::new(1.0, 0.0);
        let plus = DensityMatrix::pure(&v).unwrap();
        let zero = DensityMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        let f = quantum_fidelity(&plus, &zero).unwrap();
        assert!((f - 0.5f64.sqrt()).abs() < 1e-12);
    }
}
