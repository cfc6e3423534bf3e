//! Property tests over seeded random instances: every validated type holds
//! its residual bounds, the spectral operations invert, and the fidelity
//! machinery keeps its symmetries.

use proptest::prelude::*;

use qsnr::bounds::{signal, snr, stddev, ExtendedReal, Observable};
use qsnr::linalg::{
    eig_hermitian, partial_trace, psd_sqrt, tensor, CMatrix, DensityMatrix, Keep,
};
use qsnr::metrics::{born_distribution, classical_fidelity, quantum_fidelity};
use qsnr::random::{derive_seed, random_density, random_hermitian, random_unitary};

use num_complex::Complex64;

/// The qcore invariant batch: 1000 seeded instances across dims 2..=8.
#[test]
fn validated_types_hold_their_residual_bounds() {
    for idx in 0..1000u64 {
        let dim = 2 + (idx % 7) as usize;
        let rank = (idx as usize % dim) + 1;

        let rho = random_density(dim, rank, derive_seed(idx, 1)).unwrap();
        let m = rho.matrix();
        for i in 0..dim {
            for j in 0..dim {
                assert!((m[(i, j)] - m[(j, i)].conj()).norm() <= 1e-12);
            }
        }
        let tr: Complex64 = m.trace();
        assert!((tr.re - 1.0).abs() <= 1e-12 && tr.im.abs() <= 1e-12);

        let u = random_unitary(dim, derive_seed(idx, 2));
        let uu = u.matrix() * u.matrix().adjoint() - CMatrix::identity(dim, dim);
        assert!(uu.norm() < 1e-10, "instance {idx}: unitarity {:.3e}", uu.norm());

        let h = random_hermitian(dim, derive_seed(idx, 3));
        let spec = eig_hermitian(&h);
        assert!((spec.reconstruct() - h.matrix()).norm() < 1e-10, "instance {idx}");
        let gram = spec.eigenvectors().adjoint() * spec.eigenvectors();
        assert!((gram - CMatrix::identity(dim, dim)).norm() < 1e-10);
        for w in spec.eigenvalues().windows(2) {
            assert!(w[0] <= w[1]);
        }

        let root = psd_sqrt(&rho);
        let back = root.matrix() * root.matrix();
        assert!((back - rho.matrix()).norm() < 1e-10, "instance {idx}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tensor_then_partial_trace_recovers_the_factor(
        seed in any::<u64>(),
        da in 2usize..5,
        db in 2usize..5,
        keep_a in any::<bool>(),
    ) {
        let ra = random_density(da, da, derive_seed(seed, 10)).unwrap();
        let rb = random_density(db, 1 + (seed as usize % db), derive_seed(seed, 11)).unwrap();
        let joint = tensor(ra.matrix(), rb.matrix());
        let (kept, expected) = if keep_a {
            (partial_trace(&joint, da, db, Keep::A).unwrap(), ra.matrix())
        } else {
            (partial_trace(&joint, da, db, Keep::B).unwrap(), rb.matrix())
        };
        let diff = &kept - expected;
        let worst = diff.iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
        prop_assert!(worst < 1e-12, "entrywise residual {}", worst);
        // trace is preserved by construction
        let tr: Complex64 = kept.trace();
        prop_assert!((tr.re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fidelity_is_symmetric_bounded_and_unitary_invariant(
        seed in any::<u64>(),
        dim in 2usize..6,
    ) {
        let a = random_density(dim, 1 + (seed as usize % dim), derive_seed(seed, 20)).unwrap();
        let b = random_density(dim, dim, derive_seed(seed, 21)).unwrap();
        let f = quantum_fidelity(&a, &b).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
        let g = quantum_fidelity(&b, &a).unwrap();
        prop_assert!((f - g).abs() < 1e-10);

        let u = random_unitary(dim, derive_seed(seed, 22));
        let rot = |rho: &DensityMatrix| {
            DensityMatrix::from_matrix(u.matrix() * rho.matrix() * u.matrix().adjoint()).unwrap()
        };
        let fr = quantum_fidelity(&rot(&a), &rot(&b)).unwrap();
        prop_assert!((f - fr).abs() < 1e-10);
    }

    #[test]
    fn born_statistics_dominate_quantum_fidelity(
        seed in any::<u64>(),
        dim in 2usize..6,
    ) {
        let rho1 = random_density(dim, dim, derive_seed(seed, 30)).unwrap();
        let rho2 = random_density(dim, 1 + (seed as usize % dim), derive_seed(seed, 31)).unwrap();
        let a = Observable::new(random_hermitian(dim, derive_seed(seed, 32)));
        let p = born_distribution(&rho1, &a).unwrap();
        let q = born_distribution(&rho2, &a).unwrap();
        prop_assert!((p.weights().iter().sum::<f64>() - 1.0).abs() < 1e-10);
        let fc = classical_fidelity(&p, &q).unwrap();
        let fq = quantum_fidelity(&rho1, &rho2).unwrap();
        prop_assert!(fc >= fq - 1e-9, "classical {} < quantum {}", fc, fq);
    }

    #[test]
    fn snr_is_invariant_under_affine_observable_maps(
        seed in any::<u64>(),
        dim in 2usize..6,
        c in prop::sample::select(vec![-3.0f64, -0.7, 0.2, 1.0, 12.5]),
        alpha in -10.0f64..10.0,
    ) {
        let rho1 = random_density(dim, dim, derive_seed(seed, 40)).unwrap();
        let rho2 = random_density(dim, dim, derive_seed(seed, 41)).unwrap();
        let a = Observable::new(random_hermitian(dim, derive_seed(seed, 42)));
        let mut mapped = a.matrix() * Complex64::new(c, 0.0);
        for i in 0..dim {
            mapped[(i, i)] += Complex64::new(alpha, 0.0);
        }
        let b = Observable::from_matrix(mapped).unwrap();
        match (snr(&a, &rho1, &rho2).unwrap(), snr(&b, &rho1, &rho2).unwrap()) {
            (ExtendedReal::Finite(x), ExtendedReal::Finite(y)) => {
                prop_assert!((x - y).abs() < 1e-9 * x.max(1.0), "{} vs {}", x, y);
            }
            (x, y) => prop_assert_eq!(x, y),
        }
        // signal scales by |c|, stddev too
        let s_a = signal(&a, &rho1, &rho2).unwrap();
        let s_b = signal(&b, &rho1, &rho2).unwrap();
        prop_assert!((s_b - c.abs() * s_a).abs() < 1e-9 * s_b.max(1.0));
        let d_a = stddev(&a, &rho1).unwrap();
        let d_b = stddev(&b, &rho1).unwrap();
        prop_assert!((d_b - c.abs() * d_a).abs() < 1e-9 * d_b.max(1.0));
    }

    #[test]
    fn detection_outputs_are_valid_states(
        seed in any::<u64>(),
        ds in 2usize..4,
        dd in 2usize..4,
    ) {
        let u = random_unitary(ds * dd, derive_seed(seed, 50));
        let rho_d0 = random_density(dd, 1 + (seed as usize % dd), derive_seed(seed, 51)).unwrap();
        let model = qsnr::attainment::DetectionModel::new(u, rho_d0, ds).unwrap();
        let rho_s = random_density(ds, ds, derive_seed(seed, 52)).unwrap();
        // construction validates Hermiticity, positivity, and unit trace
        let out = qsnr::attainment::apply_detection(&model, &rho_s).unwrap();
        prop_assert_eq!(out.dim(), dd);
    }
}
