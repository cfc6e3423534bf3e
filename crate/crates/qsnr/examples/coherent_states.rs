//! Vacuum-vs-coherent detection: the closed-form overlap against truncated
//! Fock-space numerics, and the SNR bound in both variants.

use qsnr::applications::{
    coherent_fidelity, coherent_snr_bound, truncated_coherent_state, BoundVariant, CoherentSpec,
};
use qsnr::linalg::DensityMatrix;
use qsnr::metrics::quantum_fidelity;

fn main() {
    println!(
        "{:>10} {:>6} {:>14} {:>14} {:>12} {:>12}",
        "nbar", "dim", "F closed", "F truncated", "bound", "doubled"
    );
    for nbar in [1e-4, 1e-2, 0.1, 0.5, 1.0, 2.0, 4.0] {
        let spec = CoherentSpec::with_default_truncation(nbar).unwrap();
        let rho = truncated_coherent_state(&spec).unwrap();
        let vacuum = {
            let mut diag = vec![0.0; spec.truncation_dim];
            diag[0] = 1.0;
            DensityMatrix::from_diagonal(&diag).unwrap()
        };
        let closed = coherent_fidelity(&spec);
        let numeric = quantum_fidelity(&rho, &vacuum).unwrap();
        let strict = coherent_snr_bound(&spec, BoundVariant::Strict);
        let doubled = coherent_snr_bound(&spec, BoundVariant::Doubled);
        println!(
            "{:>10.1e} {:>6} {:>14.10} {:>14.10} {:>12.6} {:>12.6}",
            nbar,
            spec.truncation_dim,
            closed,
            numeric,
            strict.finite().unwrap(),
            doubled.finite().unwrap(),
        );
        assert!((closed - numeric).abs() < 1e-8);
    }

    // small-amplitude behavior: the doubled variant approaches 2 sqrt(nbar)
    println!();
    println!("small-amplitude expansion of the doubled variant:");
    for nbar in [1e-6, 1e-5, 1e-4, 1e-3] {
        let spec = CoherentSpec::new(nbar, 4).unwrap();
        let doubled = coherent_snr_bound(&spec, BoundVariant::Doubled)
            .finite()
            .unwrap();
        println!(
            "  nbar = {:>8.1e}: bound / (2 sqrt(nbar)) = {:.6}",
            nbar,
            doubled / (2.0 * nbar.sqrt())
        );
    }
}
