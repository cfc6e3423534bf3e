//! Detection as a quantum channel: a SWAP interaction transfers the source
//! state into the detector exactly, and every channel raises fidelity, which
//! is what pushes the SNR bound back onto the source states.

use qsnr::attainment::{apply_detection, DetectionModel};
use qsnr::bounds::{snr, snr_bound_from_fidelity, Observable};
use qsnr::linalg::UnitaryMatrix;
use qsnr::metrics::quantum_fidelity;
use qsnr::random::{derive_seed, random_density, random_hermitian, random_unitary};

fn main() {
    // SWAP: the detector ends up in the exact source state
    let rho_s = random_density(3, 2, 1).unwrap();
    let rho_d0 = random_density(3, 3, 2).unwrap();
    let swap = DetectionModel::new(UnitaryMatrix::swap(3), rho_d0, 3).unwrap();
    let out = apply_detection(&swap, &rho_s).unwrap();
    println!(
        "SWAP transfer residual: {:.3e}",
        (out.matrix() - rho_s.matrix()).norm()
    );

    // random channels never decrease fidelity
    println!();
    println!("{:>6} {:>14} {:>14} {:>12}", "seed", "F source", "F detector", "gain");
    for seed in 0..8u64 {
        let u = random_unitary(6, derive_seed(seed, 1));
        let rho_d0 = random_density(3, 1 + (seed as usize % 3), derive_seed(seed, 2)).unwrap();
        let model = DetectionModel::new(u, rho_d0, 2).unwrap();
        let s1 = random_density(2, 1, derive_seed(seed, 3)).unwrap();
        let s2 = random_density(2, 2, derive_seed(seed, 4)).unwrap();
        let d1 = apply_detection(&model, &s1).unwrap();
        let d2 = apply_detection(&model, &s2).unwrap();
        let f_src = quantum_fidelity(&s1, &s2).unwrap();
        let f_det = quantum_fidelity(&d1, &d2).unwrap();
        println!(
            "{seed:>6} {:>14.10} {:>14.10} {:>12.4e}",
            f_src,
            f_det,
            f_det - f_src
        );
        assert!(f_det >= f_src - 1e-9);
    }

    // consequence: the SNR of any detector observable is capped by the
    // bound computed from the source fidelity alone
    println!();
    let u = random_unitary(6, 100);
    let rho_d0 = random_density(3, 2, 101).unwrap();
    let model = DetectionModel::new(u, rho_d0, 2).unwrap();
    let s1 = random_density(2, 1, 102).unwrap();
    let s2 = random_density(2, 2, 103).unwrap();
    let d1 = apply_detection(&model, &s1).unwrap();
    let d2 = apply_detection(&model, &s2).unwrap();
    let bound = snr_bound_from_fidelity(quantum_fidelity(&s1, &s2).unwrap()).unwrap();
    println!("source-fidelity SNR cap = {:?}", bound);
    for seed in 0..5u64 {
        let a = Observable::new(random_hermitian(3, derive_seed(seed, 10)));
        let measured = snr(&a, &d1, &d2).unwrap();
        println!("  detector observable seed {seed}: snr = {measured:?}");
    }
}
