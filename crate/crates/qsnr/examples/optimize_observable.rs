//! Searching for the SNR-maximizing observable of a state pair, compared
//! against the exhaustive spherical-grid oracle at dimension 2 and against
//! the universal fidelity bound at dimension 3.

use qsnr::attainment::{brute_force_best_snr_dim2, optimize_observable, oscillator_example, OptimizerConfig};
use qsnr::bounds::snr_bound_from_fidelity;
use qsnr::linalg::DensityMatrix;
use qsnr::metrics::quantum_fidelity;
use qsnr::random::{derive_seed, random_density};

fn main() {
    let cfg = OptimizerConfig::default();

    println!("commuting oscillator pair (theta = pi/6):");
    let (rho1, rho2, _) = oscillator_example(std::f64::consts::PI / 6.0, 1.0).unwrap();
    let (obs, found) = optimize_observable(&rho1, &rho2, &cfg).unwrap();
    let oracle = brute_force_best_snr_dim2(&rho1, &rho2, 800).unwrap();
    let bound = snr_bound_from_fidelity(quantum_fidelity(&rho1, &rho2).unwrap()).unwrap();
    println!("  optimizer = {:?}", found);
    println!("  grid oracle (800x800) = {:?}", oracle);
    println!("  fidelity bound = {:?}", bound);
    println!("  best observable eigenvalues = {:?}", obs.eigenvalues());

    println!();
    println!("orthogonal pure states (perfect distinguishability):");
    let up = DensityMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
    let down = DensityMatrix::from_diagonal(&[0.0, 1.0]).unwrap();
    let (_, found) = optimize_observable(&up, &down, &cfg).unwrap();
    println!("  optimizer = {:?} (noise-free readout exists)", found);

    println!();
    println!("random pairs, dimension 2 (optimizer vs oracle) :");
    println!("{:>6} {:>14} {:>14} {:>14}", "seed", "optimizer", "oracle", "bound");
    for seed in 0..6u64 {
        let r1 = random_density(2, 2, derive_seed(seed, 1)).unwrap();
        let r2 = random_density(2, 1, derive_seed(seed, 2)).unwrap();
        let cfg = OptimizerConfig { seed, ..cfg };
        let (_, found) = optimize_observable(&r1, &r2, &cfg).unwrap();
        let oracle = brute_force_best_snr_dim2(&r1, &r2, 400).unwrap();
        let bound = snr_bound_from_fidelity(quantum_fidelity(&r1, &r2).unwrap()).unwrap();
        println!(
            "{seed:>6} {:>14.8} {:>14.8} {:>14.8}",
            found.finite().unwrap(),
            oracle.finite().unwrap(),
            bound.finite().unwrap(),
        );
    }

    println!();
    println!("random pair, dimension 3 (no oracle; slack against the bound):");
    let r1 = random_density(3, 3, 41).unwrap();
    let r2 = random_density(3, 2, 42).unwrap();
    let (_, found) = optimize_observable(&r1, &r2, &cfg).unwrap();
    let bound = snr_bound_from_fidelity(quantum_fidelity(&r1, &r2).unwrap()).unwrap();
    println!(
        "  optimizer = {:.8}, bound = {:.8}, slack = {:.4e}",
        found.finite().unwrap(),
        bound.finite().unwrap(),
        bound.finite().unwrap() - found.finite().unwrap(),
    );
}
