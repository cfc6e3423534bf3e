//! Estimating fidelity from measurement statistics: the SNR-based upper
//! bound on F^2 versus the swap-test superfidelity bound, on the worked
//! three-level pair and on random instances.

use qsnr::applications::{compare_fidelity_bounds, Tighter};
use qsnr::bounds::Observable;
use qsnr::linalg::{DensityMatrix, HermitianOperator};
use qsnr::random::{derive_seed, random_density, random_hermitian};

fn show(label: &str, cmp: &qsnr::applications::FidelityBoundComparison) {
    let verdict = match cmp.tighter {
        Tighter::SnrBased => "snr_based tighter",
        Tighter::Superfidelity => "superfidelity tighter",
        Tighter::Tie => "tie",
    };
    println!(
        "{label:<28} true F^2 = {:.6}  snr_based = {:.6}  superfidelity = {:.6}  -> {verdict}",
        cmp.true_f2, cmp.snr_based, cmp.superfidelity
    );
}

fn main() {
    // the worked three-level pair: diagonal states with swapped extremes,
    // measured by A = diag(-1, 0, 1)
    let a = Observable::new(HermitianOperator::from_real_diagonal(&[-1.0, 0.0, 1.0]));
    let rho1 = DensityMatrix::from_diagonal(&[0.5, 1.0 / 6.0, 1.0 / 3.0]).unwrap();
    let rho2 = DensityMatrix::from_diagonal(&[1.0 / 3.0, 1.0 / 6.0, 0.5]).unwrap();
    let cmp = compare_fidelity_bounds(&a, &rho1, &rho2).unwrap();
    show("worked 3x3 pair", &cmp);
    println!(
        "  exact values: snr_based = 29/30 = {:.12}, superfidelity = 35/36 = {:.12}",
        29.0 / 30.0,
        35.0 / 36.0
    );

    // random instances: with an unaligned observable the signal is weak and
    // the swap-test bound usually wins; the worked pair shows the reverse
    println!();
    for seed in 0..8u64 {
        let dim = 2 + (seed as usize % 3);
        let r1 = random_density(dim, dim, derive_seed(seed, 1)).unwrap();
        let r2 = random_density(dim, 1 + (seed as usize % dim), derive_seed(seed, 2)).unwrap();
        let obs = Observable::new(random_hermitian(dim, derive_seed(seed, 3)));
        let cmp = compare_fidelity_bounds(&obs, &r1, &r2).unwrap();
        show(&format!("random dim {dim}, seed {seed}"), &cmp);
        assert!(cmp.snr_based >= cmp.true_f2 - 1e-9);
        assert!(cmp.superfidelity >= cmp.true_f2 - 1e-9);
    }
}
