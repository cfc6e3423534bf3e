//! Power consumption of rapid quantum switching: the first-order formula
//! against exact-evolution finite differences, and the fidelity bound that
//! caps the power through the control states alone.

use qsnr::applications::{switching_power, switching_power_bound, SwitchingSystem};
use qsnr::bounds::{ExtendedReal, Observable};
use qsnr::linalg::{expectation, DensityMatrix};
use qsnr::random::{derive_seed, random_density, random_hermitian};

fn random_system(seed: u64) -> SwitchingSystem {
    SwitchingSystem::new(
        Observable::new(random_hermitian(2, derive_seed(seed, 1))),
        Observable::new(random_hermitian(2, derive_seed(seed, 2))),
        random_hermitian(4, derive_seed(seed, 3)),
        random_density(2, 2, derive_seed(seed, 4)).unwrap(),
        random_density(2, 1, derive_seed(seed, 5)).unwrap(),
        random_density(2, 2, derive_seed(seed, 6)).unwrap(),
        1.0,
    )
    .unwrap()
}

fn finite_difference(sys: &SwitchingSystem, tau: f64) -> f64 {
    let e_t = |rho: &DensityMatrix| expectation(sys.h_t().hermitian(), rho).unwrap();
    let on0 = e_t(&sys.evolve_target(&sys.rho_c_on().clone(), 0.0).unwrap());
    let off0 = e_t(&sys.evolve_target(&sys.rho_c_off().clone(), 0.0).unwrap());
    let on = e_t(&sys.evolve_target(&sys.rho_c_on().clone(), tau).unwrap());
    let off = e_t(&sys.evolve_target(&sys.rho_c_off().clone(), tau).unwrap());
    ((on - on0) - (off - off0)) / tau
}

fn main() {
    println!("worked 2x2 system (sigma_z target, sigma_x x sigma_x coupling):");
    let sys = qsnr::cli::worked_switching_system(1e-5).unwrap();
    let p = switching_power(&sys).unwrap();
    println!("  first-order power        = {p:.10e}");
    for tau in [1e-3, 1e-4, 1e-5] {
        println!(
            "  finite difference tau={tau:.0e} = {:.10e}",
            finite_difference(&sys, tau)
        );
    }

    println!();
    println!("random 2x2 (x) 2x2 systems:");
    println!(
        "{:>6} {:>14} {:>14} {:>12} {:>10}",
        "seed", "|power|", "bound", "slack", "fd ratio"
    );
    for seed in 0..10u64 {
        let sys = random_system(seed);
        let p = switching_power(&sys).unwrap();
        let bound = match switching_power_bound(&sys).unwrap() {
            ExtendedReal::Finite(b) => b,
            other => {
                println!("{seed:>6} bound = {other:?}");
                continue;
            }
        };
        // the finite-difference error halves with tau: first-order formula
        let err_full = (finite_difference(&sys, 1e-4) - p).abs();
        let err_half = (finite_difference(&sys, 5e-5) - p).abs();
        let ratio = if err_full > 1e-9 { err_full / err_half } else { f64::NAN };
        println!(
            "{seed:>6} {:>14.8} {:>14.8} {:>12.4e} {:>10.3}",
            p.abs(),
            bound,
            bound - p.abs(),
            ratio
        );
        assert!(p.abs() <= bound + 1e-9);
    }
}
