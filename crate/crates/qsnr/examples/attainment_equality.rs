//! The two explicit constructions that attain the signal bound with
//! equality: a two-level oscillator pair with swapped populations, and a
//! noncommuting qubit pair measured along `sigma_x - I`.

use qsnr::attainment::{oscillator_example, qubit_example, Sign};
use qsnr::bounds::{analyze, lemma_signal_bound, signal};

fn main() {
    println!("oscillator pair: rho1 = diag(cos^2 t, sin^2 t), rho2 swapped, A = w(n - 1/2)");
    println!("{:>8} {:>8} {:>12} {:>12} {:>10}", "theta", "omega", "signal", "bound", "slack");
    for k in 0..8 {
        let theta = k as f64 * std::f64::consts::PI / 16.0;
        for omega in [1.0, 2.0] {
            let (rho1, rho2, a) = oscillator_example(theta, omega).unwrap();
            let s = signal(&a, &rho1, &rho2).unwrap();
            let rhs = lemma_signal_bound(&rho1, &rho2, &a).unwrap();
            println!(
                "{:>8.4} {:>8.1} {:>12.8} {:>12.8} {:>10.2e}",
                theta,
                omega,
                s,
                rhs,
                rhs - s
            );
        }
    }

    println!();
    println!("qubit pair: rho1 = p|0><0| + (1-p)|1><1|, rho2 = |+><+|, A = +-(sigma_x - I)");
    println!("{:>6} {:>5} {:>12} {:>12} {:>10}", "p", "sign", "signal", "bound", "slack");
    for p in [0.0, 0.25, 0.5, 0.75, 1.0] {
        for sign in [Sign::Plus, Sign::Minus] {
            let (rho1, rho2, a) = qubit_example(p, sign).unwrap();
            let s = signal(&a, &rho1, &rho2).unwrap();
            let rhs = lemma_signal_bound(&rho1, &rho2, &a).unwrap();
            println!(
                "{:>6.2} {:>5} {:>12.8} {:>12.8} {:>10.2e}",
                p,
                if sign == Sign::Plus { "+" } else { "-" },
                s,
                rhs,
                rhs - s
            );
        }
    }

    println!();
    println!("full diagnostics for the qubit pair at p = 0.3:");
    let (rho1, rho2, a) = qubit_example(0.3, Sign::Plus).unwrap();
    let report = analyze(&a, &rho1, &rho2).unwrap();
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
}
