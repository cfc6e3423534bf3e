//! The two-dimensional reduction behind the signal lemma: the objective
//! g(b, P, Q), its stationary point b*, and the closed-form maximum that
//! turns into the fidelity bound.

use qsnr::bounds::{b_star, g_function, g_maximum, ReductionPoint};

fn grid_max(p: f64, q: f64) -> (f64, f64) {
    let steps = 200_000;
    let mut best = f64::NEG_INFINITY;
    let mut arg = -1.0;
    for k in 0..=steps {
        let b = -1.0 + 2.0 * k as f64 / steps as f64;
        let g = g_function(&ReductionPoint::new(p, q, b).unwrap()).unwrap();
        if g > best {
            best = g;
            arg = b;
        }
    }
    (best, arg)
}

fn main() {
    println!(
        "{:>6} {:>6} {:>10} {:>12} {:>12} {:>12}",
        "P", "Q", "b*", "g(b*)", "grid max", "grid argmax"
    );
    for (p, q) in [
        (0.2, 0.1),
        (0.05, 0.4),
        (0.3, 0.3),
        (0.45, 0.5),
        (0.9, 0.8), // P + Q > 1: stationary point leaves [-1, 1]
        (0.7, 0.6),
    ] {
        let (gmax, garg) = grid_max(p, q);
        let analytic = g_maximum(p, q).unwrap();
        let bs = match b_star(p, q) {
            Ok(b) => format!("{b:.6}"),
            Err(_) => "boundary".to_string(),
        };
        println!(
            "{:>6.2} {:>6.2} {:>10} {:>12.8} {:>12.8} {:>12.6}",
            p, q, bs, analytic, gmax, garg
        );
        assert!((gmax - analytic).abs() < 1e-6);
    }
    println!();
    println!("for P + Q <= 1 the maximum sits at b* = -sqrt(PQ/((1-P)(1-Q)));");
    println!("for P + Q > 1 it moves to the edge b = -1 with value (P-Q)^2.");
}
