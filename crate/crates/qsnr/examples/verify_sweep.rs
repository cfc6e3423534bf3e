//! A randomized verification sweep: every inequality family checked on
//! seeded instances, with per-check violation counters.

use qsnr::cli::{run_sweep, Check, SweepConfig};

fn main() {
    let cfg = SweepConfig {
        dims: vec![2, 3, 4, 5],
        instances_per_dim: 200,
        base_seed: 0,
        tolerance: 1e-9,
        checks: Check::ALL.to_vec(),
    };
    let report = run_sweep(&cfg, true).unwrap();
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    assert_eq!(report.total_violations, 0);

    // the tolerance is load-bearing: at 1e-30 the equality cases (pure
    // states meeting the superfidelity bound) surface float noise
    let overtight = SweepConfig {
        tolerance: 1e-30,
        checks: vec![Check::FidelityBounds],
        ..cfg
    };
    let report = run_sweep(&overtight, false).unwrap();
    println!(
        "at tolerance 1e-30 the same instances report {} ulp-level violations (max {:.3e})",
        report.total_violations, report.checks[0].max_violation
    );
}
