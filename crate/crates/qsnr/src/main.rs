//! Thin command-line front end over the `qsnr` library. All computation
//! lives in `qsnr::cli`; this binary only parses flags, prints reports, and
//! maps errors to exit codes.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use qsnr::attainment::{OptimizerConfig, Sign};
use qsnr::cli::{
    cmd_analyze, cmd_coherent, cmd_examples, cmd_optimize, cmd_power, cmd_verify, exit_code_for,
    exit_codes, Check, ExampleParams, ExampleReport, SweepConfig,
};
use qsnr::error::{Error, Result};

#[derive(Parser)]
#[command(
    name = "qsnr",
    version,
    about = "Signal-to-noise bounds for quantum detection: analysis, worked examples, verification sweeps, and observable optimization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Base seed for randomized subcommands
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Slack tolerance for inequality checks
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,

    /// Also write the JSON report to this path
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Omit wall time from reports so reruns are byte-identical
    #[arg(long, global = true)]
    no_timestamp: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Diagnostics for one (state, state, observable) triple of matrix files
    Analyze {
        state1: PathBuf,
        state2: PathBuf,
        observable: PathBuf,
    },
    /// Reproduce a named worked example with pass/fail lines
    Examples {
        /// oscillator | qubit | fidelity3x3 | coherent | switching
        name: String,
        /// Oscillator mixing angle
        #[arg(long, default_value_t = std::f64::consts::PI / 6.0)]
        theta: f64,
        /// Oscillator angular frequency
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        /// Qubit ground-state population
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        /// Sign of the qubit observable (+1 or -1)
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        sign: i32,
        /// Mean photon number for the coherent example
        #[arg(long, default_value_t = 1.0)]
        nbar: f64,
        /// Fock-space truncation (defaults to tail mass < 1e-10)
        #[arg(long)]
        truncation: Option<usize>,
    },
    /// Randomized verification sweep over the inequality suite
    Verify {
        /// Hilbert-space dimensions to sweep
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        dims: Vec<usize>,
        /// Instances per dimension per check
        #[arg(long, default_value_t = 100)]
        instances: usize,
        /// Subset of lemma,snr,monotonicity,classical,fidelity_bounds
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
    },
    /// Search for the SNR-maximizing observable of a state pair
    Optimize {
        state1: PathBuf,
        state2: PathBuf,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long, default_value_t = 300)]
        iterations: usize,
        #[arg(long, default_value_t = 0.5)]
        step_scale: f64,
    },
    /// Coherent-state fidelity and both SNR bound variants
    Coherent {
        /// Mean photon number
        #[arg(long)]
        nbar: f64,
        /// Fock-space truncation (defaults to tail mass < 1e-10)
        #[arg(long)]
        truncation: Option<usize>,
    },
    /// Switching power and its fidelity bound for a system document
    Power { system: PathBuf },
}

fn emit<T: Serialize>(report: &T, out: Option<&PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(report).expect("reports serialize infallibly");
    println!("{text}");
    if let Some(path) = out {
        std::fs::write(path, text + "\n").map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
    }
    Ok(())
}

fn print_example_lines(report: &ExampleReport) {
    println!("example: {}", report.name);
    for line in &report.lines {
        println!(
            "  [{}] {}: computed {:+.12e}, expected {:+.12e} (tol {:.1e})",
            if line.pass { "PASS" } else { "FAIL" },
            line.label,
            line.computed,
            line.expected,
            line.tolerance,
        );
    }
    if let Some(note) = &report.note {
        println!("  note: {note}");
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Analyze {
            state1,
            state2,
            observable,
        } => {
            let report = cmd_analyze(state1, state2, observable)?;
            emit(&report, cli.out.as_ref())?;
            Ok(0)
        }
        Command::Examples {
            name,
            theta,
            omega,
            p,
            sign,
            nbar,
            truncation,
        } => {
            let sign = match sign {
                1 => Sign::Plus,
                -1 => Sign::Minus,
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "sign must be +1 or -1, got {other}"
                    )))
                }
            };
            let params = ExampleParams {
                theta: *theta,
                omega: *omega,
                p: *p,
                sign,
                nbar: *nbar,
                truncation: *truncation,
            };
            let report = cmd_examples(name, &params)?;
            print_example_lines(&report);
            if let Some(out) = &cli.out {
                emit(&report, Some(out))?;
            }
            Ok(if report.all_pass {
                0
            } else {
                exit_codes::VIOLATIONS_OR_FAILED_LINES
            })
        }
        Command::Verify {
            dims,
            instances,
            checks,
        } => {
            let checks = match checks {
                Some(names) => names
                    .iter()
                    .map(|n| Check::parse(n))
                    .collect::<Result<Vec<_>>>()?,
                None => Check::ALL.to_vec(),
            };
            let cfg = SweepConfig {
                dims: dims.clone(),
                instances_per_dim: *instances,
                base_seed: cli.seed,
                tolerance: cli.tolerance,
                checks,
            };
            let report = cmd_verify(&cfg, !cli.no_timestamp)?;
            emit(&report, cli.out.as_ref())?;
            Ok(if report.total_violations == 0 {
                0
            } else {
                exit_codes::VIOLATIONS_OR_FAILED_LINES
            })
        }
        Command::Optimize {
            state1,
            state2,
            restarts,
            iterations,
            step_scale,
        } => {
            let cfg = OptimizerConfig {
                restarts: *restarts,
                iterations: *iterations,
                seed: cli.seed,
                step_scale: *step_scale,
                tolerance: 1e-10,
            };
            let report = cmd_optimize(state1, state2, &cfg)?;
            emit(&report, cli.out.as_ref())?;
            Ok(0)
        }
        Command::Coherent { nbar, truncation } => {
            let report = cmd_coherent(*nbar, *truncation)?;
            emit(&report, cli.out.as_ref())?;
            Ok(0)
        }
        Command::Power { system } => {
            let report = cmd_power(system)?;
            emit(&report, cli.out.as_ref())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err) as u8)
        }
    }
}
