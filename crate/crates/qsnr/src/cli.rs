//! Command implementations behind the `qsnr` binary: single-instance
//! analysis, worked-example reproduction, randomized verification sweeps,
//! observable optimization, and the coherent/switching application reports.
//!
//! Every command is deterministic given its flags and seeds; reports are
//! plain serde structs so repeated runs serialize byte-identically (wall
//! time is optional for that reason).

use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::applications::{
    coherent_fidelity, coherent_snr_bound, compare_fidelity_bounds, switching_power,
    switching_power_bound, truncated_coherent_state, BoundVariant, CoherentSpec, SwitchingSystem,
    Tighter,
};
use crate::attainment::{optimize_observable, qubit_example, oscillator_example, OptimizerConfig, Sign};
use crate::bounds::{
    analyze, lemma_signal_bound, signal, snr, snr_bound_from_fidelity, BoundReport, ExtendedReal,
    Observable,
};
use crate::error::{Error, Result};
use crate::io::{read_density_file, read_observable_file, read_switching_system, MatrixJson};
use crate::linalg::{
    expectation, pauli_x, pauli_z, tensor, CMatrix, DensityMatrix, HermitianOperator, Keep,
};
use crate::metrics::{classical_fidelity, quantum_fidelity, superfidelity_bound};
use crate::random::{derive_seed, random_density, random_distribution, random_hermitian, random_unitary};

/// Exit codes shared by the binary and the integration tests.
pub mod exit_codes {
    pub const VIOLATIONS_OR_FAILED_LINES: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const VALIDATION: i32 = 3;
    pub const DIM_MISMATCH: i32 = 4;
    pub const UNKNOWN_EXAMPLE: i32 = 5;
    pub const IDENTICAL_STATES: i32 = 6;
}

/// Map an error to its CLI exit code.
pub fn exit_code_for(err: &Error) -> i32 {
    use exit_codes::*;
    match err {
        Error::Parse { .. } | Error::Io { .. } | Error::InvalidConfig(_) => PARSE,
        Error::DimMismatch { .. } => DIM_MISMATCH,
        Error::UnknownExample(_) => UNKNOWN_EXAMPLE,
        Error::NoSignal => IDENTICAL_STATES,
        _ => VALIDATION,
    }
}

/// One verification family in a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// Signal bounded by the lemma right-hand side.
    Lemma,
    /// SNR bounded by the fidelity function.
    Snr,
    /// Fidelity never decreases under partial trace or detection.
    Monotonicity,
    /// The distribution-level inequality behind the lemma.
    Classical,
    /// Both fidelity upper bounds dominate the true squared fidelity.
    FidelityBounds,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::Lemma,
        Check::Snr,
        Check::Monotonicity,
        Check::Classical,
        Check::FidelityBounds,
    ];

    pub fn parse(name: &str) -> Result<Check> {
        match name {
            "lemma" => Ok(Check::Lemma),
            "snr" => Ok(Check::Snr),
            "monotonicity" => Ok(Check::Monotonicity),
            "classical" => Ok(Check::Classical),
            "fidelity_bounds" => Ok(Check::FidelityBounds),
            other => Err(Error::InvalidConfig(format!("unknown check '{other}'"))),
        }
    }

    fn salt(&self) -> u64 {
        match self {
            Check::Lemma => 1,
            Check::Snr => 2,
            Check::Monotonicity => 3,
            Check::Classical => 4,
            Check::FidelityBounds => 5,
        }
    }
}

/// Randomized verification campaign parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub dims: Vec<usize>,
    pub instances_per_dim: usize,
    pub base_seed: u64,
    pub tolerance: f64,
    pub checks: Vec<Check>,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dims.is_empty() {
            return Err(Error::InvalidConfig("dims must be non-empty".into()));
        }
        if let Some(&d) = self.dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidConfig(format!("dims must be >= 2, got {d}")));
        }
        if self.instances_per_dim == 0 {
            return Err(Error::InvalidConfig("instances_per_dim must be positive".into()));
        }
        if !self.tolerance.is_finite() || self.tolerance <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.checks.is_empty() {
            return Err(Error::InvalidConfig("checks must be non-empty".into()));
        }
        Ok(())
    }
}

/// Per-check outcome counters.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check: Check,
    pub instances: u64,
    pub violations: u64,
    pub max_violation: f64,
    pub worst_seed: Option<u64>,
}

/// Aggregated sweep result; `wall_time_ms` is omitted under
/// `--no-timestamp` so reruns compare byte-for-byte.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub checks: Vec<CheckOutcome>,
    pub total_violations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

struct ViolationTracker {
    instances: u64,
    violations: u64,
    max_violation: f64,
    worst_seed: Option<u64>,
    tolerance: f64,
}

impl ViolationTracker {
    fn new(tolerance: f64) -> Self {
        Self {
            instances: 0,
            violations: 0,
            max_violation: 0.0,
            worst_seed: None,
            tolerance,
        }
    }

    /// Record an instance whose inequality slack should be `>= -tolerance`.
    fn record(&mut self, seed: u64, slack: f64) {
        self.instances += 1;
        if slack < -self.tolerance {
            self.violations += 1;
            let magnitude = -slack;
            if magnitude > self.max_violation {
                self.max_violation = magnitude;
                self.worst_seed = Some(seed);
            }
        }
    }

    fn skip(&mut self) {
        self.instances += 1;
    }

    fn outcome(self, check: Check) -> CheckOutcome {
        CheckOutcome {
            check,
            instances: self.instances,
            violations: self.violations,
            max_violation: self.max_violation,
            worst_seed: self.worst_seed,
        }
    }
}

/// Random `(rho1, rho2, A)` with ranks cycling through all combinations so
/// pure and rank-deficient states appear alongside full-rank ones.
fn sweep_triple(
    dim: usize,
    index: usize,
    seed: u64,
    salt: u64,
) -> (DensityMatrix, DensityMatrix, Observable) {
    let rank1 = (index % dim) + 1;
    let rank2 = ((index / dim) % dim) + 1;
    let rho1 = random_density(dim, rank1, derive_seed(seed, salt * 16 + 1))
        .expect("rank within range");
    let rho2 = random_density(dim, rank2, derive_seed(seed, salt * 16 + 2))
        .expect("rank within range");
    let a = Observable::new(random_hermitian(dim, derive_seed(seed, salt * 16 + 3)));
    (rho1, rho2, a)
}

fn run_check(check: Check, cfg: &SweepConfig) -> Result<CheckOutcome> {
    let mut tracker = ViolationTracker::new(cfg.tolerance);
    let salt = check.salt();
    let mut index = 0usize;
    for &dim in &cfg.dims {
        for _ in 0..cfg.instances_per_dim {
            let seed = cfg.base_seed.wrapping_add(index as u64);
            match check {
                Check::Lemma => {
                    let (rho1, rho2, a) = sweep_triple(dim, index, seed, salt);
                    let s = signal(&a, &rho1, &rho2)?;
                    let rhs = lemma_signal_bound(&rho1, &rho2, &a)?;
                    tracker.record(seed, rhs - s);
                }
                Check::Snr => {
                    let (rho1, rho2, a) = sweep_triple(dim, index, seed, salt);
                    let measured = snr(&a, &rho1, &rho2)?;
                    let f = quantum_fidelity(&rho1, &rho2)?;
                    let bound = snr_bound_from_fidelity(f)?;
                    match (measured, bound) {
                        (ExtendedReal::Finite(v), ExtendedReal::Finite(b)) => {
                            tracker.record(seed, b - v)
                        }
                        (ExtendedReal::Finite(_), ExtendedReal::PosInfinity) => tracker.skip(),
                        (ExtendedReal::PosInfinity, ExtendedReal::PosInfinity) => tracker.skip(),
                        (ExtendedReal::PosInfinity, ExtendedReal::Finite(_)) => {
                            // infinite SNR against a finite bound: maximal violation
                            tracker.record(seed, f64::MIN)
                        }
                        (ExtendedReal::Indeterminate, _) => tracker.skip(),
                        (_, ExtendedReal::Indeterminate) => unreachable!("bound is never 0/0"),
                    }
                }
                Check::Monotonicity => {
                    let dim_b = 2usize;
                    let slack = if index.is_multiple_of(2) {
                        // partial trace of random bipartite states
                        let joint_dim = dim * dim_b;
                        let s1 = random_density(
                            joint_dim,
                            (index % joint_dim) + 1,
                            derive_seed(seed, salt * 16 + 1),
                        )?;
                        let s2 = random_density(joint_dim, joint_dim, derive_seed(seed, salt * 16 + 2))?;
                        let r1 = DensityMatrix::from_matrix(crate::linalg::partial_trace(
                            s1.matrix(),
                            dim,
                            dim_b,
                            Keep::A,
                        )?)?;
                        let r2 = DensityMatrix::from_matrix(crate::linalg::partial_trace(
                            s2.matrix(),
                            dim,
                            dim_b,
                            Keep::A,
                        )?)?;
                        quantum_fidelity(&r1, &r2)? - quantum_fidelity(&s1, &s2)?
                    } else {
                        // a full detection channel
                        let u = random_unitary(dim * dim_b, derive_seed(seed, salt * 16 + 3));
                        let rho_d0 =
                            random_density(dim_b, dim_b, derive_seed(seed, salt * 16 + 4))?;
                        let model = crate::attainment::DetectionModel::new(u, rho_d0, dim)?;
                        let s1 = random_density(dim, (index % dim) + 1, derive_seed(seed, salt * 16 + 5))?;
                        let s2 = random_density(dim, dim, derive_seed(seed, salt * 16 + 6))?;
                        let d1 = crate::attainment::apply_detection(&model, &s1)?;
                        let d2 = crate::attainment::apply_detection(&model, &s2)?;
                        quantum_fidelity(&d1, &d2)? - quantum_fidelity(&s1, &s2)?
                    };
                    tracker.record(seed, slack);
                }
                Check::Classical => {
                    let p = random_distribution(dim, derive_seed(seed, salt * 16 + 1));
                    let q = random_distribution(dim, derive_seed(seed, salt * 16 + 2));
                    let spectrum_src = random_hermitian(dim, derive_seed(seed, salt * 16 + 3));
                    let spectrum = crate::linalg::eig_hermitian(&spectrum_src);
                    let s: f64 = spectrum
                        .eigenvalues()
                        .iter()
                        .zip(p.weights().iter().zip(q.weights()))
                        .map(|(&a, (&pi, &qi))| a * (pi - qi))
                        .sum();
                    let m2p: f64 = spectrum
                        .eigenvalues()
                        .iter()
                        .zip(p.weights())
                        .map(|(&a, &pi)| a * a * pi)
                        .sum();
                    let m2q: f64 = spectrum
                        .eigenvalues()
                        .iter()
                        .zip(q.weights())
                        .map(|(&a, &qi)| a * a * qi)
                        .sum();
                    let denom = m2p.max(0.0).sqrt() + m2q.max(0.0).sqrt();
                    if denom < 1e-12 {
                        tracker.skip();
                    } else {
                        let fc = classical_fidelity(&p, &q)?;
                        tracker.record(seed, (1.0 - fc * fc) - (s / denom) * (s / denom));
                    }
                }
                Check::FidelityBounds => {
                    let (rho1, rho2, a) = sweep_triple(dim, index, seed, salt);
                    let f = quantum_fidelity(&rho1, &rho2)?;
                    let f2 = f * f;
                    let sf = superfidelity_bound(&rho1, &rho2)?;
                    let ours = match crate::applications::fidelity_upper_bound_from_snr(
                        &a, &rho1, &rho2,
                    ) {
                        Ok(v) => v,
                        Err(Error::DegenerateMoments) => {
                            tracker.skip();
                            index += 1;
                            continue;
                        }
                        Err(e) => return Err(e),
                    };
                    tracker.record(seed, (sf - f2).min(ours - f2));
                }
            }
            index += 1;
        }
    }
    Ok(tracker.outcome(check))
}

/// Run every configured check; deterministic for a fixed config.
pub fn run_sweep(cfg: &SweepConfig, include_wall_time: bool) -> Result<SweepReport> {
    cfg.validate()?;
    let started = Instant::now();
    let mut checks = Vec::with_capacity(cfg.checks.len());
    for &check in &cfg.checks {
        checks.push(run_check(check, cfg)?);
    }
    let total_violations = checks.iter().map(|c| c.violations).sum();
    Ok(SweepReport {
        config: cfg.clone(),
        checks,
        total_violations,
        wall_time_ms: include_wall_time.then(|| started.elapsed().as_secs_f64() * 1e3),
    })
}

/// `analyze`: full diagnostics for a triple of matrix files.
pub fn cmd_analyze(state1: &Path, state2: &Path, observable: &Path) -> Result<BoundReport> {
    let rho1 = read_density_file(state1)?;
    let rho2 = read_density_file(state2)?;
    let a = read_observable_file(observable)?;
    if rho1.dim() != rho2.dim() {
        return Err(Error::DimMismatch {
            left: rho1.dim(),
            right: rho2.dim(),
        });
    }
    if a.dim() != rho1.dim() {
        return Err(Error::DimMismatch {
            left: a.dim(),
            right: rho1.dim(),
        });
    }
    analyze(&a, &rho1, &rho2)
}

/// One comparison row of an example report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExampleLine {
    pub label: String,
    pub computed: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ExampleLine {
    fn check(label: &str, computed: f64, expected: f64, tolerance: f64) -> Self {
        Self {
            label: label.to_string(),
            computed,
            expected,
            tolerance,
            pass: (computed - expected).abs() <= tolerance,
        }
    }
}

/// Computed-vs-expected lines for one worked example.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExampleReport {
    pub name: String,
    pub lines: Vec<ExampleLine>,
    pub all_pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ExampleReport {
    fn new(name: &str, lines: Vec<ExampleLine>, note: Option<String>) -> Self {
        let all_pass = lines.iter().all(|l| l.pass);
        Self {
            name: name.to_string(),
            lines,
            all_pass,
            note,
        }
    }
}

/// Parameters for `cmd_examples`; unused fields are ignored per example.
#[derive(Clone, Copy, Debug)]
pub struct ExampleParams {
    pub theta: f64,
    pub omega: f64,
    pub p: f64,
    pub sign: Sign,
    pub nbar: f64,
    pub truncation: Option<usize>,
}

impl Default for ExampleParams {
    fn default() -> Self {
        Self {
            theta: std::f64::consts::PI / 6.0,
            omega: 1.0,
            p: 0.3,
            sign: Sign::Plus,
            nbar: 1.0,
            truncation: None,
        }
    }
}

/// `examples`: reproduce a named construction and report each quantity
/// against its expected value.
pub fn cmd_examples(name: &str, params: &ExampleParams) -> Result<ExampleReport> {
    match name {
        "oscillator" => example_oscillator(params.theta, params.omega),
        "qubit" => example_qubit(params.p, params.sign),
        "fidelity3x3" => example_fidelity3x3(),
        "coherent" => example_coherent(params.nbar, params.truncation),
        "switching" => example_switching(),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

fn example_oscillator(theta: f64, omega: f64) -> Result<ExampleReport> {
    let (rho1, rho2, a) = oscillator_example(theta, omega)?;
    let s = signal(&a, &rho1, &rho2)?;
    let f = quantum_fidelity(&rho1, &rho2)?;
    let rhs = lemma_signal_bound(&rho1, &rho2, &a)?;
    // At F = 1 (identical states) the bound goes through sqrt(1 - F^2),
    // which turns ulp-level fidelity rounding into ~1e-8; both sides of the
    // equality are zero there, so the slack line gets the wider tolerance.
    let degenerate = (1.0 - f).abs() < 1e-12;
    let slack_tol = if degenerate { 1e-7 } else { 1e-10 };
    let mut lines = vec![
        ExampleLine::check("signal", s, omega * (2.0 * theta).cos().abs(), 1e-10),
        ExampleLine::check("fidelity", f, (2.0 * theta).sin().abs(), 1e-10),
        ExampleLine::check(
            "equality slack |signal - lemma_rhs|",
            (s - rhs).abs(),
            0.0,
            slack_tol,
        ),
    ];
    let mut note = None;
    if degenerate {
        let indeterminate = matches!(snr(&a, &rho1, &rho2)?, ExtendedReal::Indeterminate);
        lines.push(ExampleLine {
            label: "identical states flagged (snr indeterminate)".into(),
            computed: if indeterminate { 1.0 } else { 0.0 },
            expected: 1.0,
            tolerance: 0.0,
            pass: indeterminate,
        });
        note = Some("identical states: no signal, zero bound, SNR reported as 0/0".into());
    }
    Ok(ExampleReport::new("oscillator", lines, note))
}

fn example_qubit(p: f64, sign: Sign) -> Result<ExampleReport> {
    let (rho1, rho2, a) = qubit_example(p, sign)?;
    let s = signal(&a, &rho1, &rho2)?;
    let f = quantum_fidelity(&rho1, &rho2)?;
    let rhs = lemma_signal_bound(&rho1, &rho2, &a)?;
    let lines = vec![
        ExampleLine::check("signal", s, 1.0, 1e-10),
        ExampleLine::check("fidelity", f, 0.5f64.sqrt(), 1e-10),
        ExampleLine::check("equality slack |signal - lemma_rhs|", (s - rhs).abs(), 0.0, 1e-10),
    ];
    Ok(ExampleReport::new("qubit", lines, None))
}

fn example_fidelity3x3() -> Result<ExampleReport> {
    let a = Observable::new(HermitianOperator::from_real_diagonal(&[-1.0, 0.0, 1.0]));
    let rho1 = DensityMatrix::from_diagonal(&[0.5, 1.0 / 6.0, 1.0 / 3.0])?;
    let rho2 = DensityMatrix::from_diagonal(&[1.0 / 3.0, 1.0 / 6.0, 0.5])?;
    let s = signal(&a, &rho1, &rho2)?;
    let cmp = compare_fidelity_bounds(&a, &rho1, &rho2)?;
    let lines = vec![
        ExampleLine::check("signal", s, 1.0 / 3.0, 1e-12),
        ExampleLine::check("snr_based fidelity bound", cmp.snr_based, 29.0 / 30.0, 1e-12),
        ExampleLine::check("superfidelity bound", cmp.superfidelity, 35.0 / 36.0, 1e-12),
        ExampleLine::check(
            "true squared fidelity",
            cmp.true_f2,
            (2.0 * (1.0f64 / 6.0).sqrt() + 1.0 / 6.0).powi(2),
            1e-10,
        ),
        ExampleLine {
            label: "snr_based tighter".into(),
            computed: if cmp.tighter == Tighter::SnrBased { 1.0 } else { 0.0 },
            expected: 1.0,
            tolerance: 0.0,
            pass: cmp.tighter == Tighter::SnrBased,
        },
    ];
    Ok(ExampleReport::new("fidelity3x3", lines, None))
}

fn example_coherent(nbar: f64, truncation: Option<usize>) -> Result<ExampleReport> {
    let spec = match truncation {
        Some(dim) => CoherentSpec::new(nbar, dim)?,
        None => CoherentSpec::with_default_truncation(nbar)?,
    };
    let closed = coherent_fidelity(&spec);
    let rho = truncated_coherent_state(&spec)?;
    let vacuum = {
        let mut diag = vec![0.0; spec.truncation_dim];
        diag[0] = 1.0;
        DensityMatrix::from_diagonal(&diag)?
    };
    let numeric = quantum_fidelity(&rho, &vacuum)?;
    let x = (1.0 - (-nbar).exp()).max(0.0).sqrt();
    let strict = coherent_snr_bound(&spec, BoundVariant::Strict);
    let doubled = coherent_snr_bound(&spec, BoundVariant::Doubled);
    let mut lines = vec![
        ExampleLine::check("truncated numeric fidelity", numeric, closed, 1e-8),
    ];
    if let (ExtendedReal::Finite(e), ExtendedReal::Finite(pr)) = (strict, doubled) {
        lines.push(ExampleLine::check("strict variant identity", e * (1.0 - x), x, 1e-12));
        lines.push(ExampleLine::check(
            "doubled variant identity",
            pr * (1.0 - x),
            2.0 * x,
            1e-12,
        ));
        if nbar > 0.0 && nbar <= 1e-3 {
            lines.push(ExampleLine::check(
                "small-amplitude ratio doubled / (2 sqrt(nbar))",
                pr / (2.0 * nbar.sqrt()),
                1.0,
                0.02,
            ));
        }
    }
    Ok(ExampleReport::new("coherent", lines, None))
}

/// The worked 2x2 switching system: `H_T = sigma_z`, free control,
/// `V = sigma_x tensor sigma_x`, target and on-control in the ground state,
/// off-control maximally mixed.
pub fn worked_switching_system(tau: f64) -> Result<SwitchingSystem> {
    SwitchingSystem::new(
        Observable::from_matrix(pauli_z())?,
        Observable::from_matrix(CMatrix::zeros(2, 2))?,
        HermitianOperator::new(tensor(&pauli_x(), &pauli_x()))?,
        DensityMatrix::from_diagonal(&[1.0, 0.0])?,
        DensityMatrix::from_diagonal(&[1.0, 0.0])?,
        DensityMatrix::maximally_mixed(2),
        tau,
    )
}

fn finite_difference_power(sys: &SwitchingSystem, tau: f64) -> Result<f64> {
    let e_t = |rho: &DensityMatrix| expectation(sys.h_t().hermitian(), rho);
    let on = e_t(&sys.evolve_target(&sys.rho_c_on().clone(), tau)?)?;
    let off = e_t(&sys.evolve_target(&sys.rho_c_off().clone(), tau)?)?;
    let on0 = e_t(&sys.evolve_target(&sys.rho_c_on().clone(), 0.0)?)?;
    let off0 = e_t(&sys.evolve_target(&sys.rho_c_off().clone(), 0.0)?)?;
    Ok(((on - on0) - (off - off0)) / tau)
}

fn example_switching() -> Result<ExampleReport> {
    let tau = 1e-5;
    let sys = worked_switching_system(tau)?;
    let p = switching_power(&sys)?;
    let fd = finite_difference_power(&sys, tau)?;
    let bound = switching_power_bound(&sys)?;
    let mut lines = vec![ExampleLine {
        label: "first-order power vs exact-evolution finite difference".into(),
        computed: p,
        expected: fd,
        tolerance: 1e-3 * p.abs().max(1.0),
        pass: (p - fd).abs() <= 1e-3 * p.abs().max(1.0),
    }];
    if let ExtendedReal::Finite(b) = bound {
        lines.push(ExampleLine {
            label: "|power| <= bound".into(),
            computed: p.abs(),
            expected: b,
            tolerance: f64::INFINITY,
            pass: p.abs() <= b + 1e-9,
        });
    }
    Ok(ExampleReport::new("switching", lines, None))
}

/// `verify`: run the sweep with the given config.
pub fn cmd_verify(cfg: &SweepConfig, include_wall_time: bool) -> Result<SweepReport> {
    run_sweep(cfg, include_wall_time)
}

/// Optimization result in wire form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OptimizeReport {
    pub observable: MatrixJson,
    pub snr: ExtendedReal,
    pub snr_bound: ExtendedReal,
    pub slack: ExtendedReal,
}

/// `optimize`: search for the SNR-maximizing observable of a state pair.
pub fn cmd_optimize(state1: &Path, state2: &Path, cfg: &OptimizerConfig) -> Result<OptimizeReport> {
    let rho1 = read_density_file(state1)?;
    let rho2 = read_density_file(state2)?;
    if rho1.dim() != rho2.dim() {
        return Err(Error::DimMismatch {
            left: rho1.dim(),
            right: rho2.dim(),
        });
    }
    let (obs, best) = optimize_observable(&rho1, &rho2, cfg)?;
    let f = quantum_fidelity(&rho1, &rho2)?;
    let bound = snr_bound_from_fidelity(f)?;
    let slack = match (best, bound) {
        (ExtendedReal::Finite(v), ExtendedReal::Finite(b)) => ExtendedReal::Finite(b - v),
        (ExtendedReal::Finite(_), ExtendedReal::PosInfinity) => ExtendedReal::PosInfinity,
        _ => ExtendedReal::Indeterminate,
    };
    Ok(OptimizeReport {
        observable: MatrixJson::from_matrix(obs.matrix()),
        snr: best,
        snr_bound: bound,
        slack,
    })
}

/// Coherent-state report in wire form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoherentReport {
    pub nbar: f64,
    pub truncation_dim: usize,
    pub fidelity_closed_form: f64,
    pub fidelity_truncated: f64,
    pub bound_strict: ExtendedReal,
    pub bound_doubled: ExtendedReal,
}

/// `coherent`: closed-form and truncated-numeric fidelity plus both bound
/// variants.
pub fn cmd_coherent(nbar: f64, truncation: Option<usize>) -> Result<CoherentReport> {
    let spec = match truncation {
        Some(dim) => CoherentSpec::new(nbar, dim)?,
        None => CoherentSpec::with_default_truncation(nbar)?,
    };
    let rho = truncated_coherent_state(&spec)?;
    let vacuum = {
        let mut diag = vec![0.0; spec.truncation_dim];
        diag[0] = 1.0;
        DensityMatrix::from_diagonal(&diag)?
    };
    Ok(CoherentReport {
        nbar: spec.nbar,
        truncation_dim: spec.truncation_dim,
        fidelity_closed_form: coherent_fidelity(&spec),
        fidelity_truncated: quantum_fidelity(&rho, &vacuum)?,
        bound_strict: coherent_snr_bound(&spec, BoundVariant::Strict),
        bound_doubled: coherent_snr_bound(&spec, BoundVariant::Doubled),
    })
}

/// Switching-power report in wire form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PowerReport {
    pub power: f64,
    pub bound: ExtendedReal,
    pub slack: ExtendedReal,
}

/// `power`: evaluate a switching-system document.
pub fn cmd_power(system: &Path) -> Result<PowerReport> {
    let sys = read_switching_system(system)?;
    let p = switching_power(&sys)?;
    let bound = switching_power_bound(&sys)?;
    let slack = match bound {
        ExtendedReal::Finite(b) => ExtendedReal::Finite(b - p.abs()),
        other => other,
    };
    Ok(PowerReport {
        power: p,
        bound,
        slack,
    })
}
