//! Signal, noise, SNR and the fidelity-based upper bounds, together with
//! the two-dimensional reduction `g(b, P, Q)` behind the signal lemma.
//!
//! The central inequality chain: the signal of any observable is bounded by
//! `sqrt(1 - F^2)` times the sum of its root second moments (the lemma), and
//! after optimizing the eigenvalue origin the SNR itself is bounded by
//! `I(F) = sqrt(1 - F^2) / (1 - sqrt(1 - F^2))`, a function of the state
//! fidelity alone.

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    eig_hermitian, expectation, trace_product, CMatrix, DensityMatrix, HermitianOperator,
    SpectralDecomposition,
};
use crate::metrics::{bures_distance, quantum_fidelity};

/// Noise below this floor makes the SNR quotient degenerate.
pub const NOISE_FLOOR: f64 = 1e-14;

/// A scalar that may be finite, positively infinite, or indeterminate (0/0).
///
/// Serialized as a JSON number, the string `"inf"`, or the string `"nan"`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtendedReal {
    Finite(f64),
    PosInfinity,
    Indeterminate,
}

impl ExtendedReal {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    pub fn finite(&self) -> Option<f64> {
        match self {
            ExtendedReal::Finite(x) => Some(*x),
            _ => None,
        }
    }

    /// Ordering used when maximizing SNR: indeterminate < finite < infinite.
    pub fn exceeds(&self, other: &ExtendedReal) -> bool {
        use ExtendedReal::*;
        match (self, other) {
            (Indeterminate, _) => false,
            (_, Indeterminate) => true,
            (PosInfinity, PosInfinity) => false,
            (PosInfinity, Finite(_)) => true,
            (Finite(_), PosInfinity) => false,
            (Finite(a), Finite(b)) => a > b,
        }
    }
}

impl Serialize for ExtendedReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtendedReal::Finite(x) => serializer.serialize_f64(*x),
            ExtendedReal::PosInfinity => serializer.serialize_str("inf"),
            ExtendedReal::Indeterminate => serializer.serialize_str("nan"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = ExtendedReal;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a number, \"inf\", or \"nan\"")
            }

            fn visit_f64<E: de::Error>(self, x: f64) -> std::result::Result<ExtendedReal, E> {
                Ok(ExtendedReal::Finite(x))
            }

            fn visit_i64<E: de::Error>(self, x: i64) -> std::result::Result<ExtendedReal, E> {
                Ok(ExtendedReal::Finite(x as f64))
            }

            fn visit_u64<E: de::Error>(self, x: u64) -> std::result::Result<ExtendedReal, E> {
                Ok(ExtendedReal::Finite(x as f64))
            }

            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<ExtendedReal, E> {
                match s {
                    "inf" => Ok(ExtendedReal::PosInfinity),
                    "nan" => Ok(ExtendedReal::Indeterminate),
                    other => Err(E::custom(format!("unexpected extended real '{other}'"))),
                }
            }
        }
        deserializer.deserialize_any(V)
    }
}

/// A Hermitian observable with its spectral decomposition cached
/// (ascending eigenvalues, orthonormal eigenvectors).
#[derive(Clone, Debug)]
pub struct Observable {
    op: HermitianOperator,
    spec: SpectralDecomposition,
}

impl Observable {
    pub fn new(op: HermitianOperator) -> Self {
        let spec = eig_hermitian(&op);
        Self { op, spec }
    }

    pub fn from_matrix(mat: CMatrix) -> Result<Self> {
        Ok(Self::new(HermitianOperator::new(mat)?))
    }

    /// Assembled from a decomposition produced elsewhere (shifts, search
    /// moves); eigenvalues must already be ascending.
    pub(crate) fn from_decomposition(op: HermitianOperator, spec: SpectralDecomposition) -> Self {
        Self { op, spec }
    }

    pub fn hermitian(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn matrix(&self) -> &CMatrix {
        self.op.matrix()
    }

    pub fn spectral(&self) -> &SpectralDecomposition {
        &self.spec
    }

    pub fn eigenvalues(&self) -> &[f64] {
        self.spec.eigenvalues()
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }
}

/// Proof-internal scalars of the two-dimensional reduction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionPoint {
    pub p: f64,
    pub q: f64,
    pub b: f64,
}

impl ReductionPoint {
    pub fn new(p: f64, q: f64, b: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&q) {
            return Err(Error::InvalidReductionPoint(format!(
                "P = {p}, Q = {q} must lie in [0, 1]"
            )));
        }
        if !(-1.0..=1.0).contains(&b) {
            return Err(Error::InvalidReductionPoint(format!(
                "b = {b} must lie in [-1, 1]"
            )));
        }
        Ok(Self { p, q, b })
    }
}

/// All scalar diagnostics for one `(rho1, rho2, A)` triple.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundReport {
    pub signal: f64,
    pub noise: f64,
    pub snr: ExtendedReal,
    pub fidelity_states: f64,
    pub bures_states: f64,
    pub lemma_rhs: f64,
    pub snr_bound: ExtendedReal,
    pub slack_lemma: f64,
    pub slack_snr: ExtendedReal,
    pub stddev1: f64,
    pub stddev2: f64,
}

/// `S = |Tr[A rho1] - Tr[A rho2]|`.
pub fn signal(a: &Observable, rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    let e1 = expectation(a.hermitian(), rho1)?;
    let e2 = expectation(a.hermitian(), rho2)?;
    Ok((e1 - e2).abs())
}

fn moments(a: &Observable, rho: &DensityMatrix) -> Result<(f64, f64)> {
    let first = expectation(a.hermitian(), rho)?;
    let a2 = a.matrix() * a.matrix();
    let second = trace_product(&a2, rho.matrix()).re;
    Ok((first, second))
}

/// Standard deviation `sqrt(Tr[A^2 rho] - Tr[A rho]^2)`, float residue
/// clamped at zero.
pub fn stddev(a: &Observable, rho: &DensityMatrix) -> Result<f64> {
    let (m1, m2) = moments(a, rho)?;
    Ok((m2 - m1 * m1).max(0.0).sqrt())
}

/// `N = stddev(A, rho1) + stddev(A, rho2)`.
pub fn noise(a: &Observable, rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    Ok(stddev(a, rho1)? + stddev(a, rho2)?)
}

/// Signal-to-noise ratio as an extended real: `+inf` when the noise
/// vanishes but the signal does not; indeterminate when the signal
/// vanishes (identical states or a blind observable leave nothing whose
/// ratio to the noise is meaningful).
pub fn snr(a: &Observable, rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<ExtendedReal> {
    let s = signal(a, rho1, rho2)?;
    let n = noise(a, rho1, rho2)?;
    Ok(classify_snr(s, n))
}

pub(crate) fn classify_snr(s: f64, n: f64) -> ExtendedReal {
    if n < NOISE_FLOOR {
        if s > NOISE_FLOOR {
            ExtendedReal::PosInfinity
        } else {
            ExtendedReal::Indeterminate
        }
    } else if s <= NOISE_FLOOR {
        ExtendedReal::Indeterminate
    } else {
        ExtendedReal::Finite(s / n)
    }
}

/// The observable-independent SNR bound `I(F) = x / (1 - x)` with
/// `x = sqrt(1 - F^2)`; monotonically decreasing in `F`.
pub fn snr_bound_from_fidelity(fidelity: f64) -> Result<ExtendedReal> {
    if !(-1e-10..=1.0 + 1e-10).contains(&fidelity) {
        return Err(Error::FidelityOutOfRange(fidelity));
    }
    let f = fidelity.clamp(0.0, 1.0);
    let x = (1.0 - f * f).max(0.0).sqrt();
    if 1.0 - x <= 0.0 {
        Ok(ExtendedReal::PosInfinity)
    } else {
        Ok(ExtendedReal::Finite(x / (1.0 - x)))
    }
}

/// Right-hand side of the signal lemma:
/// `sqrt(2 - L_B^2) L_B [sqrt(Tr[A^2 rho1]) + sqrt(Tr[A^2 rho2])]`,
/// where `sqrt(2 - L_B^2) L_B = sqrt(1 - F^2)`.
pub fn lemma_signal_bound(
    rho1: &DensityMatrix,
    rho2: &DensityMatrix,
    a: &Observable,
) -> Result<f64> {
    let f = quantum_fidelity(rho1, rho2)?;
    let x = (1.0 - f * f).max(0.0).sqrt();
    let (_, m2_1) = moments(a, rho1)?;
    let (_, m2_2) = moments(a, rho2)?;
    Ok(x * (m2_1.max(0.0).sqrt() + m2_2.max(0.0).sqrt()))
}

/// The origin shift minimizing
/// `h(alpha) = sqrt(Tr[(A - alpha)^2 rho1]) + sqrt(Tr[(A - alpha)^2 rho2])`:
/// `alpha* = (Tr[A rho1] d2 + Tr[A rho2] d1) / (d1 + d2)` with the two
/// standard deviations as weights.
pub fn optimal_shift(
    a: &Observable,
    rho1: &DensityMatrix,
    rho2: &DensityMatrix,
) -> Result<f64> {
    let (e1, _) = moments(a, rho1)?;
    let (e2, _) = moments(a, rho2)?;
    let d1 = stddev(a, rho1)?;
    let d2 = stddev(a, rho2)?;
    if d1 + d2 <= NOISE_FLOOR {
        return Err(Error::DegenerateShift);
    }
    Ok((e1 * d2 + e2 * d1) / (d1 + d2))
}

/// The objective minimized by `optimal_shift`, evaluated through the first
/// and second moments so grid scans stay cheap.
pub fn shift_objective(
    a: &Observable,
    rho1: &DensityMatrix,
    rho2: &DensityMatrix,
    alpha: f64,
) -> Result<f64> {
    let (e1, m2_1) = moments(a, rho1)?;
    let (e2, m2_2) = moments(a, rho2)?;
    let t1 = (m2_1 - 2.0 * alpha * e1 + alpha * alpha).max(0.0).sqrt();
    let t2 = (m2_2 - 2.0 * alpha * e2 + alpha * alpha).max(0.0).sqrt();
    Ok(t1 + t2)
}

/// `A - alpha I`: eigenvalues shift, eigenvectors stay.
pub fn shift_observable(a: &Observable, alpha: f64) -> Observable {
    let mut mat = a.matrix().clone();
    for i in 0..mat.nrows() {
        mat[(i, i)] -= Complex64::new(alpha, 0.0);
    }
    // Subtracting a real scalar from the diagonal preserves Hermiticity.
    let op = HermitianOperator::new(mat).expect("shift preserves Hermiticity");
    let spec = a.spec.with_shifted_eigenvalues(alpha);
    Observable::from_decomposition(op, spec)
}

/// The reduced objective
/// `g(b, P, Q) = (1-b)^2 (P-Q)^2 / (sqrt(P + b^2(1-P)) + sqrt(Q + b^2(1-Q)))^2`.
pub fn g_function(rp: &ReductionPoint) -> Result<f64> {
    let ReductionPoint { p, q, b } = *rp;
    let raw1 = p + b * b * (1.0 - p);
    let raw2 = q + b * b * (1.0 - q);
    let denom_root = raw1.max(0.0).sqrt() + raw2.max(0.0).sqrt();
    let denom = denom_root * denom_root;
    if denom <= 1e-14 {
        return Err(Error::SingularPoint);
    }
    let num = (1.0 - b) * (1.0 - b) * (p - q) * (p - q);
    Ok(num / denom)
}

/// Stationary point `b* = -sqrt(PQ / ((1-P)(1-Q)))` (defined for
/// `P != 1` and `Q != 1`; the maximum sits at `b = -1` when `|b*| > 1`).
pub fn b_star(p: f64, q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidReductionPoint(format!(
            "P = {p}, Q = {q} must lie in [0, 1]"
        )));
    }
    if p == 1.0 || q == 1.0 {
        return Err(Error::BoundaryCase);
    }
    Ok(-(p * q / ((1.0 - p) * (1.0 - q))).sqrt())
}

/// Analytic maximum of `g` over `b` in `[-1, 1]` for fixed `(P, Q)`:
/// `1 - (sqrt(PQ) + sqrt((1-P)(1-Q)))^2` at `b*` when `P + Q <= 1`,
/// `(P - Q)^2` at `b = -1` otherwise.
pub fn g_maximum(p: f64, q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidReductionPoint(format!(
            "P = {p}, Q = {q} must lie in [0, 1]"
        )));
    }
    if p + q <= 1.0 {
        let root = (p * q).sqrt() + ((1.0 - p) * (1.0 - q)).sqrt();
        Ok((1.0 - root * root).max(0.0))
    } else {
        Ok((p - q) * (p - q))
    }
}

/// Full scalar diagnostics for one `(A, rho1, rho2)` triple.
pub fn analyze(
    a: &Observable,
    rho1: &DensityMatrix,
    rho2: &DensityMatrix,
) -> Result<BoundReport> {
    let s = signal(a, rho1, rho2)?;
    let d1 = stddev(a, rho1)?;
    let d2 = stddev(a, rho2)?;
    let n = d1 + d2;
    let snr_val = classify_snr(s, n);
    let f = quantum_fidelity(rho1, rho2)?;
    let lb = bures_distance(rho1, rho2)?;
    let lemma_rhs = lemma_signal_bound(rho1, rho2, a)?;
    let snr_bound = snr_bound_from_fidelity(f)?;
    let slack_snr = match (snr_val, snr_bound) {
        (ExtendedReal::Finite(sv), ExtendedReal::Finite(bv)) => ExtendedReal::Finite(bv - sv),
        (ExtendedReal::Finite(_), ExtendedReal::PosInfinity) => ExtendedReal::PosInfinity,
        _ => ExtendedReal::Indeterminate,
    };
    Ok(BoundReport {
        signal: s,
        noise: n,
        snr: snr_val,
        fidelity_states: f,
        bures_states: lb,
        lemma_rhs,
        snr_bound,
        slack_lemma: lemma_rhs - s,
        slack_snr,
        stddev1: d1,
        stddev2: d2,
    })
}
