//! Dense complex linear algebra substrate: validated operator types,
//! Hermitian eigendecomposition, PSD square roots, tensor products and
//! partial traces.
//!
//! All operators are square `d x d` complex matrices with row-major index
//! semantics. Validation tolerances are fixed crate-wide: `1e-12` for
//! Hermiticity / trace / positivity checks, `1e-10` for reconstruction and
//! unitarity residuals (Frobenius).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix carrier used throughout the crate.
pub type CMatrix = DMatrix<Complex64>;
/// Dense complex column vector.
pub type CVector = DVector<Complex64>;

/// Entrywise validation tolerance (Hermiticity, trace, eigenvalue floor).
pub const TOL_VALIDATION: f64 = 1e-12;
/// Frobenius tolerance for reconstruction and unitarity residuals.
pub const TOL_RECONSTRUCT: f64 = 1e-10;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Which tensor factor `partial_trace` keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Keep {
    /// Keep the first (row-major outer) factor, trace out the second.
    A,
    /// Keep the second factor, trace out the first.
    B,
}

fn hermiticity_residual(m: &CMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..=i {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// A validated Hermitian operator.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator {
    mat: CMatrix,
}

impl HermitianOperator {
    /// Validates Hermiticity entrywise within `TOL_VALIDATION`.
    pub fn new(mat: CMatrix) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.nrows() == 0 {
            return Err(Error::DimMismatch {
                left: mat.nrows(),
                right: mat.ncols(),
            });
        }
        let residual = hermiticity_residual(&mat);
        if residual > TOL_VALIDATION {
            return Err(Error::NotHermitian {
                residual,
                tol: TOL_VALIDATION,
            });
        }
        Ok(Self { mat })
    }

    /// Hermitian by construction: real entries on the diagonal.
    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d = diag.len();
        let mut mat = CMatrix::zeros(d, d);
        for (i, &x) in diag.iter().enumerate() {
            mat[(i, i)] = Complex64::new(x, 0.0);
        }
        Self { mat }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }
}

/// A validated density matrix: Hermitian, PSD up to `-1e-12`, unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    op: HermitianOperator,
}

impl DensityMatrix {
    pub fn new(op: HermitianOperator) -> Result<Self> {
        let tr: Complex64 = op.matrix().trace();
        if (tr.re - 1.0).abs() > TOL_VALIDATION || tr.im.abs() > TOL_VALIDATION {
            return Err(Error::NotAState {
                reason: format!("trace is {:.17} + {:.3e}i, expected 1", tr.re, tr.im),
            });
        }
        let eigenvalues = op.mat.clone().symmetric_eigen().eigenvalues;
        if let Some(bad) = eigenvalues.iter().find(|&&x| x < -TOL_VALIDATION) {
            return Err(Error::NotAState {
                reason: format!("negative eigenvalue {bad:.3e}"),
            });
        }
        Ok(Self { op })
    }

    pub fn from_matrix(mat: CMatrix) -> Result<Self> {
        Self::new(HermitianOperator::new(mat)?)
    }

    /// Diagonal state from a classical probability vector.
    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(HermitianOperator::from_real_diagonal(diag))
    }

    /// Pure state `|psi><psi|`; the vector is normalized first.
    pub fn pure(state: &CVector) -> Result<Self> {
        let n = state.norm();
        if n < 1e-300 {
            return Err(Error::NotAState {
                reason: "zero vector cannot be normalized".into(),
            });
        }
        let v = state / Complex64::new(n, 0.0);
        let mat = &v * v.adjoint();
        Self::new(HermitianOperator { mat })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let mat = CMatrix::identity(dim, dim) * Complex64::new(1.0 / dim as f64, 0.0);
        Self {
            op: HermitianOperator { mat },
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        self.op.matrix()
    }

    pub fn hermitian(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }
}

/// A validated unitary matrix (`U U+ = I` within `TOL_RECONSTRUCT`, Frobenius).
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix {
    mat: CMatrix,
}

impl UnitaryMatrix {
    pub fn new(mat: CMatrix) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.nrows() == 0 {
            return Err(Error::DimMismatch {
                left: mat.nrows(),
                right: mat.ncols(),
            });
        }
        let d = mat.nrows();
        let residual = (&mat * mat.adjoint() - CMatrix::identity(d, d)).norm();
        if residual > TOL_RECONSTRUCT {
            return Err(Error::NotUnitary {
                residual,
                tol: TOL_RECONSTRUCT,
            });
        }
        Ok(Self { mat })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: CMatrix::identity(dim, dim),
        }
    }

    /// SWAP on a `dim x dim` bipartite space: `|i,j> -> |j,i>`.
    pub fn swap(dim: usize) -> Self {
        let d2 = dim * dim;
        let mut mat = CMatrix::zeros(d2, d2);
        for i in 0..dim {
            for j in 0..dim {
                mat[(j * dim + i, i * dim + j)] = ONE;
            }
        }
        Self { mat }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }
}

/// Eigendecomposition of a Hermitian operator with ascending eigenvalues
/// and orthonormal eigenvectors stored as matrix columns.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: CMatrix,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Orthonormal eigenvectors as columns, ordered like `eigenvalues`.
    pub fn eigenvectors(&self) -> &CMatrix {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, k: usize) -> CVector {
        self.eigenvectors.column(k).into_owned()
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `sum_i a_i |a_i><a_i|`.
    pub fn reconstruct(&self) -> CMatrix {
        self.map_eigenvalues(|x| Complex64::new(x, 0.0))
    }

    /// `sum_i f(a_i) |a_i><a_i|` — spectral calculus.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> Complex64) -> CMatrix {
        let d = self.dim();
        let mut out = CMatrix::zeros(d, d);
        for k in 0..d {
            let fk = f(self.eigenvalues[k]);
            let v = self.eigenvectors.column(k);
            for i in 0..d {
                let vi = v[i] * fk;
                for j in 0..d {
                    out[(i, j)] += vi * v[j].conj();
                }
            }
        }
        out
    }

    /// Used by `shift_observable`: eigenvalues move, eigenvectors stay.
    pub(crate) fn with_shifted_eigenvalues(&self, alpha: f64) -> Self {
        Self {
            eigenvalues: self.eigenvalues.iter().map(|a| a - alpha).collect(),
            eigenvectors: self.eigenvectors.clone(),
        }
    }
}

/// Relative gap below which adjacent eigenvalues are treated as degenerate
/// and their eigenbasis re-fixed deterministically.
const DEGENERACY_GAP: f64 = 1e-12;

/// Hermitian eigendecomposition with ascending eigenvalues.
///
/// Determinism for a fixed input is guaranteed by two conventions on top of
/// the solver output: within each (numerically) degenerate subspace the basis
/// is re-fixed by projecting the coordinate basis in index order and
/// orthonormalizing; every eigenvector's phase is fixed by making its
/// largest-modulus component (lowest index on ties) real positive.
pub fn eig_hermitian(h: &HermitianOperator) -> SpectralDecomposition {
    let d = h.dim();
    let se = h.matrix().clone().symmetric_eigen();

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));

    let eigenvalues: Vec<f64> = order.iter().map(|&k| se.eigenvalues[k]).collect();
    let mut vectors = CMatrix::zeros(d, d);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &se.eigenvectors.column(src));
    }

    let scale = eigenvalues
        .iter()
        .fold(1.0f64, |acc, x| acc.max(x.abs()));
    let gap_tol = DEGENERACY_GAP * scale;

    // Re-fix the basis of each degenerate group.
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && eigenvalues[end] - eigenvalues[end - 1] <= gap_tol {
            end += 1;
        }
        if end - start > 1 {
            canonicalize_subspace(&mut vectors, start, end);
        }
        start = end;
    }

    for k in 0..d {
        fix_phase(&mut vectors, k);
    }

    SpectralDecomposition {
        eigenvalues,
        eigenvectors: vectors,
    }
}

/// Replace columns `[start, end)` (an orthonormal basis of a degenerate
/// subspace) by the orthonormalized projections of the coordinate basis
/// taken in index order.
fn canonicalize_subspace(vectors: &mut CMatrix, start: usize, end: usize) {
    let d = vectors.nrows();
    let m = end - start;
    let cols: Vec<CVector> = (start..end).map(|k| vectors.column(k).into_owned()).collect();

    let mut accepted: Vec<CVector> = Vec::with_capacity(m);
    for j in 0..d {
        if accepted.len() == m {
            break;
        }
        // w = P e_j where P projects onto the subspace.
        let mut w = CVector::zeros(d);
        for c in &cols {
            let coeff = c[j].conj();
            w += c * coeff;
        }
        for a in &accepted {
            let coeff = a.dotc(&w);
            w -= a * coeff;
        }
        let n = w.norm();
        if n > 1e-8 {
            accepted.push(w / Complex64::new(n, 0.0));
        }
    }
    // The projected coordinate basis spans the subspace, so this only
    // triggers on pathological rounding; keep the solver basis then.
    if accepted.len() == m {
        for (k, v) in accepted.iter().enumerate() {
            vectors.set_column(start + k, v);
        }
    }
}

/// Make the largest-modulus component (lowest index on ties) real positive.
fn fix_phase(vectors: &mut CMatrix, k: usize) {
    let d = vectors.nrows();
    let mut best = 0usize;
    let mut best_norm = 0.0f64;
    for i in 0..d {
        let n = vectors[(i, k)].norm();
        if n > best_norm + 1e-300 {
            best_norm = n;
            best = i;
        }
    }
    if best_norm > 0.0 {
        let z = vectors[(best, k)];
        let phase = z.conj() / Complex64::new(best_norm, 0.0);
        for i in 0..d {
            vectors[(i, k)] *= phase;
        }
    }
}

/// Relative floor below which an eigenvalue of a PSD matrix is treated as
/// an exact zero. Rank-deficient inputs produce true zeros back at the
/// `1e-16` rounding level; without the floor each would contribute a
/// spurious `sqrt(1e-16) ~ 1e-8` to square roots and fidelities.
pub(crate) const PSD_NOISE_FLOOR: f64 = 1e-14;

/// PSD square root of a state: eigenvalues clamped to `[0, 1]` (tiny
/// negatives and rounding-level positives go to 0), then `sqrt` in the
/// eigenbasis.
pub fn psd_sqrt(rho: &DensityMatrix) -> HermitianOperator {
    let spec = eig_hermitian(rho.hermitian());
    let floor = spec
        .eigenvalues()
        .iter()
        .fold(0.0f64, |acc, x| acc.max(*x))
        * PSD_NOISE_FLOOR;
    let mat = spec.map_eigenvalues(|x| {
        let lam = if x <= floor { 0.0 } else { x.min(1.0) };
        Complex64::new(lam.sqrt(), 0.0)
    });
    // Spectral calculus of a real function preserves Hermiticity.
    HermitianOperator { mat }
}

/// Kronecker product with the A-major row-major index convention:
/// `(A tensor B)[(i*p+k, j*q+l)] = A[(i,j)] B[(k,l)]`.
pub fn tensor(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Partial trace of a `(dim_a * dim_b)`-dimensional operator.
pub fn partial_trace(m: &CMatrix, dim_a: usize, dim_b: usize, keep: Keep) -> Result<CMatrix> {
    let d = dim_a * dim_b;
    if m.nrows() != d || m.ncols() != d {
        return Err(Error::DimMismatch {
            left: m.nrows(),
            right: d,
        });
    }
    match keep {
        Keep::A => {
            let mut out = CMatrix::zeros(dim_a, dim_a);
            for i in 0..dim_a {
                for j in 0..dim_a {
                    let mut s = ZERO;
                    for k in 0..dim_b {
                        s += m[(i * dim_b + k, j * dim_b + k)];
                    }
                    out[(i, j)] = s;
                }
            }
            Ok(out)
        }
        Keep::B => {
            let mut out = CMatrix::zeros(dim_b, dim_b);
            for i in 0..dim_b {
                for j in 0..dim_b {
                    let mut s = ZERO;
                    for k in 0..dim_a {
                        s += m[(k * dim_b + i, k * dim_b + j)];
                    }
                    out[(i, j)] = s;
                }
            }
            Ok(out)
        }
    }
}

/// `Tr[A rho]`, real part (the imaginary residual for Hermitian inputs is
/// at rounding level).
pub fn expectation(a: &HermitianOperator, rho: &DensityMatrix) -> Result<f64> {
    if a.dim() != rho.dim() {
        return Err(Error::DimMismatch {
            left: a.dim(),
            right: rho.dim(),
        });
    }
    Ok(trace_product(a.matrix(), rho.matrix()).re)
}

/// `Tr[M N]` without forming the product matrix.
pub fn trace_product(m: &CMatrix, n: &CMatrix) -> Complex64 {
    let d = m.nrows();
    let mut s = ZERO;
    for i in 0..d {
        for k in 0..d {
            s += m[(i, k)] * n[(k, i)];
        }
    }
    s
}

/// `[A, B] = AB - BA`; anti-Hermitian for Hermitian inputs.
pub fn commutator(a: &HermitianOperator, b: &HermitianOperator) -> Result<CMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let ab = a.matrix() * b.matrix();
    let ba = b.matrix() * a.matrix();
    Ok(ab - ba)
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO])
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(
        2,
        2,
        &[
            ZERO,
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            ZERO,
        ],
    )
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE])
}
