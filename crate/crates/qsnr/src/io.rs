//! JSON interchange: the matrix file format and the switching-system
//! document.
//!
//! Matrices travel as `{"dim": d, "entries": [[re, im], ...]}` with `d^2`
//! two-element arrays in row-major order. Floats are written in serde_json's
//! shortest round-trip form, so re-parsing reproduces every entry exactly.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::applications::SwitchingSystem;
use crate::bounds::Observable;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, DensityMatrix, HermitianOperator};

/// Wire form of a complex square matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let dim = m.nrows();
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let z = m[(i, j)];
                entries.push([z.re, z.im]);
            }
        }
        Self { dim, entries }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.dim == 0 {
            return Err(Error::InvalidParameter("matrix dim must be positive".into()));
        }
        if self.entries.len() != self.dim * self.dim {
            return Err(Error::InvalidParameter(format!(
                "expected {} entries for dim {}, got {}",
                self.dim * self.dim,
                self.dim,
                self.entries.len()
            )));
        }
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let [re, im] = self.entries[i * self.dim + j];
                m[(i, j)] = Complex64::new(re, im);
            }
        }
        Ok(m)
    }
}

pub fn matrix_to_string(m: &CMatrix) -> String {
    serde_json::to_string(&MatrixJson::from_matrix(m)).expect("matrix serialization is infallible")
}

pub fn matrix_from_str(s: &str) -> Result<CMatrix> {
    let parsed: MatrixJson = serde_json::from_str(s).map_err(Error::from_json)?;
    parsed.to_matrix()
}

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_matrix_file(path: &Path) -> Result<CMatrix> {
    matrix_from_str(&read_to_string(path)?)
}

pub fn write_matrix_file(path: &Path, m: &CMatrix) -> Result<()> {
    fs::write(path, matrix_to_string(m) + "\n").map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_density_file(path: &Path) -> Result<DensityMatrix> {
    DensityMatrix::from_matrix(read_matrix_file(path)?)
}

pub fn read_observable_file(path: &Path) -> Result<Observable> {
    Observable::from_matrix(read_matrix_file(path)?)
}

/// Wire form of a switching system; matrices use the standard format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SwitchingSystemJson {
    pub h_t: MatrixJson,
    pub h_c: MatrixJson,
    pub v_ct: MatrixJson,
    pub rho_t0: MatrixJson,
    pub rho_c_on: MatrixJson,
    pub rho_c_off: MatrixJson,
    pub tau: f64,
}

impl SwitchingSystemJson {
    pub fn to_system(&self) -> Result<SwitchingSystem> {
        SwitchingSystem::new(
            Observable::from_matrix(self.h_t.to_matrix()?)?,
            Observable::from_matrix(self.h_c.to_matrix()?)?,
            HermitianOperator::new(self.v_ct.to_matrix()?)?,
            DensityMatrix::from_matrix(self.rho_t0.to_matrix()?)?,
            DensityMatrix::from_matrix(self.rho_c_on.to_matrix()?)?,
            DensityMatrix::from_matrix(self.rho_c_off.to_matrix()?)?,
            self.tau,
        )
    }
}

pub fn read_switching_system(path: &Path) -> Result<SwitchingSystem> {
    let text = read_to_string(path)?;
    let doc: SwitchingSystemJson = serde_json::from_str(&text).map_err(Error::from_json)?;
    doc.to_system()
}
