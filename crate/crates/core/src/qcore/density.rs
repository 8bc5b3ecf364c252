use num_complex::Complex64;

use super::{hermiticity_error, Operator, StateVector, TOL};
use crate::{Error, Result};

/// A Hermitian, unit-trace, positive semidefinite operator on `num_qubits`
/// qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    matrix: Operator,
}

impl DensityMatrix {
    /// Validates `matrix` against the density-matrix invariants.
    pub fn new(matrix: Operator) -> Result<Self> {
        let num_qubits = qubits_for_dim(matrix.nrows())?;
        if matrix.ncols() != matrix.nrows() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        let herm = hermiticity_error(&matrix);
        if herm > TOL {
            return Err(Error::NotHermitian(herm));
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > TOL || trace.im.abs() > TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace {trace}")));
        }
        let min_eig = matrix
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min_eig < -TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(Self { num_qubits, matrix })
    }

    /// Divides a positive semidefinite matrix by its trace before validating.
    pub fn from_unnormalized(matrix: Operator) -> Result<Self> {
        let trace = matrix.trace().re;
        if trace <= 0.0 {
            return Err(Error::InvalidDensityMatrix(format!(
                "non-positive trace {trace}"
            )));
        }
        // Symmetrize away accumulated rounding before validation.
        let sym = (&matrix + matrix.adjoint()).scale(0.5 / trace);
        Self::new(sym)
    }

    pub fn from_pure(chi: &StateVector) -> Self {
        let v = nalgebra::DVector::from_column_slice(chi.amplitudes());
        Self {
            num_qubits: chi.num_qubits(),
            matrix: &v * v.adjoint(),
        }
    }

    pub fn maximally_mixed(num_qubits: usize) -> Self {
        let dim = 1 << num_qubits;
        Self {
            num_qubits,
            matrix: Operator::identity(dim, dim).scale(1.0 / dim as f64),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn matrix(&self) -> &Operator {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Reduced state on `keep`; qubit `k` of the result is `keep[k]`.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.num_qubits;
        for (i, &q) in keep.iter().enumerate() {
            if q >= n {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    num_qubits: n,
                });
            }
            if keep[..i].contains(&q) {
                return Err(Error::DuplicateQubit(q));
            }
        }
        if keep.is_empty() {
            return Err(Error::InvalidParameter(
                "nothing left after partial trace".into(),
            ));
        }
        let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
        let compose = |k: usize, t: usize| {
            let mut idx = 0;
            for (pos, &q) in keep.iter().enumerate() {
                idx |= ((k >> (keep.len() - 1 - pos)) & 1) << (n - 1 - q);
            }
            for (pos, &q) in traced.iter().enumerate() {
                idx |= ((t >> (traced.len() - 1 - pos)) & 1) << (n - 1 - q);
            }
            idx
        };
        let dk = 1 << keep.len();
        let dt = 1 << traced.len();
        let mut out = Operator::zeros(dk, dk);
        for i in 0..dk {
            for j in 0..dk {
                out[(i, j)] = (0..dt)
                    .map(|t| self.matrix[(compose(i, t), compose(j, t))])
                    .sum();
            }
        }
        Ok(DensityMatrix {
            num_qubits: keep.len(),
            matrix: out,
        })
    }

    pub fn fidelity(&self, chi: &StateVector) -> Result<f64> {
        fidelity(self, chi)
    }

    pub fn expectation(&self, obs: &Operator) -> Result<f64> {
        expectation(self, obs)
    }

    /// The state vector when `self` is pure within `tol`.
    pub fn pure_state(&self, tol: f64) -> Option<StateVector> {
        if (1.0 - self.purity()).abs() > tol {
            return None;
        }
        let eig = self.matrix.clone().symmetric_eigen();
        let (best, _) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))?;
        let col: Vec<Complex64> = eig.eigenvectors.column(best).iter().copied().collect();
        StateVector::normalize(self.num_qubits, col)
            .ok()
            .map(|(s, _)| s)
    }
}

/// `Tr(ρ|χ⟩⟨χ|) = ⟨χ|ρ|χ⟩`, clamped to `[0, 1]`.
pub fn fidelity(rho: &DensityMatrix, chi: &StateVector) -> Result<f64> {
    if rho.matrix.nrows() != chi.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.matrix.nrows(),
            found: chi.dim(),
        });
    }
    let v = nalgebra::DVector::from_column_slice(chi.amplitudes());
    let value = (v.adjoint() * &rho.matrix * &v)[(0, 0)];
    Ok(value.re.clamp(0.0, 1.0))
}

/// `Tr(ρ·obs)` for a Hermitian observable.
pub fn expectation(rho: &DensityMatrix, obs: &Operator) -> Result<f64> {
    if obs.nrows() != rho.matrix.nrows() || obs.ncols() != rho.matrix.ncols() {
        return Err(Error::DimensionMismatch {
            expected: rho.matrix.nrows(),
            found: obs.nrows(),
        });
    }
    let herm = hermiticity_error(obs);
    if herm > TOL {
        return Err(Error::NotHermitian(herm));
    }
    Ok((&rho.matrix * obs).trace().re)
}

fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::InvalidDensityMatrix(format!("dimension {dim}")));
    }
    Ok(dim.trailing_zeros() as usize)
}
