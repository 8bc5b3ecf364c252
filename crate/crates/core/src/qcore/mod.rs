//! Finite-dimensional state and operator algebra for polarization qubits.
//!
//! Basis convention: `|H⟩ ↦ 0`, `|V⟩ ↦ 1`, and qubit 0 is the most significant
//! bit of a basis index. State equality is always checked up to a global phase.

mod density;
mod pauli;
mod state;

pub use density::{expectation, fidelity, DensityMatrix};
pub use pauli::{bell_state, kron, pauli_string, singlet_projector_from_paulis, BellKind, Pauli};
pub use state::{Projection, StateVector};

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

/// Normalization, Hermiticity and unitarity tolerance.
pub const TOL: f64 = 1e-9;
/// Tolerance for exact algebraic identities.
pub const EXACT_TOL: f64 = 1e-12;
/// Projection branches below this probability carry no conditional state.
pub const ZERO_PROBABILITY: f64 = 1e-12;

/// A 2×2 single-qubit operator (Jones matrix when acting on polarization).
pub type Jones = Matrix2<Complex64>;
/// A dense operator on an n-qubit space.
pub type Operator = DMatrix<Complex64>;

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Largest entrywise deviation of `u† u` from the identity.
pub fn unitarity_error(u: &Operator) -> f64 {
    if u.nrows() != u.ncols() {
        return f64::INFINITY;
    }
    let prod = u.adjoint() * u;
    let id = Operator::identity(u.nrows(), u.ncols());
    (prod - id).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entrywise deviation of `m` from `m†`.
pub fn hermiticity_error(m: &Operator) -> f64 {
    if m.nrows() != m.ncols() {
        return f64::INFINITY;
    }
    (m - m.adjoint())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

pub fn jones_to_operator(u: &Jones) -> Operator {
    Operator::from_iterator(2, 2, u.iter().copied())
}

pub fn check_unitary_jones(u: &Jones) -> crate::Result<()> {
    let err = unitarity_error(&jones_to_operator(u));
    if err > TOL {
        return Err(crate::Error::NotUnitary(err));
    }
    Ok(())
}

/// Single-qubit kets used throughout the experiment.
pub mod kets {
    use super::{c, StateVector};
    use std::f64::consts::FRAC_1_SQRT_2;

    pub fn h() -> StateVector {
        StateVector::basis(1, 0).expect("valid basis state")
    }

    pub fn v() -> StateVector {
        StateVector::basis(1, 1).expect("valid basis state")
    }

    /// `(|H⟩ + |V⟩)/√2`
    pub fn plus() -> StateVector {
        StateVector::from_normalized(1, vec![c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)])
    }

    /// `(|H⟩ − |V⟩)/√2`
    pub fn minus() -> StateVector {
        StateVector::from_normalized(1, vec![c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)])
    }

    /// Left circular, `(|H⟩ + i|V⟩)/√2`.
    pub fn left() -> StateVector {
        StateVector::from_normalized(1, vec![c(FRAC_1_SQRT_2, 0.0), c(0.0, FRAC_1_SQRT_2)])
    }

    /// Right circular, `(|H⟩ − i|V⟩)/√2`.
    pub fn right() -> StateVector {
        StateVector::from_normalized(1, vec![c(FRAC_1_SQRT_2, 0.0), c(0.0, -FRAC_1_SQRT_2)])
    }
}
