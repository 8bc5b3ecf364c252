use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use super::{c, Jones, Operator, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn jones(self) -> Jones {
        let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
        match self {
            Pauli::I => Jones::new(o, z, z, o),
            Pauli::X => Jones::new(z, o, o, z),
            Pauli::Y => Jones::new(z, c(0.0, -1.0), c(0.0, 1.0), z),
            Pauli::Z => Jones::new(o, z, z, -o),
        }
    }

    pub fn matrix(self) -> Operator {
        super::jones_to_operator(&self.jones())
    }

    /// Whether `self` and `other` anticommute.
    pub fn anticommutes(self, other: Pauli) -> bool {
        self != Pauli::I && other != Pauli::I && self != other
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Pauli::I => "I",
            Pauli::X => "X",
            Pauli::Y => "Y",
            Pauli::Z => "Z",
        };
        f.write_str(s)
    }
}

/// Label of one of the four Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [
        BellKind::PhiPlus,
        BellKind::PhiMinus,
        BellKind::PsiPlus,
        BellKind::PsiMinus,
    ];
}

impl fmt::Display for BellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BellKind::PhiPlus => "Φ+",
            BellKind::PhiMinus => "Φ-",
            BellKind::PsiPlus => "Ψ+",
            BellKind::PsiMinus => "Ψ-",
        };
        f.write_str(s)
    }
}

/// `Φ± = (|HH⟩ ± |VV⟩)/√2`, `Ψ± = (|HV⟩ ± |VH⟩)/√2`.
pub fn bell_state(kind: BellKind) -> StateVector {
    let r = FRAC_1_SQRT_2;
    let z = c(0.0, 0.0);
    let amps = match kind {
        BellKind::PhiPlus => vec![c(r, 0.0), z, z, c(r, 0.0)],
        BellKind::PhiMinus => vec![c(r, 0.0), z, z, c(-r, 0.0)],
        BellKind::PsiPlus => vec![z, c(r, 0.0), c(r, 0.0), z],
        BellKind::PsiMinus => vec![z, c(r, 0.0), c(-r, 0.0), z],
    };
    StateVector::from_normalized(2, amps)
}

/// Kronecker product with `a` on the leading qubits.
pub fn kron(a: &Operator, b: &Operator) -> Operator {
    a.kronecker(b)
}

/// Tensor product of single-qubit Paulis, qubit 0 first.
pub fn pauli_string(paulis: &[Pauli]) -> Operator {
    paulis
        .iter()
        .fold(Operator::identity(1, 1), |acc, p| kron(&acc, &p.matrix()))
}

/// `¼(I − XX − YY − ZZ)`, which equals `|Ψ⁻⟩⟨Ψ⁻|`.
pub fn singlet_projector_from_paulis() -> Operator {
    use Pauli::*;
    (pauli_string(&[I, I]) - pauli_string(&[X, X]) - pauli_string(&[Y, Y]) - pauli_string(&[Z, Z]))
        .scale(0.25)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{hermiticity_error, unitarity_error, DensityMatrix, EXACT_TOL};

    #[test]
    fn pauli_products_are_cyclic() {
        use Pauli::*;
        let i = c(0.0, 1.0);
        let xy = X.matrix() * Y.matrix();
        let yz = Y.matrix() * Z.matrix();
        let zx = Z.matrix() * X.matrix();
        assert!((xy - Z.matrix() * i).norm() < EXACT_TOL);
        assert!((yz - X.matrix() * i).norm() < EXACT_TOL);
        assert!((zx - Y.matrix() * i).norm() < EXACT_TOL);
        for p in Pauli::ALL {
            assert!(unitarity_error(&p.matrix()) < EXACT_TOL);
            assert!(hermiticity_error(&p.matrix()) < EXACT_TOL);
        }
    }

    #[test]
    fn bell_states_are_orthonormal() {
        for a in BellKind::ALL {
            for b in BellKind::ALL {
                let ip = bell_state(a).inner(&bell_state(b)).unwrap();
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!((ip - c(expected, 0.0)).norm() < EXACT_TOL, "{a} {b}");
            }
        }
        let phi = bell_state(BellKind::PhiPlus);
        let r = FRAC_1_SQRT_2;
        assert!((phi.amplitudes()[0] - c(r, 0.0)).norm() < EXACT_TOL);
        assert!((phi.amplitudes()[3] - c(r, 0.0)).norm() < EXACT_TOL);
    }

    #[test]
    fn singlet_pauli_identity_is_exact() {
        let lhs = DensityMatrix::from_pure(&bell_state(BellKind::PsiMinus));
        let rhs = singlet_projector_from_paulis();
        let dev = (lhs.matrix() - rhs)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        assert!(dev < EXACT_TOL, "deviation {dev}");
    }

    #[test]
    fn anticommutation_table() {
        use Pauli::*;
        assert!(X.anticommutes(Z));
        assert!(Y.anticommutes(Z));
        assert!(!Z.anticommutes(Z));
        assert!(!I.anticommutes(X));
    }
}
