//! Two-qubit teleportation at the qubit level.
//!
//! Photons 1 and 2 carry the input state. Pairs 3-5 and 4-6 are `Φ+`
//! ancillas. A Bell-state measurement on (1,3) moves qubit 1 onto photon 5 and
//! one on (2,4) moves qubit 2 onto photon 6; each outcome is undone by a Pauli
//! correction on the receiving photon.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;

use crate::qcore::{bell_state, pauli_string, BellKind, DensityMatrix, Pauli, StateVector};
use crate::{Error, Result};

/// A normalized two-qubit input `α|HH⟩ + β|HV⟩ + γ|VH⟩ + δ|VV⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct InputState {
    state: StateVector,
    /// Factor that was applied to the raw coefficients.
    pub normalization: f64,
}

impl InputState {
    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn coefficients(&self) -> [Complex64; 4] {
        let a = self.state.amplitudes();
        [a[0], a[1], a[2], a[3]]
    }
}

impl From<StateVector> for InputState {
    fn from(state: StateVector) -> Self {
        assert_eq!(state.num_qubits(), 2, "input state must have two qubits");
        Self {
            state,
            normalization: 1.0,
        }
    }
}

pub fn compose_input(
    alpha: Complex64,
    beta: Complex64,
    gamma: Complex64,
    delta: Complex64,
) -> Result<InputState> {
    let (state, normalization) = StateVector::normalize(2, vec![alpha, beta, gamma, delta])?;
    Ok(InputState {
        state,
        normalization,
    })
}

/// The three states teleported in the experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TestLabel {
    A,
    B,
    C,
}

impl TestLabel {
    pub const ALL: [TestLabel; 3] = [TestLabel::A, TestLabel::B, TestLabel::C];

    /// `A = |HV⟩`, `B = (|H⟩+|V⟩)(|H⟩−i|V⟩)/2`, `C = (|HV⟩−|VH⟩)/√2`.
    pub fn state(self) -> StateVector {
        let z = Complex64::new(0.0, 0.0);
        let amps = match self {
            TestLabel::A => vec![z, Complex64::new(1.0, 0.0), z, z],
            TestLabel::B => vec![
                Complex64::new(0.5, 0.0),
                Complex64::new(0.0, -0.5),
                Complex64::new(0.5, 0.0),
                Complex64::new(0.0, -0.5),
            ],
            TestLabel::C => vec![
                z,
                Complex64::new(FRAC_1_SQRT_2, 0.0),
                Complex64::new(-FRAC_1_SQRT_2, 0.0),
                z,
            ],
        };
        StateVector::new(2, amps).expect("test states are normalized")
    }

    pub fn input(self) -> InputState {
        self.state().into()
    }
}

impl fmt::Display for TestLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TestLabel::A => "A",
            TestLabel::B => "B",
            TestLabel::C => "C",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BsmOutcome {
    pub kind: BellKind,
    pub probability: f64,
    /// State of the unmeasured qubits in ascending order, `None` if the
    /// outcome has zero probability.
    pub conditional: Option<StateVector>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bsm {
    /// Original indices of the qubits carried by each conditional state.
    pub remaining: Vec<usize>,
    pub outcomes: Vec<BsmOutcome>,
}

/// Bell-state measurement of qubits `pair = (a, b)` of `joint`; the Bell
/// states are written with `a` as their first qubit.
pub fn bsm(joint: &StateVector, pair: (usize, usize)) -> Result<Bsm> {
    if joint.num_qubits() < 3 {
        return Err(Error::InvalidParameter(
            "Bell measurement needs at least three qubits".into(),
        ));
    }
    let subsystem = [pair.0, pair.1];
    let outcomes = BellKind::ALL
        .iter()
        .map(|&kind| {
            let p = joint.project(&subsystem, &bell_state(kind))?;
            Ok(BsmOutcome {
                kind,
                probability: p.probability,
                conditional: p.conditional,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let remaining = (0..joint.num_qubits())
        .filter(|q| !subsystem.contains(q))
        .collect();
    Ok(Bsm {
        remaining,
        outcomes,
    })
}

/// Pauli correction Bob applies for each Bell outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorrectionTable([Pauli; 4]);

impl CorrectionTable {
    pub fn standard() -> Self {
        Self(BellKind::ALL.map(correction_for))
    }

    pub fn get(&self, kind: BellKind) -> Pauli {
        self.0[index_of(kind)]
    }

    pub fn with(mut self, kind: BellKind, pauli: Pauli) -> Self {
        self.0[index_of(kind)] = pauli;
        self
    }
}

impl Default for CorrectionTable {
    fn default() -> Self {
        Self::standard()
    }
}

fn index_of(kind: BellKind) -> usize {
    BellKind::ALL.iter().position(|&k| k == kind).unwrap()
}

/// `Φ+ → I`, `Φ− → Z`, `Ψ+ → X`, `Ψ− → Y` (the `−i` on `Y` is a global phase).
pub fn correction_for(kind: BellKind) -> Pauli {
    match kind {
        BellKind::PhiPlus => Pauli::I,
        BellKind::PhiMinus => Pauli::Z,
        BellKind::PsiPlus => Pauli::X,
        BellKind::PsiMinus => Pauli::Y,
    }
}

/// One of the sixteen joint outcomes of the two Bell measurements.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    /// Outcome on photons (1,3).
    pub first: BellKind,
    /// Outcome on photons (2,4).
    pub second: BellKind,
    pub probability: f64,
    /// Photons (5,6) before correction.
    pub raw: StateVector,
    /// Photons (5,6) after the Pauli corrections.
    pub corrected: StateVector,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Teleportation {
    pub branches: Vec<Branch>,
}

impl Teleportation {
    pub fn branch(&self, first: BellKind, second: BellKind) -> Option<&Branch> {
        self.branches
            .iter()
            .find(|b| b.first == first && b.second == second)
    }

    pub fn total_probability(&self) -> f64 {
        self.branches.iter().map(|b| b.probability).sum()
    }
}

pub fn teleport_two_qubit(chi: &InputState) -> Result<Teleportation> {
    teleport_two_qubit_with(chi, &CorrectionTable::standard())
}

/// Runs the protocol with an explicit correction table.
pub fn teleport_two_qubit_with(chi: &InputState, table: &CorrectionTable) -> Result<Teleportation> {
    let phi = bell_state(BellKind::PhiPlus);
    // Qubit order: photons 1, 2, 3, 5, 4, 6.
    let joint = chi.state().tensor(&phi).tensor(&phi);
    let first = bsm(&joint, (0, 2))?;
    // Remaining after (1,3): photons 2, 5, 4, 6.
    debug_assert_eq!(first.remaining, vec![1, 3, 4, 5]);

    let mut branches = Vec::with_capacity(16);
    for o1 in &first.outcomes {
        let Some(after_first) = &o1.conditional else {
            continue;
        };
        let second = bsm(after_first, (0, 2))?;
        for o2 in &second.outcomes {
            let Some(raw) = &o2.conditional else {
                continue;
            };
            let corrected = raw
                .apply_pauli(table.get(o1.kind), 0)?
                .apply_pauli(table.get(o2.kind), 1)?;
            branches.push(Branch {
                first: o1.kind,
                second: o2.kind,
                probability: o1.probability * o2.probability,
                raw: raw.clone(),
                corrected,
            });
        }
    }
    Ok(Teleportation { branches })
}

/// The three two-qubit correlators `⟨XX⟩`, `⟨YY⟩`, `⟨ZZ⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalCorrelators {
    pub xx: f64,
    pub yy: f64,
    pub zz: f64,
}

impl LocalCorrelators {
    pub fn measure(rho: &DensityMatrix) -> Result<Self> {
        use Pauli::*;
        Ok(Self {
            xx: rho.expectation(&pauli_string(&[X, X]))?,
            yy: rho.expectation(&pauli_string(&[Y, Y]))?,
            zz: rho.expectation(&pauli_string(&[Z, Z]))?,
        })
    }

    /// Singlet fidelity `¼(1 − ⟨XX⟩ − ⟨YY⟩ − ⟨ZZ⟩)`.
    pub fn singlet_fidelity(&self) -> f64 {
        0.25 * (1.0 - self.xx - self.yy - self.zz)
    }
}

/// Singlet fidelity of a two-qubit state from its three local correlators.
pub fn fidelity_psi_minus_local(rho: &DensityMatrix) -> Result<f64> {
    if rho.num_qubits() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: rho.num_qubits(),
        });
    }
    Ok(LocalCorrelators::measure(rho)?.singlet_fidelity())
}
