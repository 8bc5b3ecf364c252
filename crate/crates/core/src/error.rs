use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operator is not unitary (max deviation {0:.3e})")]
    NotUnitary(f64),
    #[error("operator is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),
    #[error("qubit index {index} out of range for a {num_qubits}-qubit state")]
    QubitOutOfRange { index: usize, num_qubits: usize },
    #[error("qubit index {0} listed more than once")]
    DuplicateQubit(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("state is not normalized (norm squared {0})")]
    NotNormalized(f64),
    #[error("all amplitudes are zero")]
    ZeroState,
    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),
    #[error("photon number {requested} exceeds the cutoff of {limit}")]
    PhotonCutoff { requested: u32, limit: u32 },
    #[error("mode supports overlap on path {0}")]
    OverlappingModes(String),
    #[error("{0} registered modes exceed the limit of 64")]
    TooManyModes(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
