//! Simulation of two-qubit photonic quantum teleportation.
//!
//! The crate works on two levels:
//!
//! * [`qcore`] and [`teleport`] treat polarization photons as ideal qubits and
//!   run the protocol exactly: Bell-state measurements on (1,3) and (2,4),
//!   Pauli corrections on photons 5 and 6, and the fidelity estimators.
//! * [`fockoptics`] and [`experiment`] describe the same protocol as a
//!   six-photon linear-optics table: down-conversion sources with multi-pair
//!   terms, polarizing beam splitters, wave plates, partial distinguishability
//!   and threshold detection with coincidence post-selection.

pub mod error;
pub mod experiment;
pub mod fockoptics;
pub mod qcore;
pub mod teleport;

pub use error::{Error, Result};
pub use num_complex::Complex64;
