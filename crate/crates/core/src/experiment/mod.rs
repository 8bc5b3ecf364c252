//! The six-photon experiment: optical table, fidelity measurements, χ
//! sweeps and count-rate estimates.

mod fidelity;
mod rates;
mod setup;
mod sweep;

pub use fidelity::{
    detector_state, registered_fraction, registered_sixfold_probability, run_fidelity,
    run_fidelity_A, run_fidelity_B, run_fidelity_C, sixfold_capable_state, teleported_state,
    FidelityReport, GroupRecord, Sixfold, OUTCOMES,
};
pub use rates::{
    calibrated_chi, exceeds_limit, rate_estimate, threshold_check, RateConfig, RateEstimate,
    ReferenceFidelity, REFERENCE_FIDELITIES, REGISTERED_FRACTION, STATE_ESTIMATION_LIMIT,
};
pub use setup::{
    build_setup, Basis, InputChoice, Registration, Setup, SetupConfig, P1, P2, P3, P4, P5, P6,
};
pub use sweep::{noise_sweep, sweep_config, SweepRow, SweepTable, MAX_SWEEP_CHI};
