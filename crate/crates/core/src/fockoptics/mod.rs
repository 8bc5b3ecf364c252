//! Second-quantized model of the optical table.
//!
//! States are sparse superpositions of occupation-number basis states over
//! `(path, polarization, temporal bin)` modes. Sources emit pair operators
//! with multi-pair terms; beam splitters, wave plates, loss and temporal
//! mismatch act as linear maps on creation operators; detection uses
//! threshold detectors and coincidence post-selection.

mod detect;
mod element;
mod mode;
mod source;
mod state;
mod transform;

pub use detect::{
    click_distribution, coincidence_probability, fires, Coincidence, CoincidencePattern, Detector,
    DetectorSetting, Port,
};
pub use element::{apply_distinguishability, apply_pbs, apply_waveplate, hwp, qwp, OpticalElement};
pub use mode::{ModeId, Path, Polarization, TemporalBin, MAX_MODES, MODES_PER_PATH};
pub use source::{spdc_emit, PairState, SpdcSource, DEFAULT_PHOTON_CUTOFF};
pub use state::{compose, FockTerm, ModeState, Occupation, PRUNE_WEIGHT};
pub use transform::LinearModeMap;
