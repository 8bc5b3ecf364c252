use crate::teleport::TestLabel;
use crate::{Error, Result};

use super::FidelityReport;

/// Best average two-qubit fidelity reachable without entanglement.
pub const STATE_ESTIMATION_LIMIT: f64 = 0.40;

/// Reported teleportation fidelity with its uncertainty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceFidelity {
    pub label: TestLabel,
    pub fidelity: f64,
    pub error: f64,
}

pub const REFERENCE_FIDELITIES: [ReferenceFidelity; 3] = [
    ReferenceFidelity {
        label: TestLabel::A,
        fidelity: 0.86,
        error: 0.03,
    },
    ReferenceFidelity {
        label: TestLabel::B,
        fidelity: 0.75,
        error: 0.02,
    },
    ReferenceFidelity {
        label: TestLabel::C,
        fidelity: 0.65,
        error: 0.03,
    },
];

/// Sixfold events survive only `++` at both interference PBSs.
pub const REGISTERED_FRACTION: f64 = 1.0 / 64.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateConfig {
    /// Pump pulses per second.
    pub rep_rate: f64,
    /// Detected pairs per second from each source.
    pub pair_rate_per_source: f64,
}

impl RateConfig {
    /// 76 MHz pump, 10⁵ detected pairs per second per source.
    pub fn experimental() -> Self {
        Self {
            rep_rate: 76e6,
            pair_rate_per_source: 1e5,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rep_rate > 0.0 && self.rep_rate.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "repetition rate {} must be > 0",
                self.rep_rate
            )));
        }
        if !(0.0..self.rep_rate).contains(&self.pair_rate_per_source) {
            return Err(Error::InvalidParameter(format!(
                "pair rate {} must lie in [0, repetition rate)",
                self.pair_rate_per_source
            )));
        }
        Ok(())
    }

    pub fn pair_probability(&self) -> f64 {
        self.pair_rate_per_source / self.rep_rate
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateEstimate {
    pub per_pulse_pair_prob: f64,
    /// Three pairs in one pulse, before any post-selection.
    pub raw_sixfold_per_minute: f64,
    /// Raw rate times the `++`/`++` registered fraction.
    pub post_selected_per_minute: f64,
}

pub fn rate_estimate(rc: &RateConfig) -> Result<RateEstimate> {
    rc.validate()?;
    let p = rc.pair_probability();
    let raw = 60.0 * rc.rep_rate * p.powi(3);
    Ok(RateEstimate {
        per_pulse_pair_prob: p,
        raw_sixfold_per_minute: raw,
        post_selected_per_minute: raw * REGISTERED_FRACTION,
    })
}

/// Pair amplitude with `χ² = p`, detection efficiency folded in.
pub fn calibrated_chi(rc: &RateConfig) -> Result<f64> {
    rc.validate()?;
    Ok(rc.pair_probability().sqrt())
}

/// True when the fidelity exceeds the state-estimation limit by more than two
/// standard errors.
pub fn threshold_check(report: &FidelityReport) -> bool {
    exceeds_limit(report.fidelity, report.standard_error)
}

pub fn exceeds_limit(fidelity: f64, standard_error: f64) -> bool {
    fidelity - 2.0 * standard_error > STATE_ESTIMATION_LIMIT
}
