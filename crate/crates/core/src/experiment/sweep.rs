use rayon::prelude::*;

use crate::teleport::TestLabel;
use crate::{Error, Result};

use super::fidelity::{run_fidelity_stream, FidelityReport};
use super::setup::SetupConfig;

/// Largest pair amplitude for which the two-pair truncation is trusted.
pub const MAX_SWEEP_CHI: f64 = 0.2;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub chi: f64,
    /// Reports for A, B and C in that order.
    pub reports: [FidelityReport; 3],
}

impl SweepRow {
    pub fn fidelity(&self, label: TestLabel) -> f64 {
        self.reports[label_index(label)].fidelity
    }

    pub fn standard_error(&self, label: TestLabel) -> f64 {
        self.reports[label_index(label)].standard_error
    }
}

fn label_index(label: TestLabel) -> usize {
    match label {
        TestLabel::A => 0,
        TestLabel::B => 1,
        TestLabel::C => 2,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// Labels whose fidelity rises with χ by more than `sigmas` combined
    /// standard errors (plus 1e-9) between neighbouring grid points.
    pub fn monotonicity_violations(&self, sigmas: f64) -> Vec<(TestLabel, f64, f64)> {
        let mut rows: Vec<&SweepRow> = self.rows.iter().collect();
        rows.sort_by(|a, b| a.chi.total_cmp(&b.chi));
        let mut out = Vec::new();
        for label in TestLabel::ALL {
            for w in rows.windows(2) {
                let (lo, hi) = (w[0], w[1]);
                let se = lo.standard_error(label).hypot(hi.standard_error(label));
                if hi.fidelity(label) > lo.fidelity(label) + sigmas * se + 1e-9 {
                    out.push((label, lo.chi, hi.chi));
                }
            }
        }
        out
    }

    pub fn is_monotone(&self, sigmas: f64) -> bool {
        self.monotonicity_violations(sigmas).is_empty()
    }
}

/// Configuration evaluated at grid point `chi`. `χ = 0` stands for the
/// noise-free limit: one pair per source, which no longer depends on χ.
pub fn sweep_config(base: &SetupConfig, chi: f64) -> SetupConfig {
    if chi == 0.0 {
        SetupConfig {
            chi_per_source: [1.0; 3],
            order_cutoff: 1,
            ..base.clone()
        }
    } else {
        SetupConfig {
            chi_per_source: [chi; 3],
            ..base.clone()
        }
    }
}

/// Fidelities of the three test states on a grid of pair amplitudes
/// (the same χ on every source).
pub fn noise_sweep(base: &SetupConfig, grid: &[f64]) -> Result<SweepTable> {
    if let Some(chi) = grid.iter().find(|c| !(**c >= 0.0 && **c <= MAX_SWEEP_CHI)) {
        return Err(Error::InvalidParameter(format!(
            "sweep point chi = {chi} outside [0, {MAX_SWEEP_CHI}]"
        )));
    }
    base.validate()?;
    let rows = grid
        .par_iter()
        .enumerate()
        .map(|(i, &chi)| {
            let cfg = sweep_config(base, chi);
            let run = |label: TestLabel| {
                run_fidelity_stream(&cfg.clone().for_label(label), label, i as u64)
            };
            Ok(SweepRow {
                chi,
                reports: [run(TestLabel::A)?, run(TestLabel::B)?, run(TestLabel::C)?],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable { rows })
}
