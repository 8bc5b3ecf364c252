use std::path::Path;

use serde::{Deserialize, Serialize};
use teleport_core::experiment::{
    calibrated_chi, InputChoice, RateConfig, Registration, SetupConfig,
};
use teleport_core::qcore::{BellKind, Pauli};
use teleport_core::teleport::{CorrectionTable, TestLabel};

use crate::CliError;

/// Run configuration as read from a TOML file. Every field has a default;
/// unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Config {
    pub setup: SetupSection,
    pub rates: RatesSection,
    pub sweep: SweepSection,
    pub verify: VerifySection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SetupSection {
    /// Pair amplitude per source; calibrated from `[rates]` when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<[f64; 3]>,
    pub order_cutoff: u32,
    pub photon_cutoff: u32,
    pub overlap_v: [f64; 2],
    pub pbs_transmission: [f64; 2],
    pub registration: RegistrationName,
    pub labels: Vec<LabelName>,
    pub samples: u64,
    pub seed: u64,
}

impl Default for SetupSection {
    fn default() -> Self {
        let d = SetupConfig::default();
        Self {
            chi: None,
            order_cutoff: d.order_cutoff,
            photon_cutoff: d.photon_cutoff,
            overlap_v: d.overlap_v,
            pbs_transmission: d.pbs_transmission,
            registration: RegistrationName::Plusplus,
            labels: vec![LabelName::A, LabelName::B, LabelName::C],
            samples: 0,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RatesSection {
    pub rep_rate: f64,
    pub pair_rate_per_source: f64,
}

impl Default for RatesSection {
    fn default() -> Self {
        let rc = RateConfig::experimental();
        Self {
            rep_rate: rc.rep_rate,
            pair_rate_per_source: rc.pair_rate_per_source,
        }
    }
}

impl From<RatesSection> for RateConfig {
    fn from(r: RatesSection) -> Self {
        RateConfig {
            rep_rate: r.rep_rate,
            pair_rate_per_source: r.pair_rate_per_source,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSection {
    pub chi: Vec<f64>,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            chi: vec![0.0, 0.02, 0.05, 0.1],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifySection {
    /// Replaces entries of the standard correction table.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corrections: Option<CorrectionsSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CorrectionsSection {
    pub phi_plus: PauliName,
    pub phi_minus: PauliName,
    pub psi_plus: PauliName,
    pub psi_minus: PauliName,
}

impl Default for CorrectionsSection {
    fn default() -> Self {
        Self {
            phi_plus: PauliName::I,
            phi_minus: PauliName::Z,
            psi_plus: PauliName::X,
            psi_minus: PauliName::Y,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PauliName {
    I,
    X,
    Y,
    Z,
}

impl From<PauliName> for Pauli {
    fn from(p: PauliName) -> Self {
        match p {
            PauliName::I => Pauli::I,
            PauliName::X => Pauli::X,
            PauliName::Y => Pauli::Y,
            PauliName::Z => Pauli::Z,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegistrationName {
    Plusplus,
    Phiplus,
    Full,
}

impl From<RegistrationName> for Registration {
    fn from(r: RegistrationName) -> Self {
        match r {
            RegistrationName::Plusplus => Registration::PlusPlus,
            RegistrationName::Phiplus => Registration::PhiPlus,
            RegistrationName::Full => Registration::Full,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LabelName {
    A,
    B,
    C,
}

impl From<LabelName> for TestLabel {
    fn from(l: LabelName) -> Self {
        match l {
            LabelName::A => TestLabel::A,
            LabelName::B => TestLabel::B,
            LabelName::C => TestLabel::C,
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn rates(&self) -> RateConfig {
        self.rates.into()
    }

    pub fn chi(&self) -> Result<[f64; 3], CliError> {
        match self.setup.chi {
            Some(chi) => Ok(chi),
            None => Ok([calibrated_chi(&self.rates())?; 3]),
        }
    }

    pub fn labels(&self) -> Vec<TestLabel> {
        self.setup.labels.iter().map(|&l| l.into()).collect()
    }

    pub fn correction_table(&self) -> CorrectionTable {
        let c = self.verify.corrections.clone().unwrap_or_default();
        CorrectionTable::standard()
            .with(BellKind::PhiPlus, c.phi_plus.into())
            .with(BellKind::PhiMinus, c.phi_minus.into())
            .with(BellKind::PsiPlus, c.psi_plus.into())
            .with(BellKind::PsiMinus, c.psi_minus.into())
    }

    /// Experiment configuration with `samples` and `seed` overrides.
    pub fn setup_config(
        &self,
        samples: Option<u64>,
        seed: Option<u64>,
    ) -> Result<SetupConfig, CliError> {
        let s = &self.setup;
        let cfg = SetupConfig {
            chi_per_source: self.chi()?,
            order_cutoff: s.order_cutoff,
            photon_cutoff: s.photon_cutoff,
            overlap_v: s.overlap_v,
            pbs_transmission: s.pbs_transmission,
            input_state: InputChoice::Test(TestLabel::A),
            registration: s.registration.into(),
            mc_samples: samples.unwrap_or(s.samples),
            seed: seed.unwrap_or(s.seed),
            ..SetupConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_identity() {
        let text = r#"
            [setup]
            chi = [0.05, 0.04, 0.03]
            overlap_v = [0.9, 0.8]
            registration = "full"
            labels = ["C"]
            samples = 1000
            seed = 42

            [sweep]
            chi = [0.0, 0.1]

            [verify.corrections]
            psi_minus = "X"
        "#;
        let a = Config::parse(text).unwrap();
        let b = Config::parse(&a.to_toml()).unwrap();
        assert_eq!(a, b);
        let d = Config::default();
        assert_eq!(Config::parse(&d.to_toml()).unwrap(), d);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = Config::parse("[setup]\nchii = [0.1, 0.1, 0.1]\n").unwrap_err();
        assert!(err.to_string().contains("chii"), "{err}");
        assert!(Config::parse("[extra]\n").is_err());
    }

    #[test]
    fn absent_chi_is_calibrated() {
        let cfg = Config::default().setup_config(None, None).unwrap();
        assert!((cfg.chi_per_source[0].powi(2) - 1e5 / 76e6).abs() < 1e-15);
    }
}
