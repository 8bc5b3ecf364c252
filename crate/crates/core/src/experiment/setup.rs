use std::fmt;

use crate::fockoptics::{
    hwp, qwp, Detector, OpticalElement, PairState, Path, Port, SpdcSource, DEFAULT_PHOTON_CUTOFF,
};
use crate::qcore::{Jones, Pauli, StateVector};
use crate::teleport::{InputState, TestLabel};
use crate::{Error, Result};

use super::rates::{calibrated_chi, RateConfig};

pub const P1: Path = Path::Arm(1);
pub const P2: Path = Path::Arm(2);
pub const P3: Path = Path::Arm(3);
pub const P4: Path = Path::Arm(4);
pub const P5: Path = Path::Arm(5);
pub const P6: Path = Path::Arm(6);

/// Polarization analysis basis of one analyzer. The first state of each
/// pair passes the analyzer PBS, the second is reflected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    /// H passes, V blocked.
    HV,
    /// `+` passes, `−` blocked.
    PlusMinus,
    /// R passes, L blocked.
    RL,
}

impl Basis {
    pub const ALL: [Basis; 3] = [Basis::HV, Basis::PlusMinus, Basis::RL];

    /// Wave-plate setting rotating the passing state to `H`.
    pub fn jones(self) -> Jones {
        match self {
            Basis::HV => Jones::identity(),
            Basis::PlusMinus => hwp(22.5),
            Basis::RL => qwp(-45.0),
        }
    }

    /// The Pauli operator whose eigenbasis is analyzed.
    pub fn pauli(self) -> Pauli {
        match self {
            Basis::HV => Pauli::Z,
            Basis::PlusMinus => Pauli::X,
            Basis::RL => Pauli::Y,
        }
    }

    /// State that exits through `port` (`Pass` or `Block`).
    pub fn eigenstate(self, port: Port) -> StateVector {
        use crate::qcore::kets;
        match (self, port) {
            (Basis::HV, Port::Pass) => kets::h(),
            (Basis::HV, _) => kets::v(),
            (Basis::PlusMinus, Port::Pass) => kets::plus(),
            (Basis::PlusMinus, _) => kets::minus(),
            (Basis::RL, Port::Pass) => kets::right(),
            (Basis::RL, _) => kets::left(),
        }
    }

    pub fn port_name(self, port: Port) -> &'static str {
        match (self, port) {
            (Basis::HV, Port::Pass) => "H",
            (Basis::HV, _) => "V",
            (Basis::PlusMinus, Port::Pass) => "+",
            (Basis::PlusMinus, _) => "-",
            (Basis::RL, Port::Pass) => "R",
            (Basis::RL, _) => "L",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::HV => "HV",
            Basis::PlusMinus => "PM",
            Basis::RL => "RL",
        })
    }
}

/// Which `±` coincidences behind each interference PBS are registered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Registration {
    /// Only `|+⟩|+⟩` (the experiment as run).
    PlusPlus,
    /// `|+⟩|+⟩` or `|−⟩|−⟩`: both signatures of `Φ+`.
    PhiPlus,
    /// All four `±` coincidences, identifying `Φ+` and `Φ−`, with the
    /// matching Pauli correction fed forward.
    Full,
}

impl Registration {
    /// Accepted `(port on first output, port on second output)` pairs.
    pub fn accepted(self) -> &'static [(Port, Port)] {
        use Port::*;
        match self {
            Registration::PlusPlus => &[(Pass, Pass)],
            Registration::PhiPlus => &[(Pass, Pass), (Block, Block)],
            Registration::Full => &[(Pass, Pass), (Block, Block), (Pass, Block), (Block, Pass)],
        }
    }
}

/// Source of the two-photon input state.
#[derive(Debug, Clone, PartialEq)]
pub enum InputChoice {
    Test(TestLabel),
    Explicit(InputState),
}

impl InputChoice {
    pub fn state(&self) -> StateVector {
        match self {
            InputChoice::Test(l) => l.state(),
            InputChoice::Explicit(s) => s.state().clone(),
        }
    }
}

/// Parameters of the six-photon setup.
#[derive(Debug, Clone, PartialEq)]
pub struct SetupConfig {
    /// Pair amplitude of the sources feeding paths (1,2), (3,5) and (4,6).
    pub chi_per_source: [f64; 3],
    /// Highest pair number kept per source.
    pub order_cutoff: u32,
    /// Highest total photon number kept in the joint state.
    pub photon_cutoff: u32,
    /// Interference visibility at PBS13 (photon 3 delayed) and PBS24
    /// (photon 2 delayed).
    pub overlap_v: [f64; 2],
    /// Transmission of the interference PBSs; 1 means lossless.
    pub pbs_transmission: [f64; 2],
    pub input_state: InputChoice,
    /// Analyzer bases in front of D5 and D6.
    pub analysis: [Basis; 2],
    pub registration: Registration,
    /// Sixfold events to sample; 0 evaluates exact probabilities.
    pub mc_samples: u64,
    pub seed: u64,
}

impl Default for SetupConfig {
    /// Reference brightness, double-pair emission, perfect overlap, `++`-only
    /// registration, exact evaluation.
    fn default() -> Self {
        let chi = calibrated_chi(&RateConfig::experimental()).expect("reference rates are valid");
        Self {
            chi_per_source: [chi; 3],
            order_cutoff: 2,
            photon_cutoff: DEFAULT_PHOTON_CUTOFF,
            overlap_v: [1.0, 1.0],
            pbs_transmission: [1.0, 1.0],
            input_state: InputChoice::Test(TestLabel::A),
            analysis: [Basis::HV, Basis::HV],
            registration: Registration::PlusPlus,
            mc_samples: 0,
            seed: 0,
        }
    }
}

impl SetupConfig {
    /// One pair per source at most, perfect overlap.
    pub fn ideal() -> Self {
        Self {
            order_cutoff: 1,
            ..Self::default()
        }
    }

    /// Sets the input and the D5/D6 bases used to measure test state `label`
    /// (H/V for A; `+/−` and R/L for B; C uses three setting groups).
    pub fn for_label(mut self, label: TestLabel) -> Self {
        self.input_state = InputChoice::Test(label);
        self.analysis = label_analysis(label);
        self
    }

    pub fn validate(&self) -> Result<()> {
        for chi in self.chi_per_source {
            if !(chi >= 0.0 && chi.is_finite()) {
                return Err(Error::InvalidParameter(format!("chi {chi} must be >= 0")));
            }
        }
        for v in self.overlap_v {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidParameter(format!(
                    "overlap {v} outside [0, 1]"
                )));
            }
        }
        for t in self.pbs_transmission {
            if !(t > 0.0 && t <= 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "transmission {t} outside (0, 1]"
                )));
            }
        }
        if self.order_cutoff < 1 {
            return Err(Error::InvalidParameter("order cutoff must be >= 1".into()));
        }
        if self.photon_cutoff < 6 {
            return Err(Error::InvalidParameter(
                "photon cutoff below six removes every sixfold event".into(),
            ));
        }
        let norm = self.input_state.state().norm();
        if (norm - 1.0).abs() > crate::qcore::TOL {
            return Err(Error::NotNormalized(norm * norm));
        }
        Ok(())
    }
}

pub(crate) fn label_analysis(label: TestLabel) -> [Basis; 2] {
    match label {
        TestLabel::A => [Basis::HV, Basis::HV],
        TestLabel::B => [Basis::PlusMinus, Basis::RL],
        TestLabel::C => [Basis::HV, Basis::HV],
    }
}

/// The optical table as data.
#[derive(Debug, Clone, PartialEq)]
pub struct Setup {
    pub sources: Vec<SpdcSource>,
    /// Elements in the order the photons meet them.
    pub elements: Vec<OpticalElement>,
    /// Paths of the interference PBSs (PBS13, PBS24).
    pub interference_pbs: [(Path, Path); 2],
    /// Paths of the analysis PBSs (PBS5, PBS6).
    pub analysis_pbs: [Path; 2],
    pub detectors: Vec<Detector>,
    pub photon_cutoff: u32,
    pub registration: Registration,
    pub analysis: [Basis; 2],
}

impl Setup {
    /// Index of the detector watching `port` of `path`.
    pub fn detector_index(&self, path: Path, port: Port) -> Option<usize> {
        self.detectors
            .iter()
            .position(|d| d.path == path && d.port == port)
    }

    /// Number of distinct detector positions.
    pub fn detector_positions(&self) -> usize {
        let mut paths: Vec<_> = self.detectors.iter().map(|d| d.path).collect();
        paths.dedup();
        paths.len()
    }
}

pub fn build_setup(cfg: &SetupConfig) -> Result<Setup> {
    cfg.validate()?;
    let [chi12, chi35, chi46] = cfg.chi_per_source;
    let input = SpdcSource {
        output_paths: (P1, P2),
        chi: chi12,
        order_cutoff: cfg.order_cutoff,
        pair: PairState::from_state(&cfg.input_state.state())?,
    };
    let sources = vec![
        input,
        SpdcSource::phi_plus(P3, P5, chi35, cfg.order_cutoff),
        SpdcSource::phi_plus(P4, P6, chi46, cfg.order_cutoff),
    ];

    let mut elements = vec![
        OpticalElement::Distinguishability {
            path: P3,
            overlap: cfg.overlap_v[0],
        },
        OpticalElement::Distinguishability {
            path: P2,
            overlap: cfg.overlap_v[1],
        },
        OpticalElement::pbs(P1, P3),
        OpticalElement::pbs(P2, P4),
    ];
    for (pair, t) in [
        ((P1, P3), cfg.pbs_transmission[0]),
        ((P2, P4), cfg.pbs_transmission[1]),
    ] {
        if t < 1.0 {
            for path in [pair.0, pair.1] {
                elements.push(OpticalElement::Loss {
                    path,
                    transmission: t,
                });
            }
        }
    }
    for path in [P1, P3, P2, P4] {
        elements.push(OpticalElement::Waveplate {
            path,
            jones: Basis::PlusMinus.jones(),
        });
    }
    for (path, basis) in [(P5, cfg.analysis[0]), (P6, cfg.analysis[1])] {
        if basis != Basis::HV {
            elements.push(OpticalElement::Waveplate {
                path,
                jones: basis.jones(),
            });
        }
    }

    let mut detectors = Vec::new();
    let bsm_ports: &[Port] = if cfg.registration == Registration::PlusPlus {
        &[Port::Pass]
    } else {
        &[Port::Pass, Port::Block]
    };
    for (n, path) in [(1, P1), (3, P3), (2, P2), (4, P4)] {
        for &port in bsm_ports {
            let sign = if port == Port::Pass { "+" } else { "-" };
            detectors.push(Detector::new(format!("D{n}{sign}"), path, port));
        }
    }
    for (n, path, basis) in [(5, P5, cfg.analysis[0]), (6, P6, cfg.analysis[1])] {
        for port in [Port::Pass, Port::Block] {
            detectors.push(Detector::new(
                format!("D{n}{}", basis.port_name(port)),
                path,
                port,
            ));
        }
    }

    Ok(Setup {
        sources,
        elements,
        interference_pbs: [(P1, P3), (P2, P4)],
        analysis_pbs: [P5, P6],
        detectors,
        photon_cutoff: cfg.photon_cutoff,
        registration: cfg.registration,
        analysis: cfg.analysis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::TOL;

    #[test]
    fn analyzer_plates_send_the_pass_state_to_h() {
        for basis in Basis::ALL {
            let s = basis
                .eigenstate(Port::Pass)
                .apply_one_qubit(&basis.jones(), 0)
                .unwrap();
            assert!(
                s.equals_up_to_phase(&crate::qcore::kets::h(), TOL),
                "{basis}"
            );
            let s = basis
                .eigenstate(Port::Block)
                .apply_one_qubit(&basis.jones(), 0)
                .unwrap();
            assert!(
                s.equals_up_to_phase(&crate::qcore::kets::v(), TOL),
                "{basis}"
            );
        }
    }

    #[test]
    fn detectors_per_registration() {
        let n = |registration| {
            build_setup(&SetupConfig {
                registration,
                ..SetupConfig::default()
            })
            .unwrap()
            .detectors
            .len()
        };
        assert_eq!(n(Registration::PlusPlus), 8);
        assert_eq!(n(Registration::Full), 12);
    }

    #[test]
    fn calibrated_default_brightness() {
        let chi = SetupConfig::default().chi_per_source[0];
        assert!((chi * chi - 1e5 / 76e6).abs() < 1e-15);
    }
}
