use std::collections::BTreeMap;

use num_complex::Complex64;

use super::element::OpticalElement;
use super::mode::{Path, Polarization, TemporalBin};
use super::state::{ModeState, Occupation};
use crate::qcore::{DensityMatrix, Jones, Operator, StateVector, TOL};
use crate::{Error, Result};

/// Which output of a polarization analyzer (rotation, then PBS) must click.
/// After the rotation the analyzed state sits in `H`, which passes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Port {
    Pass,
    Block,
    /// Either output; the detector watches the whole path.
    Either,
}

/// Threshold detector on one path: true when at least one photon reaches the
/// watched output, in any temporal bin.
pub fn fires(occ: &Occupation, path: Path, port: Port) -> bool {
    occ.iter().any(|(m, n)| {
        n > 0
            && m.path == path
            && match port {
                Port::Pass => m.polarization == Polarization::H,
                Port::Block => m.polarization == Polarization::V,
                Port::Either => true,
            }
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetectorSetting {
    /// Rotation taking the analyzed polarization to `H`.
    pub basis: Jones,
    pub port: Port,
}

impl DetectorSetting {
    pub fn new(basis: Jones, port: Port) -> Self {
        Self { basis, port }
    }
}

/// Coincidence condition for post-selection.
#[derive(Debug, Clone, PartialEq)]
pub struct CoincidencePattern {
    pub required: BTreeMap<Path, DetectorSetting>,
    /// Paths whose polarization qubits are reported, each with the rotation
    /// applied before read-out. Must be disjoint from `required`.
    pub designated: Vec<(Path, Jones)>,
    /// Threshold (non-number-resolving) detection; always true.
    pub threshold: bool,
}

impl CoincidencePattern {
    pub fn new(required: BTreeMap<Path, DetectorSetting>) -> Result<Self> {
        if required.is_empty() {
            return Err(Error::InvalidParameter(
                "coincidence pattern needs a detector".into(),
            ));
        }
        Ok(Self {
            required,
            designated: Vec::new(),
            threshold: true,
        })
    }

    pub fn with_designated(mut self, designated: Vec<(Path, Jones)>) -> Result<Self> {
        if let Some((p, _)) = designated
            .iter()
            .find(|(p, _)| self.required.contains_key(p))
        {
            return Err(Error::InvalidParameter(format!(
                "path {p} is both required and designated"
            )));
        }
        self.designated = designated;
        Ok(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Coincidence {
    /// Probability that every required detector clicks.
    pub probability: f64,
    /// Polarization state of the designated paths given the coincidence and
    /// exactly one photon on each designated path.
    pub conditional: Option<DensityMatrix>,
}

impl Coincidence {
    /// The conditional state when it is pure.
    pub fn conditional_state(&self) -> Option<StateVector> {
        self.conditional.as_ref()?.pure_state(TOL)
    }
}

/// Applies every analyzer rotation of the pattern.
fn rotate(state: &ModeState, pattern: &CoincidencePattern) -> Result<ModeState> {
    let rotations = pattern
        .required
        .iter()
        .map(|(p, s)| (*p, s.basis))
        .chain(pattern.designated.iter().copied());
    let mut out = state.clone();
    for (path, jones) in rotations {
        if !state.is_registered(path) {
            return Err(Error::InvalidParameter(format!(
                "path {path} is not registered"
            )));
        }
        if jones != Jones::identity() {
            out = OpticalElement::Waveplate { path, jones }.apply(&out)?;
        }
    }
    Ok(out)
}

pub fn coincidence_probability(
    state: &ModeState,
    pattern: &CoincidencePattern,
) -> Result<Coincidence> {
    let rotated = rotate(state, pattern)?;
    let d = pattern.designated.len();
    let mut probability = 0.0;
    let mut env: BTreeMap<(Occupation, Vec<TemporalBin>), Vec<Complex64>> = BTreeMap::new();

    for term in rotated.terms() {
        let occ = &term.occupations;
        if !pattern.required.iter().all(|(p, s)| fires(occ, *p, s.port)) {
            continue;
        }
        probability += term.amplitude.norm_sqr();
        if d == 0 {
            continue;
        }
        let mut index = 0usize;
        let mut bins = Vec::with_capacity(d);
        let mut single = true;
        for (path, _) in &pattern.designated {
            let photons: Vec<_> = occ.iter().filter(|(m, _)| m.path == *path).collect();
            match photons.as_slice() {
                [(m, 1)] => {
                    index = (index << 1) | m.polarization.index();
                    bins.push(m.bin);
                }
                _ => {
                    single = false;
                    break;
                }
            }
        }
        if !single {
            continue;
        }
        let rest = Occupation::from_counts(
            occ.iter()
                .filter(|(m, _)| !pattern.designated.iter().any(|(p, _)| *p == m.path)),
        );
        env.entry((rest, bins))
            .or_insert_with(|| vec![Complex64::new(0.0, 0.0); 1 << d])[index] += term.amplitude;
    }

    let conditional = if env.is_empty() {
        None
    } else {
        let dim = 1 << d;
        let mut rho = Operator::zeros(dim, dim);
        for v in env.values() {
            let col = nalgebra::DVector::from_column_slice(v);
            rho += &col * col.adjoint();
        }
        if rho.trace().re > 0.0 {
            Some(DensityMatrix::from_unnormalized(rho)?)
        } else {
            None
        }
    };
    Ok(Coincidence {
        probability,
        conditional,
    })
}

/// A physical detector behind one analyzer output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Detector {
    pub name: String,
    pub path: Path,
    pub port: Port,
}

impl Detector {
    pub fn new(name: impl Into<String>, path: Path, port: Port) -> Self {
        Self {
            name: name.into(),
            path,
            port,
        }
    }
}

/// Probability of every click pattern; bit `i` of a key is detector `i`.
pub fn click_distribution(state: &ModeState, detectors: &[Detector]) -> Result<BTreeMap<u64, f64>> {
    if detectors.len() > 64 {
        return Err(Error::InvalidParameter("at most 64 detectors".into()));
    }
    let mut dist = BTreeMap::new();
    for term in state.terms() {
        let mask = detectors
            .iter()
            .enumerate()
            .filter(|(_, d)| fires(&term.occupations, d.path, d.port))
            .fold(0u64, |acc, (i, _)| acc | (1 << i));
        *dist.entry(mask).or_insert(0.0) += term.amplitude.norm_sqr();
    }
    Ok(dist)
}
