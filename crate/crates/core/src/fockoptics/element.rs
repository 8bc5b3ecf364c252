use num_complex::Complex64;

use super::mode::{ModeId, Path, Polarization, TemporalBin};
use super::state::ModeState;
use super::transform::LinearModeMap;
use crate::qcore::{check_unitary_jones, Jones};
use crate::{Error, Result};

/// Half-wave plate with its fast axis at `degrees` from horizontal.
pub fn hwp(degrees: f64) -> Jones {
    let t = 2.0 * degrees.to_radians();
    let (s, c) = t.sin_cos();
    Jones::new(re(c), re(s), re(s), re(-c))
}

/// Quarter-wave plate with its fast axis at `degrees` from horizontal.
pub fn qwp(degrees: f64) -> Jones {
    let t = degrees.to_radians();
    let (s, c) = t.sin_cos();
    let rot = Jones::new(re(c), re(s), re(-s), re(c));
    let retarder = Jones::new(re(1.0), re(0.0), re(0.0), Complex64::new(0.0, 1.0));
    rot.adjoint() * retarder * rot
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[derive(Debug, Clone, PartialEq)]
pub enum OpticalElement {
    /// Polarizing beam splitter: H transmits `inputs.0 → outputs.0` and
    /// `inputs.1 → outputs.1`, V reflects across.
    Pbs {
        inputs: (Path, Path),
        outputs: (Path, Path),
    },
    /// Polarization unitary acting on both temporal bins of `path`.
    Waveplate { path: Path, jones: Jones },
    /// Temporal mismatch of `path` relative to the other arms; `overlap` is
    /// the two-photon interference visibility.
    Distinguishability { path: Path, overlap: f64 },
    /// Lossy transmission of `path`; lost photons go to `Path::Dump`.
    Loss { path: Path, transmission: f64 },
}

impl OpticalElement {
    pub fn pbs(a: Path, b: Path) -> Self {
        OpticalElement::Pbs {
            inputs: (a, b),
            outputs: (a, b),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            OpticalElement::Pbs { inputs, outputs } => {
                if inputs.0 == inputs.1 || outputs.0 == outputs.1 {
                    return Err(Error::InvalidParameter("PBS ports must differ".into()));
                }
                Ok(())
            }
            OpticalElement::Waveplate { jones, .. } => check_unitary_jones(jones),
            OpticalElement::Distinguishability { overlap, .. } => {
                unit_interval("overlap", *overlap)
            }
            OpticalElement::Loss {
                path, transmission, ..
            } => {
                if matches!(path, Path::Dump(_)) {
                    return Err(Error::InvalidParameter("loss on a dump path".into()));
                }
                unit_interval("transmission", *transmission)
            }
        }
    }

    fn input_paths(&self) -> Vec<Path> {
        match self {
            OpticalElement::Pbs { inputs, .. } => vec![inputs.0, inputs.1],
            OpticalElement::Waveplate { path, .. }
            | OpticalElement::Distinguishability { path, .. }
            | OpticalElement::Loss { path, .. } => vec![*path],
        }
    }

    pub fn mode_map(&self) -> LinearModeMap {
        let one = re(1.0);
        let mut map = LinearModeMap::new();
        match *self {
            OpticalElement::Pbs { inputs, outputs } => {
                for bin in TemporalBin::BOTH {
                    let m = |p, pol| ModeId::new(p, pol, bin);
                    use Polarization::*;
                    map.set(m(inputs.0, H), vec![(m(outputs.0, H), one)]);
                    map.set(m(inputs.1, H), vec![(m(outputs.1, H), one)]);
                    map.set(m(inputs.0, V), vec![(m(outputs.1, V), one)]);
                    map.set(m(inputs.1, V), vec![(m(outputs.0, V), one)]);
                }
            }
            OpticalElement::Waveplate { path, jones } => {
                for bin in TemporalBin::BOTH {
                    let h = ModeId::new(path, Polarization::H, bin);
                    let v = ModeId::new(path, Polarization::V, bin);
                    map.set(h, vec![(h, jones[(0, 0)]), (v, jones[(1, 0)])]);
                    map.set(v, vec![(h, jones[(0, 1)]), (v, jones[(1, 1)])]);
                }
            }
            OpticalElement::Distinguishability { path, overlap } => {
                let (a, b) = (overlap.sqrt(), (1.0 - overlap).sqrt());
                for pol in Polarization::BOTH {
                    let m = ModeId::new(path, pol, TemporalBin::Matched);
                    let u = ModeId::new(path, pol, TemporalBin::Unmatched);
                    map.set(m, vec![(m, re(a)), (u, re(b))]);
                    map.set(u, vec![(m, re(-b)), (u, re(a))]);
                }
            }
            OpticalElement::Loss { path, transmission } => {
                let dump = match path {
                    Path::Arm(n) | Path::Dump(n) => Path::Dump(n),
                };
                let (t, l) = (transmission.sqrt(), (1.0 - transmission).sqrt());
                for pol in Polarization::BOTH {
                    for bin in TemporalBin::BOTH {
                        let m = ModeId::new(path, pol, bin);
                        map.set(m, vec![(m, re(t)), (m.with_path(dump), re(l))]);
                    }
                }
            }
        }
        map
    }

    pub fn apply(&self, state: &ModeState) -> Result<ModeState> {
        self.validate()?;
        for p in self.input_paths() {
            if !state.is_registered(p) {
                return Err(Error::InvalidParameter(format!(
                    "path {p} is not registered"
                )));
            }
        }
        if self.is_identity() {
            return Ok(state.clone());
        }
        self.mode_map().apply(state)
    }

    fn is_identity(&self) -> bool {
        match self {
            OpticalElement::Distinguishability { overlap, .. } => *overlap == 1.0,
            OpticalElement::Loss { transmission, .. } => *transmission == 1.0,
            _ => false,
        }
    }
}

fn unit_interval(name: &str, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidParameter(format!(
            "{name} {x} outside [0, 1]"
        )));
    }
    Ok(())
}

pub fn apply_pbs(
    state: &ModeState,
    inputs: (Path, Path),
    outputs: (Path, Path),
) -> Result<ModeState> {
    OpticalElement::Pbs { inputs, outputs }.apply(state)
}

pub fn apply_waveplate(state: &ModeState, path: Path, jones: Jones) -> Result<ModeState> {
    OpticalElement::Waveplate { path, jones }.apply(state)
}

pub fn apply_distinguishability(state: &ModeState, path: Path, overlap: f64) -> Result<ModeState> {
    OpticalElement::Distinguishability { path, overlap }.apply(state)
}
