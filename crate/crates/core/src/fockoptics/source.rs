use std::collections::BTreeMap;

use num_complex::Complex64;

use super::mode::{ModeId, Path, Polarization};
use super::state::{ModeState, Occupation};
use super::transform::{monomials_to_fock, Polynomial};
use crate::qcore::StateVector;
use crate::{Error, Result};

/// Default cap on the total photon number of a composed state.
pub const DEFAULT_PHOTON_CUTOFF: u32 = 8;

/// Polarization content of one emitted pair: the pair creation operator is
/// `Σ_ij K_ij a†_i b†_j` with `Σ |K_ij|² = 2`, so that `K = I` is `Φ+`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairState {
    k: [[Complex64; 2]; 2],
}

impl PairState {
    pub fn phi_plus() -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Self {
            k: [[o, z], [z, o]],
        }
    }

    /// Pair operator whose one-pair term is the two-qubit `state`
    /// (first qubit on the first output path).
    pub fn from_state(state: &StateVector) -> Result<Self> {
        if state.num_qubits() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: state.num_qubits(),
            });
        }
        let a = state.amplitudes();
        let s = std::f64::consts::SQRT_2;
        Ok(Self {
            k: [[a[0] * s, a[1] * s], [a[2] * s, a[3] * s]],
        })
    }

    pub fn coefficient(&self, first: Polarization, second: Polarization) -> Complex64 {
        self.k[first.index()][second.index()]
    }
}

impl Default for PairState {
    fn default() -> Self {
        Self::phi_plus()
    }
}

/// A down-conversion source emitting into two paths.
#[derive(Debug, Clone, PartialEq)]
pub struct SpdcSource {
    pub output_paths: (Path, Path),
    /// Pair emission amplitude per pulse.
    pub chi: f64,
    /// Highest number of pairs kept.
    pub order_cutoff: u32,
    pub pair: PairState,
}

impl SpdcSource {
    pub fn phi_plus(a: Path, b: Path, chi: f64, order_cutoff: u32) -> Self {
        Self {
            output_paths: (a, b),
            chi,
            order_cutoff,
            pair: PairState::phi_plus(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.chi >= 0.0 && self.chi.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "chi {} must be >= 0",
                self.chi
            )));
        }
        if self.order_cutoff < 1 {
            return Err(Error::InvalidParameter("order cutoff must be >= 1".into()));
        }
        if self.output_paths.0 == self.output_paths.1 {
            return Err(Error::InvalidParameter("source paths must differ".into()));
        }
        Ok(())
    }
}

/// Normalized truncation of `Σ_n χⁿ/n! (Σ K_ij a†_i b†_j)ⁿ |0⟩` for
/// `n ≤ order_cutoff`.
pub fn spdc_emit(source: &SpdcSource, photon_cutoff: u32) -> Result<ModeState> {
    source.validate()?;
    let requested = 2 * source.order_cutoff;
    if requested > photon_cutoff {
        return Err(Error::PhotonCutoff {
            requested,
            limit: photon_cutoff,
        });
    }
    let (pa, pb) = source.output_paths;
    let mut pair_terms = Vec::with_capacity(4);
    for i in Polarization::BOTH {
        for j in Polarization::BOTH {
            let k = source.pair.coefficient(i, j);
            if k != Complex64::new(0.0, 0.0) {
                pair_terms.push((ModeId::matched(pa, i), ModeId::matched(pb, j), k));
            }
        }
    }

    let mut fock = BTreeMap::new();
    let mut poly = Polynomial::new();
    poly.insert(Occupation::vacuum(), Complex64::new(1.0, 0.0));
    monomials_to_fock(poly.clone(), &mut fock);
    if source.chi > 0.0 {
        for n in 1..=source.order_cutoff {
            let scale = source.chi / f64::from(n);
            let mut next = Polynomial::new();
            for (mono, c) in &poly {
                for &(a, b, k) in &pair_terms {
                    let mut m = mono.clone();
                    m.add(a, 1);
                    m.add(b, 1);
                    *next.entry(m).or_default() += c * k * scale;
                }
            }
            poly = next;
            monomials_to_fock(poly.clone(), &mut fock);
        }
    }
    let state = ModeState::from_map([pa, pb].into_iter().collect(), fock);
    Ok(state.normalized()?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_chi_is_vacuum() {
        let s = spdc_emit(&SpdcSource::phi_plus(Path::Arm(3), Path::Arm(5), 0.0, 2), 8).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.max_photons(), 0);
    }

    #[test]
    fn cutoff_is_enforced() {
        let src = SpdcSource::phi_plus(Path::Arm(3), Path::Arm(5), 0.1, 5);
        assert_eq!(
            spdc_emit(&src, 8).unwrap_err(),
            Error::PhotonCutoff {
                requested: 10,
                limit: 8
            }
        );
        let src = SpdcSource::phi_plus(Path::Arm(3), Path::Arm(5), -0.1, 1);
        assert!(spdc_emit(&src, 8).is_err());
    }
}
