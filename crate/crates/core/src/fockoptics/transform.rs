//! Passive linear transformations of creation operators.
//!
//! A Fock state `Π (a†_i)^{n_i} / √(n_i!) |0⟩` is mapped by substituting
//! `a†_i → Σ_j U_ji a†_j` for every photon in a transformed mode, expanding the
//! product into normally ordered monomials and rescaling each monomial by
//! `Π √(m_j!)`.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;

use super::mode::{ModeId, Path};
use super::state::{ModeState, Occupation};
use crate::Result;

/// Creation-operator polynomial: monomial exponents → coefficient.
pub(crate) type Polynomial = BTreeMap<Occupation, Complex64>;

pub(crate) fn sqrt_factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product::<f64>().sqrt()
}

/// Multiplies `poly` by the linear form `Σ coef · a†_mode`.
pub(crate) fn multiply_linear(poly: &Polynomial, form: &[(ModeId, Complex64)]) -> Polynomial {
    let mut out = Polynomial::new();
    for (mono, c) in poly {
        for &(mode, u) in form {
            let mut next = mono.clone();
            next.add(mode, 1);
            *out.entry(next).or_default() += c * u;
        }
    }
    out
}

/// Converts monomials acting on vacuum into Fock amplitudes.
pub(crate) fn monomials_to_fock(poly: Polynomial, out: &mut BTreeMap<Occupation, Complex64>) {
    for (mono, c) in poly {
        let scale: f64 = mono.iter().map(|(_, n)| sqrt_factorial(n)).product();
        *out.entry(mono).or_default() += c * scale;
    }
}

/// Linear map on a set of modes; modes without an entry are left untouched.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LinearModeMap {
    map: BTreeMap<ModeId, Vec<(ModeId, Complex64)>>,
}

impl LinearModeMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets the image of `a†_input` to `Σ coef · a†_output`.
    pub fn set(&mut self, input: ModeId, image: Vec<(ModeId, Complex64)>) {
        self.map.insert(input, image);
    }

    pub fn image(&self, mode: &ModeId) -> Option<&[(ModeId, Complex64)]> {
        self.map.get(mode).map(Vec::as_slice)
    }

    /// Every path mentioned by the map.
    pub fn paths(&self) -> BTreeSet<Path> {
        self.map
            .iter()
            .flat_map(|(m, img)| std::iter::once(m.path).chain(img.iter().map(|(o, _)| o.path)))
            .collect()
    }

    pub fn apply(&self, state: &ModeState) -> Result<ModeState> {
        let mut paths = state.paths().clone();
        let mut out = BTreeMap::new();
        for (occ, amp) in state.raw_terms() {
            self.transform_term(occ, *amp, &mut out);
        }
        let mut result = ModeState::from_map(std::mem::take(&mut paths), out);
        for p in self.paths() {
            result.register(p)?;
        }
        Ok(result)
    }

    fn transform_term(
        &self,
        occ: &Occupation,
        amp: Complex64,
        out: &mut BTreeMap<Occupation, Complex64>,
    ) {
        let mut untouched = Occupation::vacuum();
        let mut coef = amp;
        let mut moved = Vec::new();
        for (mode, n) in occ.iter() {
            coef /= sqrt_factorial(n);
            match self.map.get(&mode) {
                Some(image) => moved.extend(std::iter::repeat_n(image.as_slice(), n as usize)),
                None => untouched.add(mode, n),
            }
        }
        let mut poly = Polynomial::new();
        poly.insert(untouched, coef);
        for image in moved {
            poly = multiply_linear(&poly, image);
        }
        monomials_to_fock(poly, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockoptics::mode::Polarization;
    use crate::fockoptics::state::FockTerm;

    #[test]
    fn balanced_splitter_bunches_two_photons() {
        // 50:50 mixing of H and V on one path: |1,1⟩ → (|2,0⟩ − |0,2⟩)/√2.
        let p = Path::Arm(1);
        let h = ModeId::matched(p, Polarization::H);
        let v = ModeId::matched(p, Polarization::V);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let mut map = LinearModeMap::new();
        map.set(
            h,
            vec![(h, Complex64::new(r, 0.0)), (v, Complex64::new(r, 0.0))],
        );
        map.set(
            v,
            vec![(h, Complex64::new(r, 0.0)), (v, Complex64::new(-r, 0.0))],
        );
        let input = ModeState::from_terms(
            [p],
            [FockTerm {
                occupations: Occupation::from_counts([(h, 1), (v, 1)]),
                amplitude: Complex64::new(1.0, 0.0),
            }],
        )
        .unwrap();
        let out = map.apply(&input).unwrap();
        assert_eq!(out.len(), 2);
        let a20 = out.amplitude(&Occupation::from_counts([(h, 2)]));
        let a02 = out.amplitude(&Occupation::from_counts([(v, 2)]));
        assert!((a20 - Complex64::new(r, 0.0)).norm() < 1e-12);
        assert!((a02 + Complex64::new(r, 0.0)).norm() < 1e-12);
    }
}
