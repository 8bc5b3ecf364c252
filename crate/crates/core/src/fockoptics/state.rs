use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;

use super::mode::{ModeId, Path, MAX_MODES, MODES_PER_PATH};
use crate::{Error, Result};

/// Terms whose weight falls below this are dropped after every element.
pub const PRUNE_WEIGHT: f64 = 1e-16;

/// Occupation numbers of the non-empty modes of one Fock basis state.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occupation(BTreeMap<ModeId, u32>);

impl Occupation {
    pub fn vacuum() -> Self {
        Self::default()
    }

    pub fn from_counts(counts: impl IntoIterator<Item = (ModeId, u32)>) -> Self {
        let mut occ = Self::default();
        for (mode, n) in counts {
            occ.add(mode, n);
        }
        occ
    }

    pub fn add(&mut self, mode: ModeId, n: u32) {
        if n > 0 {
            *self.0.entry(mode).or_insert(0) += n;
        }
    }

    pub fn get(&self, mode: &ModeId) -> u32 {
        self.0.get(mode).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn on_path(&self, path: Path) -> u32 {
        self.iter()
            .filter(|(m, _)| m.path == path)
            .map(|(_, n)| n)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ModeId, u32)> + '_ {
        self.0.iter().map(|(m, n)| (*m, *n))
    }

    pub(crate) fn merged(&self, other: &Occupation) -> Occupation {
        let mut out = self.clone();
        for (m, n) in other.iter() {
            out.add(m, n);
        }
        out
    }
}

/// One occupation-number basis state with its amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct FockTerm {
    pub occupations: Occupation,
    pub amplitude: Complex64,
}

/// A superposition of Fock basis states over registered optical paths.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeState {
    terms: BTreeMap<Occupation, Complex64>,
    paths: BTreeSet<Path>,
}

impl ModeState {
    pub fn vacuum() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Occupation::vacuum(), Complex64::new(1.0, 0.0));
        Self {
            terms,
            paths: BTreeSet::new(),
        }
    }

    /// Builds a state from terms on the given paths; amplitudes of repeated
    /// occupations add up. The result is not normalized.
    pub fn from_terms(
        paths: impl IntoIterator<Item = Path>,
        terms: impl IntoIterator<Item = FockTerm>,
    ) -> Result<Self> {
        let paths: BTreeSet<Path> = paths.into_iter().collect();
        check_mode_count(paths.len())?;
        let mut map = BTreeMap::new();
        for t in terms {
            if let Some((m, _)) = t.occupations.iter().find(|(m, _)| !paths.contains(&m.path)) {
                return Err(Error::InvalidParameter(format!(
                    "term occupies unregistered path {}",
                    m.path
                )));
            }
            *map.entry(t.occupations).or_insert(Complex64::new(0.0, 0.0)) += t.amplitude;
        }
        Ok(Self { terms: map, paths })
    }

    pub(crate) fn from_map(paths: BTreeSet<Path>, terms: BTreeMap<Occupation, Complex64>) -> Self {
        let mut s = Self { terms, paths };
        s.prune();
        s
    }

    pub fn paths(&self) -> &BTreeSet<Path> {
        &self.paths
    }

    pub fn is_registered(&self, path: Path) -> bool {
        self.paths.contains(&path)
    }

    pub(crate) fn register(&mut self, path: Path) -> Result<()> {
        self.paths.insert(path);
        check_mode_count(self.paths.len())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = FockTerm> + '_ {
        self.terms.iter().map(|(o, a)| FockTerm {
            occupations: o.clone(),
            amplitude: *a,
        })
    }

    pub(crate) fn raw_terms(&self) -> &BTreeMap<Occupation, Complex64> {
        &self.terms
    }

    pub fn amplitude(&self, occ: &Occupation) -> Complex64 {
        self.terms.get(occ).copied().unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn max_photons(&self) -> u32 {
        self.terms.keys().map(Occupation::total).max().unwrap_or(0)
    }

    /// Returns the normalized state and the squared norm it had.
    pub fn normalized(mut self) -> Result<(Self, f64)> {
        let n2 = self.norm_sqr();
        if n2 <= 0.0 {
            return Err(Error::ZeroState);
        }
        let s = 1.0 / n2.sqrt();
        self.terms.values_mut().for_each(|a| *a *= s);
        Ok((self, n2))
    }

    /// Keeps only terms satisfying `keep`, renormalized, together with the
    /// probability weight of the kept subspace.
    pub fn postselect(&self, keep: impl Fn(&Occupation) -> bool) -> Result<(Self, f64)> {
        let terms = self
            .terms
            .iter()
            .filter(|(o, _)| keep(o))
            .map(|(o, a)| (o.clone(), *a))
            .collect();
        Self {
            terms,
            paths: self.paths.clone(),
        }
        .normalized()
    }

    /// Projection onto a fixed total photon number.
    pub fn restrict_photon_number(&self, n: u32) -> Result<(Self, f64)> {
        self.postselect(|o| o.total() == n)
    }

    pub(crate) fn prune(&mut self) {
        self.terms.retain(|_, a| a.norm_sqr() >= PRUNE_WEIGHT);
    }
}

/// Product of states on disjoint paths, truncated to `photon_cutoff` total
/// photons and renormalized.
pub fn compose(states: &[ModeState], photon_cutoff: u32) -> Result<ModeState> {
    let mut acc = ModeState::vacuum();
    for s in states {
        if let Some(p) = acc.paths.intersection(&s.paths).next() {
            return Err(Error::OverlappingModes(p.to_string()));
        }
        let mut terms = BTreeMap::new();
        for (o1, a1) in &acc.terms {
            for (o2, a2) in &s.terms {
                if o1.total() + o2.total() > photon_cutoff {
                    continue;
                }
                terms.insert(o1.merged(o2), a1 * a2);
            }
        }
        let mut paths = acc.paths.clone();
        paths.extend(s.paths.iter().copied());
        check_mode_count(paths.len())?;
        acc = ModeState { terms, paths };
    }
    Ok(acc.normalized()?.0)
}

fn check_mode_count(paths: usize) -> Result<()> {
    let modes = paths * MODES_PER_PATH;
    if modes > MAX_MODES {
        return Err(Error::TooManyModes(modes));
    }
    Ok(())
}
