use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarization {
    H,
    V,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::H, Polarization::V];

    pub fn index(self) -> usize {
        match self {
            Polarization::H => 0,
            Polarization::V => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TemporalBin {
    Matched,
    Unmatched,
}

impl TemporalBin {
    pub const BOTH: [TemporalBin; 2] = [TemporalBin::Matched, TemporalBin::Unmatched];
}

/// A spatial mode of the optical table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Path {
    /// Numbered arm, `1..=6` in the teleportation setup.
    Arm(u8),
    /// Undetected mode collecting photons lost from an arm.
    Dump(u8),
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Path::Arm(n) => write!(f, "{n}"),
            Path::Dump(n) => write!(f, "dump{n}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeId {
    pub path: Path,
    pub polarization: Polarization,
    pub bin: TemporalBin,
}

impl ModeId {
    pub fn new(path: Path, polarization: Polarization, bin: TemporalBin) -> Self {
        Self {
            path,
            polarization,
            bin,
        }
    }

    /// Matched-bin mode, where every source emits.
    pub fn matched(path: Path, polarization: Polarization) -> Self {
        Self::new(path, polarization, TemporalBin::Matched)
    }

    pub fn with_path(self, path: Path) -> Self {
        Self { path, ..self }
    }
}

/// Modes per registered path (two polarizations times two bins).
pub const MODES_PER_PATH: usize = 4;
/// Upper bound on registered modes.
pub const MAX_MODES: usize = 64;
