use num_complex::Complex64;

use super::{check_unitary_jones, Jones, Pauli, TOL, ZERO_PROBABILITY};
use crate::{Error, Result};

/// A normalized pure state of `num_qubits` polarization qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

/// Result of projecting part of a state onto a reference state.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub probability: f64,
    /// State of the untouched qubits, in ascending index order. `None` marks
    /// a zero-probability branch.
    pub conditional: Option<StateVector>,
}

impl StateVector {
    /// Builds a state from amplitudes that must already be normalized.
    pub fn new(num_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_len(num_qubits, amplitudes.len())?;
        let norm_sqr = norm_sqr(&amplitudes);
        if (norm_sqr - 1.0).abs() > TOL {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Normalizes `amplitudes` and returns the state with the factor that was
    /// applied.
    pub fn normalize(num_qubits: usize, mut amplitudes: Vec<Complex64>) -> Result<(Self, f64)> {
        check_len(num_qubits, amplitudes.len())?;
        let norm = norm_sqr(&amplitudes).sqrt();
        if norm < ZERO_PROBABILITY {
            return Err(Error::ZeroState);
        }
        let factor = 1.0 / norm;
        amplitudes.iter_mut().for_each(|a| *a *= factor);
        Ok((
            Self {
                num_qubits,
                amplitudes,
            },
            factor,
        ))
    }

    pub(crate) fn from_normalized(num_qubits: usize, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << num_qubits);
        Self {
            num_qubits,
            amplitudes,
        }
    }

    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << num_qubits;
        if num_qubits == 0 || index >= dim {
            return Err(Error::InvalidParameter(format!(
                "basis index {index} for {num_qubits} qubits"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm_sqr(&self.amplitudes).sqrt()
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|`, or 0 for mismatched dimensions.
    pub fn overlap(&self, other: &StateVector) -> f64 {
        self.inner(other).map(|z| z.norm()).unwrap_or(0.0)
    }

    pub fn equals_up_to_phase(&self, other: &StateVector, tol: f64) -> bool {
        self.dim() == other.dim() && (1.0 - self.overlap(other)).abs() <= tol
    }

    /// `self ⊗ other`, with `self` occupying the leading qubits.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            amplitudes.extend(other.amplitudes.iter().map(|b| a * b));
        }
        StateVector {
            num_qubits: self.num_qubits + other.num_qubits,
            amplitudes,
        }
    }

    pub fn apply_one_qubit(&self, u: &Jones, target: usize) -> Result<StateVector> {
        self.check_qubit(target)?;
        check_unitary_jones(u)?;
        Ok(self.apply_unchecked(u, target))
    }

    pub fn apply_pauli(&self, pauli: Pauli, target: usize) -> Result<StateVector> {
        self.check_qubit(target)?;
        Ok(self.apply_unchecked(&pauli.jones(), target))
    }

    fn apply_unchecked(&self, u: &Jones, target: usize) -> StateVector {
        let shift = self.num_qubits - 1 - target;
        let mask = 1usize << shift;
        let mut out = self.amplitudes.clone();
        for i0 in (0..self.dim()).filter(|i| i & mask == 0) {
            let i1 = i0 | mask;
            let (a0, a1) = (self.amplitudes[i0], self.amplitudes[i1]);
            out[i0] = u[(0, 0)] * a0 + u[(0, 1)] * a1;
            out[i1] = u[(1, 0)] * a0 + u[(1, 1)] * a1;
        }
        StateVector {
            num_qubits: self.num_qubits,
            amplitudes: out,
        }
    }

    /// Reorders qubits so that qubit `k` of the result is qubit `order[k]`
    /// of `self`.
    pub fn permute(&self, order: &[usize]) -> Result<StateVector> {
        if order.len() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits,
                found: order.len(),
            });
        }
        self.check_distinct(order)?;
        let n = self.num_qubits;
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (old_idx, amp) in self.amplitudes.iter().enumerate() {
            let mut new_idx = 0;
            for (k, &q) in order.iter().enumerate() {
                let bit = (old_idx >> (n - 1 - q)) & 1;
                new_idx |= bit << (n - 1 - k);
            }
            out[new_idx] = *amp;
        }
        Ok(StateVector {
            num_qubits: n,
            amplitudes: out,
        })
    }

    /// Projects the qubits in `subsystem` (in the listed order) onto `onto`.
    pub fn project(&self, subsystem: &[usize], onto: &StateVector) -> Result<Projection> {
        if subsystem.len() != onto.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: onto.num_qubits,
                found: subsystem.len(),
            });
        }
        if subsystem.len() >= self.num_qubits {
            return Err(Error::InvalidParameter(
                "projection must leave at least one qubit".into(),
            ));
        }
        self.check_distinct(subsystem)?;
        let onto_norm = onto.norm();
        if (onto_norm * onto_norm - 1.0).abs() > TOL {
            return Err(Error::NotNormalized(onto_norm * onto_norm));
        }

        let n = self.num_qubits;
        let remaining: Vec<usize> = (0..n).filter(|q| !subsystem.contains(q)).collect();
        let rem_n = remaining.len();
        let mut cond = vec![Complex64::new(0.0, 0.0); 1 << rem_n];
        for (idx, amp) in self.amplitudes.iter().enumerate() {
            let bit = |q: usize| (idx >> (n - 1 - q)) & 1;
            let sub_idx = subsystem.iter().fold(0, |acc, &q| (acc << 1) | bit(q));
            let rem_idx = remaining.iter().fold(0, |acc, &q| (acc << 1) | bit(q));
            cond[rem_idx] += onto.amplitudes[sub_idx].conj() * amp;
        }
        let probability = norm_sqr(&cond);
        let conditional = if probability > ZERO_PROBABILITY {
            let scale = 1.0 / probability.sqrt();
            cond.iter_mut().for_each(|a| *a *= scale);
            Some(StateVector {
                num_qubits: rem_n,
                amplitudes: cond,
            })
        } else {
            None
        };
        Ok(Projection {
            probability: probability.clamp(0.0, 1.0),
            conditional,
        })
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                index: q,
                num_qubits: self.num_qubits,
            });
        }
        Ok(())
    }

    fn check_distinct(&self, qubits: &[usize]) -> Result<()> {
        for (i, &q) in qubits.iter().enumerate() {
            self.check_qubit(q)?;
            if qubits[..i].contains(&q) {
                return Err(Error::DuplicateQubit(q));
            }
        }
        Ok(())
    }
}

fn check_len(num_qubits: usize, len: usize) -> Result<()> {
    if num_qubits == 0 || num_qubits > 24 {
        return Err(Error::InvalidParameter(format!(
            "unsupported qubit count {num_qubits}"
        )));
    }
    if len != 1 << num_qubits {
        return Err(Error::DimensionMismatch {
            expected: 1 << num_qubits,
            found: len,
        });
    }
    Ok(())
}

fn norm_sqr(amps: &[Complex64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum()
}
