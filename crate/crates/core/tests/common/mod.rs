#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;
use teleport_core::qcore::{DensityMatrix, Operator, StateVector};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Complex amplitudes with components in [-1, 1], not all tiny.
pub fn amplitudes(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len)
        .prop_map(|v| v.into_iter().map(|(r, i)| c(r, i)).collect::<Vec<_>>())
        .prop_filter("nonzero", |v| {
            v.iter().map(|a| a.norm_sqr()).sum::<f64>() > 1e-3
        })
}

pub fn state(num_qubits: usize) -> impl Strategy<Value = StateVector> {
    amplitudes(1 << num_qubits).prop_map(move |a| StateVector::normalize(num_qubits, a).unwrap().0)
}

pub fn random_state<R: Rng>(rng: &mut R, num_qubits: usize) -> StateVector {
    loop {
        let a: Vec<Complex64> = (0..1 << num_qubits)
            .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        if let Ok((s, _)) = StateVector::normalize(num_qubits, a) {
            return s;
        }
    }
}

/// `A A† / Tr` for a random complex `A`: a full-rank density matrix.
pub fn random_density<R: Rng>(rng: &mut R, num_qubits: usize) -> DensityMatrix {
    let d = 1 << num_qubits;
    let a = Operator::from_fn(d, d, |_, _| {
        c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    DensityMatrix::from_unnormalized(&a * a.adjoint()).unwrap()
}
