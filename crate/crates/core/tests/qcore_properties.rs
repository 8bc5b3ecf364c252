mod common;

use common::{amplitudes, c, random_density, state};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use teleport_core::qcore::{
    bell_state, kets, pauli_string, BellKind, DensityMatrix, Jones, Pauli, StateVector,
};
use teleport_core::teleport::fidelity_psi_minus_local;

/// Dense `Σ_ij conj(ψ_i) O_ij ψ_j` without going through the library.
fn dense_expectation(psi: &[Complex64], obs: &teleport_core::qcore::Operator) -> f64 {
    let mut acc = c(0.0, 0.0);
    for i in 0..psi.len() {
        for j in 0..psi.len() {
            acc += psi[i].conj() * obs[(i, j)] * psi[j];
        }
    }
    acc.re
}

fn unitary_from(a: f64, b: f64, g: f64, phase: f64) -> Jones {
    // e^{iφ} [[e^{ia} cos g, e^{ib} sin g], [−e^{−ib} sin g, e^{−ia} cos g]]
    let e = |t: f64| Complex64::from_polar(1.0, t);
    let p = e(phase);
    Jones::new(
        p * e(a) * g.cos(),
        p * e(b) * g.sin(),
        -p * e(-b) * g.sin(),
        p * e(-a) * g.cos(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normalize_gives_unit_norm(a in amplitudes(8)) {
        let (s, _) = StateVector::normalize(3, a).unwrap();
        prop_assert!((s.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn one_qubit_unitaries_preserve_norm(
        s in state(3),
        (a, b, g, p) in (0.0..6.3f64, 0.0..6.3f64, 0.0..3.2f64, 0.0..6.3f64),
        target in 0usize..3,
    ) {
        let u = unitary_from(a, b, g, p);
        let out = s.apply_one_qubit(&u, target).unwrap();
        prop_assert!((out.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bell_projections_are_complete(s in state(4), a in 0usize..4, b in 0usize..4) {
        prop_assume!(a != b);
        let total: f64 = BellKind::ALL
            .iter()
            .map(|&k| s.project(&[a, b], &bell_state(k)).unwrap().probability)
            .sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conditional_states_are_normalized(s in state(3), q in 0usize..3) {
        let p = s.project(&[q], &kets::plus()).unwrap();
        if let Some(cond) = p.conditional {
            prop_assert!((cond.norm() - 1.0).abs() < 1e-12);
            prop_assert_eq!(cond.num_qubits(), 2);
        }
    }

    #[test]
    fn expectation_matches_dense_oracle(
        s in state(2),
        p in prop::sample::select(Pauli::ALL.to_vec()),
        q in prop::sample::select(Pauli::ALL.to_vec()),
    ) {
        let obs = pauli_string(&[p, q]);
        let rho = DensityMatrix::from_pure(&s);
        let lib = rho.expectation(&obs).unwrap();
        prop_assert!((lib - dense_expectation(s.amplitudes(), &obs)).abs() < 1e-12);
    }

    #[test]
    fn permutation_round_trips(s in state(3)) {
        let back = s.permute(&[2, 0, 1]).unwrap().permute(&[1, 2, 0]).unwrap();
        prop_assert!(back.equals_up_to_phase(&s, 1e-12));
    }

    #[test]
    fn partial_trace_of_product_recovers_factor(a in state(1), b in state(2)) {
        let rho = DensityMatrix::from_pure(&a.tensor(&b));
        let reduced = rho.partial_trace(&[0]).unwrap();
        prop_assert!((reduced.fidelity(&a).unwrap() - 1.0).abs() < 1e-9);
        let reduced = rho.partial_trace(&[1, 2]).unwrap();
        prop_assert!((reduced.fidelity(&b).unwrap() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn self_fidelity_is_one_for_random_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [1, 2, 3] {
        for _ in 0..1000 {
            let s = common::random_state(&mut rng, n);
            let f = DensityMatrix::from_pure(&s).fidelity(&s).unwrap();
            assert!((f - 1.0).abs() < 1e-9);
        }
    }
}

#[test]
fn local_correlator_fidelity_equals_overlap_fidelity() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let singlet = bell_state(BellKind::PsiMinus);
    for _ in 0..1000 {
        let rho = random_density(&mut rng, 2);
        let direct = rho.fidelity(&singlet).unwrap();
        let local = fidelity_psi_minus_local(&rho).unwrap();
        assert!((direct - local).abs() < 1e-9, "{direct} vs {local}");
    }
}

#[test]
fn random_density_matrices_are_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let rho = random_density(&mut rng, 2);
        assert!((rho.trace() - 1.0).abs() < 1e-12);
        assert!(rho.purity() <= 1.0 + 1e-12);
        assert!(DensityMatrix::new(rho.matrix().clone()).is_ok());
    }
}
