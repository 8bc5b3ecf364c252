//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use teleport_core::experiment::{
    calibrated_chi, noise_sweep, rate_estimate, registered_fraction, run_fidelity,
    teleported_state, threshold_check, FidelityReport, InputChoice, RateConfig, Registration,
    SetupConfig, Sixfold, REFERENCE_FIDELITIES, STATE_ESTIMATION_LIMIT,
};
use teleport_core::qcore::{bell_state, BellKind, DensityMatrix, StateVector};
use teleport_core::teleport::{
    fidelity_psi_minus_local, teleport_two_qubit, InputState, TestLabel,
};
use teleport_core::Complex64;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn random_state(rng: &mut ChaCha8Rng) -> StateVector {
    loop {
        let a = (0..4)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        if let Ok((s, _)) = StateVector::normalize(2, a) {
            return s;
        }
    }
}

fn random_density(rng: &mut ChaCha8Rng) -> DensityMatrix {
    let rank = rng.random_range(1..=4);
    let mut m = DensityMatrix::from_pure(&random_state(rng))
        .matrix()
        .clone();
    for _ in 1..rank {
        let w: f64 = rng.random_range(0.0..1.0);
        m += DensityMatrix::from_pure(&random_state(rng))
            .matrix()
            .scale(w);
    }
    DensityMatrix::from_unnormalized(m).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn protocol_exactness() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst_overlap = 1.0f64;
    let mut worst_p = 0.0f64;
    for _ in 0..1000 {
        let chi = InputState::from(random_state(&mut rng));
        let t = teleport_two_qubit(&chi).map_err(|e| e.to_string())?;
        ensure(t.branches.len() == 16, || "missing branches".into())?;
        for b in &t.branches {
            worst_overlap = worst_overlap.min(b.corrected.overlap(chi.state()));
            worst_p = worst_p.max((b.probability - 1.0 / 16.0).abs());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(worst_overlap >= 1.0 - 1e-9, || {
        format!("min overlap {worst_overlap}")
    })?;
    ensure(worst_p <= 1e-9, || format!("max |P - 1/16| {worst_p:e}"))?;
    ensure(secs < 5.0, || format!("took {secs:.2} s"))?;
    Ok(format!(
        "1000 inputs, min overlap 1 - {:.1e}, max |P - 1/16| {worst_p:.1e}, {secs:.2} s",
        1.0 - worst_overlap
    ))
}

fn correlator_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let singlet = bell_state(BellKind::PsiMinus);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let rho = random_density(&mut rng);
        let direct = rho.fidelity(&singlet).map_err(|e| e.to_string())?;
        let local = fidelity_psi_minus_local(&rho).map_err(|e| e.to_string())?;
        worst = worst.max((direct - local).abs());
    }
    let projector = teleport_core::qcore::singlet_projector_from_paulis();
    let entry = (projector - DensityMatrix::from_pure(&singlet).matrix())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    ensure(worst <= 1e-9, || format!("max fidelity gap {worst:e}"))?;
    ensure(entry < 1e-12, || format!("projector entry error {entry:e}"))?;
    Ok(format!(
        "max fidelity gap {worst:.1e}, projector entry error {entry:.1e}"
    ))
}

fn cross_layer() -> Outcome {
    let start = Instant::now();
    let mut states: Vec<StateVector> = TestLabel::ALL.iter().map(|l| l.state()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    states.extend((0..100).map(|_| random_state(&mut rng)));
    let mut worst = 1.0f64;
    for s in &states {
        let qubit = teleport_two_qubit(&InputState::from(s.clone())).map_err(|e| e.to_string())?;
        let predicted = &qubit
            .branch(BellKind::PhiPlus, BellKind::PhiPlus)
            .ok_or("no Φ+Φ+ branch")?
            .corrected;
        let cfg = SetupConfig {
            input_state: InputChoice::Explicit(InputState::from(s.clone())),
            ..SetupConfig::ideal()
        };
        let fock = teleported_state(&cfg).map_err(|e| e.to_string())?;
        let got = fock
            .conditional_state()
            .ok_or("conditional state is not pure")?;
        worst = worst.min(got.overlap(predicted));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(worst >= 1.0 - 1e-9, || format!("min overlap {worst}"))?;
    ensure(secs < 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!(
        "{} states, min overlap 1 - {:.1e}, {secs:.2} s",
        states.len(),
        1.0 - worst
    ))
}

fn postselection_fractions() -> Outcome {
    let frac = |registration| {
        registered_fraction(&SetupConfig {
            registration,
            ..SetupConfig::ideal()
        })
        .map_err(|e| e.to_string())
    };
    let pp = frac(Registration::PlusPlus)?;
    let full = frac(Registration::Full)?;
    ensure((pp - 1.0 / 64.0).abs() <= 1e-9, || {
        format!("++ fraction {pp}")
    })?;
    ensure((full - 0.25).abs() <= 1e-9, || {
        format!("full-analyzer fraction {full}")
    })?;
    Ok(format!("++ only {pp:.12}, full analyzer {full:.12}"))
}

fn rate_consistency() -> Outcome {
    let r = rate_estimate(&RateConfig::experimental()).map_err(|e| e.to_string())?;
    let raw = r.raw_sixfold_per_minute;
    ensure((7.0..=15.0).contains(&raw), || {
        format!("raw sixfold {raw}/min")
    })?;
    Ok(format!(
        "p = {:.3e}, raw sixfold {raw:.2}/min",
        r.per_pulse_pair_prob
    ))
}

const SAMPLES: u64 = 100_000;

fn noise_mechanism() -> Outcome {
    let start = Instant::now();
    let chi = calibrated_chi(&RateConfig::experimental()).map_err(|e| e.to_string())?;
    let exact = SetupConfig {
        chi_per_source: [chi; 3],
        ..SetupConfig::default()
    };
    let f: Vec<FidelityReport> = TestLabel::ALL
        .iter()
        .map(|&l| run_fidelity(&exact, l))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let (fa, fb, fc) = (f[0].fidelity, f[1].fidelity, f[2].fidelity);
    ensure(f.iter().all(|r| r.fidelity < 1.0), || {
        format!("F = {fa}, {fb}, {fc}")
    })?;
    ensure(fa >= fb && fb >= fc, || {
        format!("order F_A {fa}, F_B {fb}, F_C {fc}")
    })?;
    ensure(
        f.iter().all(|r| r.fidelity > STATE_ESTIMATION_LIMIT),
        || format!("F = {fa}, {fb}, {fc}"),
    )?;

    let sampled = SetupConfig {
        mc_samples: SAMPLES,
        seed: 6,
        ..exact.clone()
    };
    let m: Vec<FidelityReport> = TestLabel::ALL
        .iter()
        .map(|&l| run_fidelity(&sampled, l))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    for w in m.windows(2) {
        let se = w[0].standard_error.hypot(w[1].standard_error);
        ensure(w[0].fidelity + 3.0 * se >= w[1].fidelity, || {
            format!(
                "sampled {} {} vs {} {}",
                w[0].label, w[0].fidelity, w[1].label, w[1].fidelity
            )
        })?;
    }
    ensure(
        m.iter().all(|r| {
            matches!(r.sixfold, Sixfold::Sampled { .. }) && r.fidelity > STATE_ESTIMATION_LIMIT
        }),
        || "sampled fidelity below the limit".into(),
    )?;

    let grid = [0.0, chi / 2.0, chi, 0.05, 0.1, 0.15, 0.2];
    let table = noise_sweep(&sampled, &grid).map_err(|e| e.to_string())?;
    let violations = table.monotonicity_violations(3.0);
    ensure(violations.is_empty(), || {
        format!("non-monotone: {violations:?}")
    })?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 600.0, || format!("took {secs:.0} s"))?;
    Ok(format!(
        "chi = {chi:.4}: F_A {fa:.4}, F_B {fb:.4}, F_C {fc:.4}; sampled {:.4}±{:.4}, {:.4}±{:.4}, {:.4}±{:.4}; sweep of {} points monotone; {secs:.1} s",
        m[0].fidelity, m[0].standard_error, m[1].fidelity, m[1].standard_error, m[2].fidelity, m[2].standard_error,
        grid.len()
    ))
}

fn threshold_logic() -> Outcome {
    let mut parts = Vec::new();
    for r in REFERENCE_FIDELITIES {
        let report = FidelityReport {
            label: r.label,
            fidelity: r.fidelity,
            standard_error: r.error,
            sixfold: Sixfold::Exact { probability: 0.0 },
            groups: Vec::new(),
            degenerate: false,
            config: SetupConfig::default(),
        };
        ensure(threshold_check(&report), || format!("{} rejected", r.label))?;
        parts.push(format!("{} {:.2}±{:.2}", r.label, r.fidelity, r.error));
    }
    Ok(format!(
        "{} all above {STATE_ESTIMATION_LIMIT}",
        parts.join(", ")
    ))
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("teleport-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for i in 0..2 {
        let path = dir.join(format!("report{i}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_teleport"))
            .args([
                "noisy",
                "--samples",
                "20000",
                "--seed",
                "2025",
                "--format",
                "json",
                "--out",
            ])
            .arg(&path)
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.success(), || format!("run {i} exited with {status}"))?;
        outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    ensure(outputs[0] == outputs[1], || "reports differ".into())?;
    Ok(format!(
        "two seeded runs, {} identical bytes",
        outputs[0].len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("protocol exactness", protocol_exactness),
        ("correlator equivalence", correlator_equivalence),
        ("cross-layer agreement", cross_layer),
        ("post-selection fractions", postselection_fractions),
        ("rate consistency", rate_consistency),
        ("noise mechanism", noise_mechanism),
        ("threshold logic", threshold_logic),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
