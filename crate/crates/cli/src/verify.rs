use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use teleport_core::experiment::{
    registered_fraction, teleported_state, InputChoice, Registration, SetupConfig,
};
use teleport_core::qcore::{
    bell_state, singlet_projector_from_paulis, BellKind, DensityMatrix, Pauli, StateVector,
};
use teleport_core::teleport::{
    bsm, fidelity_psi_minus_local, teleport_two_qubit_with, CorrectionTable, InputState, TestLabel,
};
use teleport_core::Complex64;

const RANDOM_STATES: usize = 200;
const SEED: u64 = 0x7e1e;

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, result: Result<String, String>) -> Self {
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        Self {
            name: name.into(),
            passed,
            detail,
        }
    }

    pub fn line(&self) -> String {
        let status = if self.passed { "ok  " } else { "FAIL" };
        format!("{status} {}: {}", self.name, self.detail)
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> StateVector {
    loop {
        let a = (0..1 << n)
            .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        if let Ok((s, _)) = StateVector::normalize(n, a) {
            return s;
        }
    }
}

fn inputs() -> Vec<(String, InputState)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    TestLabel::ALL
        .iter()
        .map(|l| (format!("state {l}"), l.input()))
        .chain((0..RANDOM_STATES).map(|i| {
            (
                format!("random state {i}"),
                random_state(&mut rng, 2).into(),
            )
        }))
        .collect()
}

fn check(
    ok: bool,
    pass: impl Into<String>,
    fail: impl FnOnce() -> String,
) -> Result<String, String> {
    if ok {
        Ok(pass.into())
    } else {
        Err(fail())
    }
}

fn pauli_algebra() -> Result<String, String> {
    use Pauli::*;
    let i = c(0.0, 1.0);
    let cyclic = [(X, Y, Z), (Y, Z, X), (Z, X, Y)];
    for (a, b, r) in cyclic {
        let err = (a.matrix() * b.matrix() - r.matrix() * i).norm();
        if err > 1e-12 {
            return Err(format!("{a}{b} != i{r} (error {err:e})"));
        }
    }
    for a in [X, Y, Z] {
        for b in [X, Y, Z] {
            let anti = (a.matrix() * b.matrix() + b.matrix() * a.matrix()).norm() < 1e-12;
            if anti != (a != b) || anti != a.anticommutes(b) {
                return Err(format!("{a} and {b} anticommutation"));
            }
        }
    }
    Ok("cyclic products and anticommutators".into())
}

fn bell_basis() -> Result<String, String> {
    for a in BellKind::ALL {
        for b in BellKind::ALL {
            let ip = bell_state(a)
                .inner(&bell_state(b))
                .map_err(|e| e.to_string())?;
            let want = if a == b { 1.0 } else { 0.0 };
            if (ip - c(want, 0.0)).norm() > 1e-12 {
                return Err(format!("<{a}|{b}> = {ip}"));
            }
        }
    }
    Ok("orthonormal".into())
}

fn singlet_projector() -> Result<String, String> {
    let direct = DensityMatrix::from_pure(&bell_state(BellKind::PsiMinus));
    let err = (singlet_projector_from_paulis() - direct.matrix())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    check(err < 1e-12, format!("max entry error {err:.1e}"), || {
        format!("max entry error {err:e}")
    })
}

fn bell_measurement(inputs: &[(String, InputState)]) -> Result<String, String> {
    let phi = bell_state(BellKind::PhiPlus);
    for (name, chi) in inputs {
        let joint = chi.state().tensor(&phi).tensor(&phi);
        let m = bsm(&joint, (0, 2)).map_err(|e| e.to_string())?;
        if let Some(o) = m
            .outcomes
            .iter()
            .find(|o| (o.probability - 0.25).abs() > 1e-9)
        {
            return Err(format!("{name}: P({}) = {}", o.kind, o.probability));
        }
    }
    Ok(format!("P = 1/4 for {} inputs", inputs.len()))
}

/// Branches where `kind` occurs on one measurement and `Φ+` on the other.
fn correction(
    kind: BellKind,
    table: &CorrectionTable,
    inputs: &[(String, InputState)],
) -> Result<String, String> {
    for (name, chi) in inputs {
        let t = teleport_two_qubit_with(chi, table).map_err(|e| e.to_string())?;
        for (a, b) in [(kind, BellKind::PhiPlus), (BellKind::PhiPlus, kind)] {
            let branch = t
                .branch(a, b)
                .ok_or_else(|| format!("branch {a}/{b} missing"))?;
            let overlap = branch.corrected.overlap(chi.state());
            if overlap < 1.0 - 1e-9 {
                return Err(format!(
                    "branch {a}/{b} gives overlap {overlap:.6} for {name}"
                ));
            }
        }
    }
    Ok(format!(
        "{} corrects {} inputs",
        table.get(kind),
        inputs.len()
    ))
}

fn sixteen_branches(
    table: &CorrectionTable,
    inputs: &[(String, InputState)],
) -> Result<String, String> {
    for (name, chi) in inputs {
        let t = teleport_two_qubit_with(chi, table).map_err(|e| e.to_string())?;
        if t.branches.len() != 16 {
            return Err(format!("{} branches for {name}", t.branches.len()));
        }
        for b in &t.branches {
            if (b.probability - 1.0 / 16.0).abs() > 1e-9 {
                return Err(format!(
                    "branch {}/{} has P = {}",
                    b.first, b.second, b.probability
                ));
            }
            let overlap = b.corrected.overlap(chi.state());
            if overlap < 1.0 - 1e-9 {
                return Err(format!(
                    "branch {}/{} gives overlap {overlap:.6} for {name}",
                    b.first, b.second
                ));
            }
        }
    }
    Ok(format!("{} inputs", inputs.len()))
}

fn local_correlators() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let singlet = bell_state(BellKind::PsiMinus);
    for i in 0..RANDOM_STATES {
        let mut m = DensityMatrix::from_pure(&random_state(&mut rng, 2))
            .matrix()
            .clone();
        for _ in 0..3 {
            let w: f64 = rng.random_range(0.0..1.0);
            m += DensityMatrix::from_pure(&random_state(&mut rng, 2))
                .matrix()
                .scale(w);
        }
        let rho = DensityMatrix::from_unnormalized(m).map_err(|e| e.to_string())?;
        let direct = rho.fidelity(&singlet).map_err(|e| e.to_string())?;
        let local = fidelity_psi_minus_local(&rho).map_err(|e| e.to_string())?;
        if (direct - local).abs() > 1e-9 {
            return Err(format!("density matrix {i}: {direct} vs {local}"));
        }
    }
    Ok(format!("{RANDOM_STATES} mixed states"))
}

fn fock_cross_layer() -> Result<String, String> {
    for label in TestLabel::ALL {
        let cfg = SetupConfig {
            input_state: InputChoice::Test(label),
            ..SetupConfig::ideal()
        };
        let c = teleported_state(&cfg).map_err(|e| e.to_string())?;
        let f = c
            .conditional
            .ok_or_else(|| format!("state {label}: no conditional state"))?
            .fidelity(&label.state())
            .map_err(|e| e.to_string())?;
        if (f - 1.0).abs() > 1e-9 {
            return Err(format!("state {label}: fidelity {f}"));
        }
    }
    Ok("photons 5 and 6 carry states A, B, C".into())
}

fn registered_fractions() -> Result<String, String> {
    for (reg, want) in [
        (Registration::PlusPlus, 1.0 / 64.0),
        (Registration::Full, 0.25),
    ] {
        let cfg = SetupConfig {
            registration: reg,
            ..SetupConfig::ideal()
        };
        let f = registered_fraction(&cfg).map_err(|e| e.to_string())?;
        if (f - want).abs() > 1e-9 {
            return Err(format!("{} registration: {f}", reg.label()));
        }
    }
    Ok("1/64 with ++ only, 1/4 with full analysis".into())
}

/// Runs every check in a fixed order.
pub fn run_checks(table: &CorrectionTable) -> Vec<Check> {
    let inputs = inputs();
    let mut checks = vec![
        Check::new("pauli algebra", pauli_algebra()),
        Check::new("bell basis", bell_basis()),
        Check::new("singlet projector", singlet_projector()),
        Check::new("bell measurement", bell_measurement(&inputs)),
    ];
    for kind in BellKind::ALL {
        checks.push(Check::new(
            format!("correction {kind}"),
            correction(kind, table, &inputs),
        ));
    }
    checks.push(Check::new(
        "sixteen branches",
        sixteen_branches(table, &inputs),
    ));
    checks.push(Check::new("local correlators", local_correlators()));
    checks.push(Check::new("fock cross-layer", fock_cross_layer()));
    checks.push(Check::new("registered fractions", registered_fractions()));
    checks
}

/// Report text, and the first failing check if any.
pub fn report(checks: &[Check]) -> (String, Option<&Check>) {
    let mut out: String = checks.iter().map(|c| c.line() + "\n").collect();
    let failed = checks.iter().find(|c| !c.passed);
    match failed {
        Some(c) => out.push_str(&format!("first failure: {}\n", c.name)),
        None => out.push_str(&format!("all {} checks passed\n", checks.len())),
    }
    (out, failed)
}
