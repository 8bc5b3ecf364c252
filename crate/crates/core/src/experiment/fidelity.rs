use std::collections::BTreeMap;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::fockoptics::{
    click_distribution, coincidence_probability, compose, spdc_emit, Coincidence,
    CoincidencePattern, DetectorSetting, ModeState, Occupation, Port,
};
use crate::qcore::{BellKind, Jones};
use crate::teleport::{correction_for, TestLabel};
use crate::{Error, Result};

use super::setup::{build_setup, Basis, Registration, Setup, SetupConfig, P1, P2, P3, P4, P5, P6};

/// Outcome pairs at (D5, D6), in record order.
pub const OUTCOMES: [(Port, Port); 4] = [
    (Port::Pass, Port::Pass),
    (Port::Pass, Port::Block),
    (Port::Block, Port::Pass),
    (Port::Block, Port::Block),
];

/// Sixfold statistics of one analyzer setting.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupRecord {
    pub analysis: [Basis; 2],
    /// Exact probability (exact mode) or event count (sampled mode) of each
    /// entry of [`OUTCOMES`].
    pub outcome_weights: [f64; 4],
    /// Fraction of each outcome among registered sixfold events.
    pub fractions: [f64; 4],
    /// Events behind the fractions; `None` in exact mode.
    pub events: Option<u64>,
    /// Registered sixfold probability per pulse.
    pub sixfold_probability: f64,
    /// Fidelity fraction (A, B) or correlator (C) of this setting.
    pub value: f64,
    pub standard_error: f64,
}

impl GroupRecord {
    pub fn basis_label(&self) -> String {
        format!("{}/{}", self.analysis[0], self.analysis[1])
    }

    pub fn outcome_label(&self, i: usize) -> String {
        let (a, b) = OUTCOMES[i];
        format!(
            "{}{}",
            self.analysis[0].port_name(a),
            self.analysis[1].port_name(b)
        )
    }

    /// `P(same) − P(different)` over the four outcomes.
    pub fn correlator(&self) -> f64 {
        let f = &self.fractions;
        f[0] + f[3] - f[1] - f[2]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sixfold {
    Exact { probability: f64 },
    Sampled { events: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FidelityReport {
    pub label: TestLabel,
    pub fidelity: f64,
    pub standard_error: f64,
    pub sixfold: Sixfold,
    pub groups: Vec<GroupRecord>,
    /// No registered sixfold events; fidelity is meaningless.
    pub degenerate: bool,
    pub config: SetupConfig,
}

/// Joint source state restricted to terms that can fire all six detector
/// positions, with the probability weight of that subspace.
pub fn sixfold_capable_state(setup: &Setup) -> Result<Option<(ModeState, f64)>> {
    let emitted = setup
        .sources
        .iter()
        .map(|s| spdc_emit(s, setup.photon_cutoff))
        .collect::<Result<Vec<_>>>()?;
    let joint = compose(&emitted, setup.photon_cutoff)?;
    let capable = |o: &Occupation| {
        o.on_path(P5) >= 1
            && o.on_path(P6) >= 1
            && o.on_path(P1) + o.on_path(P3) >= 2
            && o.on_path(P2) + o.on_path(P4) >= 2
    };
    match joint.postselect(capable) {
        Ok(x) => Ok(Some(x)),
        Err(Error::ZeroState) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Runs the table and returns the state at the detectors with its weight.
pub fn detector_state(setup: &Setup) -> Result<Option<(ModeState, f64)>> {
    let Some((mut state, weight)) = sixfold_capable_state(setup)? else {
        return Ok(None);
    };
    for element in &setup.elements {
        state = element.apply(&state)?;
    }
    Ok(Some((state, weight)))
}

/// A registered sixfold click pattern and the (D5, D6) outcomes it adds to,
/// after feed-forward.
#[derive(Debug, Clone, PartialEq)]
struct SixfoldEvent {
    probability: f64,
    outcomes: Vec<usize>,
}

fn bell_class(
    mask: u64,
    setup: &Setup,
    paths: (crate::fockoptics::Path, crate::fockoptics::Path),
) -> Option<BellKind> {
    let fired = |path, port| {
        setup
            .detector_index(path, port)
            .is_some_and(|i| mask & (1 << i) != 0)
    };
    let mut class = None;
    for &(a, b) in setup.registration.accepted() {
        if fired(paths.0, a) && fired(paths.1, b) {
            let kind = if a == b {
                BellKind::PhiPlus
            } else {
                BellKind::PhiMinus
            };
            match class {
                None => class = Some(kind),
                Some(k) if k == kind => {}
                // Ambiguous: both Φ+ and Φ− signatures fired.
                Some(_) => return None,
            }
        }
    }
    class
}

fn sixfold_events(setup: &Setup, dist: &BTreeMap<u64, f64>, weight: f64) -> Vec<SixfoldEvent> {
    let mut events = Vec::new();
    for (&mask, &p) in dist {
        let (Some(k13), Some(k24)) = (
            bell_class(mask, setup, setup.interference_pbs[0]),
            bell_class(mask, setup, setup.interference_pbs[1]),
        ) else {
            continue;
        };
        let fired = |path, port| {
            setup
                .detector_index(path, port)
                .is_some_and(|i| mask & (1 << i) != 0)
        };
        let flip5 = correction_for(k13).anticommutes(setup.analysis[0].pauli());
        let flip6 = correction_for(k24).anticommutes(setup.analysis[1].pauli());
        let corrected = |port: Port, flip: bool| match (port, flip) {
            (p, false) => p,
            (Port::Pass, true) => Port::Block,
            (_, true) => Port::Pass,
        };
        let outcomes: Vec<usize> = OUTCOMES
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| {
                fired(setup.analysis_pbs[0], a) && fired(setup.analysis_pbs[1], b)
            })
            .map(|(_, &(a, b))| {
                let key = (corrected(a, flip5), corrected(b, flip6));
                OUTCOMES.iter().position(|o| *o == key).unwrap()
            })
            .collect();
        if !outcomes.is_empty() {
            events.push(SixfoldEvent {
                probability: p * weight,
                outcomes,
            });
        }
    }
    events
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Evaluates one analyzer setting, exactly or by sampling sixfold events.
fn run_group(cfg: &SetupConfig, analysis: [Basis; 2], stream: u64) -> Result<GroupRecord> {
    let cfg = SetupConfig {
        analysis,
        ..cfg.clone()
    };
    let setup = build_setup(&cfg)?;
    let events = match detector_state(&setup)? {
        Some((state, weight)) => {
            let dist = click_distribution(&state, &setup.detectors)?;
            sixfold_events(&setup, &dist, weight)
        }
        None => Vec::new(),
    };
    let sixfold_probability: f64 = events.iter().map(|e| e.probability).sum();

    let mut weights = [0.0; 4];
    let mut samples = None;
    if sixfold_probability > 0.0 {
        if cfg.mc_samples == 0 {
            for e in &events {
                for &o in &e.outcomes {
                    weights[o] += e.probability;
                }
            }
        } else {
            let index = WeightedIndex::new(events.iter().map(|e| e.probability))
                .map_err(|e| Error::InvalidParameter(format!("sampling weights: {e}")))?;
            let mut rng = stream_rng(cfg.seed, stream);
            for _ in 0..cfg.mc_samples {
                for &o in &events[index.sample(&mut rng)].outcomes {
                    weights[o] += 1.0;
                }
            }
            samples = Some(cfg.mc_samples);
        }
    }
    let total: f64 = weights.iter().sum();
    let fractions = if total > 0.0 {
        weights.map(|w| w / total)
    } else {
        [0.0; 4]
    };
    Ok(GroupRecord {
        analysis,
        outcome_weights: weights,
        fractions,
        events: samples.map(|_| total.round() as u64),
        sixfold_probability,
        value: 0.0,
        standard_error: 0.0,
    })
}

fn report(
    cfg: &SetupConfig,
    label: TestLabel,
    groups: Vec<GroupRecord>,
    fidelity: f64,
    standard_error: f64,
) -> FidelityReport {
    let degenerate = groups.iter().any(|g| g.sixfold_probability <= 0.0);
    let sixfold = if cfg.mc_samples == 0 {
        Sixfold::Exact {
            probability: groups[0].sixfold_probability,
        }
    } else {
        Sixfold::Sampled {
            events: groups.iter().filter_map(|g| g.events).sum(),
        }
    };
    FidelityReport {
        label,
        fidelity: if degenerate {
            0.0
        } else {
            fidelity.clamp(0.0, 1.0)
        },
        standard_error: if degenerate { 0.0 } else { standard_error },
        sixfold,
        groups,
        degenerate,
        config: cfg.clone(),
    }
}

fn check_input(cfg: &SetupConfig, label: TestLabel) -> Result<()> {
    if !cfg
        .input_state
        .state()
        .equals_up_to_phase(&label.state(), crate::qcore::TOL)
    {
        return Err(Error::InvalidParameter(format!(
            "input state does not match test state {label}"
        )));
    }
    Ok(())
}

/// Fidelity of a product test state: the fraction of sixfold events in
/// which D5 and D6 both report the teleported state.
fn run_product(cfg: &SetupConfig, label: TestLabel, stream: u64) -> Result<FidelityReport> {
    check_input(cfg, label)?;
    let analysis = super::setup::label_analysis(label);
    let target = label.state();
    let mut group = run_group(cfg, analysis, stream)?;
    let correct = OUTCOMES
        .iter()
        .position(|&(a, b)| {
            let e = analysis[0].eigenstate(a).tensor(&analysis[1].eigenstate(b));
            e.equals_up_to_phase(&target, 1e-9)
        })
        .expect("test state is an analyzer eigenstate");
    let f = group.fractions[correct];
    let se = match group.events {
        Some(n) if n > 0 => (f * (1.0 - f) / n as f64).sqrt(),
        _ => 0.0,
    };
    group.value = f;
    group.standard_error = se;
    Ok(report(cfg, label, vec![group], f, se))
}

#[allow(non_snake_case)]
pub fn run_fidelity_A(cfg: &SetupConfig) -> Result<FidelityReport> {
    run_fidelity_stream(cfg, TestLabel::A, 0)
}

#[allow(non_snake_case)]
pub fn run_fidelity_B(cfg: &SetupConfig) -> Result<FidelityReport> {
    run_fidelity_stream(cfg, TestLabel::B, 0)
}

/// Singlet fidelity from the `XX`, `YY` and `ZZ` correlators measured with
/// both analyzers in the `+/−`, R/L and H/V bases.
#[allow(non_snake_case)]
pub fn run_fidelity_C(cfg: &SetupConfig) -> Result<FidelityReport> {
    run_fidelity_stream(cfg, TestLabel::C, 0)
}

fn run_singlet(cfg: &SetupConfig, first_stream: u64) -> Result<FidelityReport> {
    check_input(cfg, TestLabel::C)?;
    let settings = [Basis::PlusMinus, Basis::RL, Basis::HV];
    let mut groups = settings
        .par_iter()
        .enumerate()
        .map(|(i, &b)| run_group(cfg, [b, b], first_stream + i as u64))
        .collect::<Result<Vec<_>>>()?;
    let mut variance = 0.0;
    let mut sum = 0.0;
    for g in &mut groups {
        let e = g.correlator();
        let se = match g.events {
            Some(n) if n > 0 => ((1.0 - e * e).max(0.0) / n as f64).sqrt(),
            _ => 0.0,
        };
        g.value = e;
        g.standard_error = se;
        sum += e;
        variance += se * se;
    }
    let f = 0.25 * (1.0 - sum);
    Ok(report(cfg, TestLabel::C, groups, f, 0.25 * variance.sqrt()))
}

/// Runs the fidelity measurement of `label` with the analysis and input it
/// requires.
pub fn run_fidelity(cfg: &SetupConfig, label: TestLabel) -> Result<FidelityReport> {
    run_fidelity_stream(&cfg.clone().for_label(label), label, 0)
}

/// Random streams `8·point .. 8·point + 5` belong to one sweep point.
pub(crate) fn run_fidelity_stream(
    cfg: &SetupConfig,
    label: TestLabel,
    point: u64,
) -> Result<FidelityReport> {
    let base = 8 * point;
    match label {
        TestLabel::A => run_product(cfg, label, base),
        TestLabel::B => run_product(cfg, label, base + 1),
        TestLabel::C => run_singlet(cfg, base + 2),
    }
}

/// Probability of the registered sixfold coincidence summed over every
/// D5/D6 outcome, per pulse.
pub fn registered_sixfold_probability(cfg: &SetupConfig) -> Result<f64> {
    Ok(run_group(
        &SetupConfig {
            mc_samples: 0,
            ..cfg.clone()
        },
        cfg.analysis,
        0,
    )?
    .sixfold_probability)
}

/// Registered sixfold probability divided by the probability of one pair
/// from every source.
pub fn registered_fraction(cfg: &SetupConfig) -> Result<f64> {
    let cfg = SetupConfig {
        order_cutoff: 1,
        mc_samples: 0,
        ..cfg.clone()
    };
    let setup = build_setup(&cfg)?;
    let Some((state, weight)) = detector_state(&setup)? else {
        return Ok(0.0);
    };
    // At first order the sixfold-capable subspace is exactly one pair per
    // source, so renormalizing by its weight conditions on it.
    let dist = click_distribution(&state, &setup.detectors)?;
    let p: f64 = sixfold_events(&setup, &dist, weight)
        .iter()
        .map(|e| e.probability)
        .sum();
    Ok(p / weight)
}

impl Registration {
    pub fn label(self) -> &'static str {
        match self {
            Registration::PlusPlus => "plusplus",
            Registration::PhiPlus => "phiplus",
            Registration::Full => "full",
        }
    }
}

/// Polarization state of photons 5 and 6 given `+` clicks at D1 to D4 and
/// one photon on each of paths 5 and 6, read out without analyzer plates.
pub fn teleported_state(cfg: &SetupConfig) -> Result<Coincidence> {
    let cfg = SetupConfig {
        analysis: [Basis::HV, Basis::HV],
        ..cfg.clone()
    };
    let setup = build_setup(&cfg)?;
    let Some((state, weight)) = detector_state(&setup)? else {
        return Ok(Coincidence {
            probability: 0.0,
            conditional: None,
        });
    };
    let required = [P1, P3, P2, P4]
        .into_iter()
        .map(|p| (p, DetectorSetting::new(Jones::identity(), Port::Pass)))
        .collect();
    let pattern = CoincidencePattern::new(required)?
        .with_designated(vec![(P5, Jones::identity()), (P6, Jones::identity())])?;
    let mut c = coincidence_probability(&state, &pattern)?;
    c.probability *= weight;
    Ok(c)
}
