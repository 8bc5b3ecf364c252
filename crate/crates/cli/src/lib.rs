//! Command-line runner for the teleportation simulator.
//!
//! Subcommands read an optional TOML configuration, run one experiment and
//! write a CSV or JSON table. Exit codes: 0 success, 1 configuration or
//! input error, 2 failed invariant.

pub mod config;
pub mod table;
pub mod verify;

use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use sha2::{Digest, Sha256};
use teleport_core::experiment::{
    calibrated_chi, noise_sweep, rate_estimate, run_fidelity, threshold_check, FidelityReport,
    SetupConfig, Sixfold,
};
use teleport_core::teleport::TestLabel;

pub use config::Config;
use table::{emit, Format, Metadata, Table, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Config(String),
    Io(String),
    /// An invariant check failed; carries the first failing check.
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 1,
            CliError::Invariant(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Invariant(m) => write!(f, "invariant failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<teleport_core::Error> for CliError {
    fn from(e: teleport_core::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "teleport",
    version,
    about = "Two-qubit photonic teleportation simulator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// TOML configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for Monte Carlo sampling (overrides the config).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,
    /// Sixfold events per setting group; 0 computes exact probabilities.
    #[arg(long, global = true)]
    pub samples: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Check the qubit-level and optical invariants.
    Verify,
    /// Single pairs and perfect overlap: every fidelity is 1.
    Ideal,
    /// The configured setup, including double-pair emission.
    Noisy,
    /// Fidelities of A, B and C over the `[sweep]` grid of χ.
    Sweep,
    /// Count rates from the `[rates]` section.
    Rates,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Ideal => "ideal",
            Command::Noisy => "noisy",
            Command::Sweep => "sweep",
            Command::Rates => "rates",
        }
    }
}

/// Runs a parsed command line; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("teleport: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if cli.command == Command::Verify {
        return cmd_verify(&config, cli.out.as_deref());
    }
    let (table, config) = build_table(cli.command, &config, cli.samples, cli.seed)?;
    let meta = Metadata {
        command: cli.command.name().into(),
        seed: config.setup.seed,
        samples: config.setup.samples,
        config_hash: config_hash(&config),
    };
    emit(&table.render(cli.format, &meta)?, cli.out.as_deref())?;
    if cli.command == Command::Sweep {
        check_sweep_monotone(&table)?;
    }
    Ok(())
}

fn cmd_verify(config: &Config, out: Option<&std::path::Path>) -> Result<(), CliError> {
    let checks = verify::run_checks(&config.correction_table());
    let (text, failed) = verify::report(&checks);
    emit(text.as_bytes(), out)?;
    match failed {
        Some(c) => Err(CliError::Invariant(format!("{}: {}", c.name, c.detail))),
        None => Ok(()),
    }
}

/// SHA-256 of the resolved configuration in canonical TOML.
pub fn config_hash(config: &Config) -> String {
    Sha256::digest(config.to_toml().as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Builds the output table of a run command, with the configuration that
/// produced it (command-line overrides applied).
pub fn build_table(
    command: Command,
    config: &Config,
    samples: Option<u64>,
    seed: Option<u64>,
) -> Result<(Table, Config), CliError> {
    let mut config = config.clone();
    if let Some(s) = samples {
        config.setup.samples = s;
    }
    if let Some(s) = seed {
        config.setup.seed = s;
    }
    let table = match command {
        Command::Ideal => {
            let cfg = SetupConfig {
                order_cutoff: 1,
                overlap_v: [1.0, 1.0],
                pbs_transmission: [1.0, 1.0],
                ..config.setup_config(None, None)?
            };
            fidelity_table(&cfg, &config.labels())?
        }
        Command::Noisy => fidelity_table(&config.setup_config(None, None)?, &config.labels())?,
        Command::Sweep => sweep_table(&config)?,
        Command::Rates => rates_table(&config)?,
        Command::Verify => {
            return Err(CliError::Config("verify produces no table".into()));
        }
    };
    Ok((table, config))
}

pub const FIDELITY_COLUMNS: [&str; 10] = [
    "label",
    "basis",
    "outcome",
    "count",
    "probability",
    "fidelity",
    "stderr",
    "sixfold_probability",
    "above_limit",
    "degenerate",
];

fn fidelity_table(cfg: &SetupConfig, labels: &[TestLabel]) -> Result<Table, CliError> {
    let mut table = Table::new(FIDELITY_COLUMNS.to_vec());
    for &label in labels {
        let report = run_fidelity(cfg, label)?;
        push_report(&mut table, &report);
    }
    Ok(table)
}

fn push_report(table: &mut Table, r: &FidelityReport) {
    for g in &r.groups {
        for i in 0..4 {
            let count = match r.sixfold {
                Sixfold::Sampled { .. } => Value::Int(g.outcome_weights[i] as u64),
                Sixfold::Exact { .. } => Value::Empty,
            };
            table.push(vec![
                Value::Text(r.label.to_string()),
                Value::Text(g.basis_label()),
                Value::Text(g.outcome_label(i)),
                count,
                Value::Fixed(g.fractions[i]),
                Value::Fixed(r.fidelity),
                Value::Fixed(r.standard_error),
                Value::Sci(g.sixfold_probability),
                Value::Bool(threshold_check(r)),
                Value::Bool(r.degenerate),
            ]);
        }
    }
}

pub const SWEEP_COLUMNS: [&str; 8] = [
    "chi",
    "fidelity_a",
    "stderr_a",
    "fidelity_b",
    "stderr_b",
    "fidelity_c",
    "stderr_c",
    "degenerate",
];

fn sweep_table(config: &Config) -> Result<Table, CliError> {
    let base = config.setup_config(None, None)?;
    let sweep = noise_sweep(&base, &config.sweep.chi)?;
    let mut table = Table::new(SWEEP_COLUMNS.to_vec());
    for row in &sweep.rows {
        let mut values = vec![Value::Fixed(row.chi)];
        for label in TestLabel::ALL {
            values.push(Value::Fixed(row.fidelity(label)));
            values.push(Value::Fixed(row.standard_error(label)));
        }
        values.push(Value::Bool(row.reports.iter().any(|r| r.degenerate)));
        table.push(values);
    }
    Ok(table)
}

fn check_sweep_monotone(table: &Table) -> Result<(), CliError> {
    let num = |v: &Value| match v {
        Value::Fixed(x) => *x,
        _ => f64::NAN,
    };
    let mut rows: Vec<&Vec<Value>> = table.rows.iter().collect();
    rows.sort_by(|a, b| num(&a[0]).total_cmp(&num(&b[0])));
    for w in rows.windows(2) {
        for (col, name) in [(1, "A"), (3, "B"), (5, "C")] {
            let se = num(&w[0][col + 1]).hypot(num(&w[1][col + 1]));
            if num(&w[1][col]) > num(&w[0][col]) + 3.0 * se + 1e-9 {
                return Err(CliError::Invariant(format!(
                    "fidelity {name} rises between chi = {} and {}",
                    num(&w[0][0]),
                    num(&w[1][0])
                )));
            }
        }
    }
    Ok(())
}

pub const RATE_COLUMNS: [&str; 6] = [
    "rep_rate",
    "pair_rate_per_source",
    "pair_probability",
    "calibrated_chi",
    "raw_sixfold_per_minute",
    "post_selected_per_minute",
];

fn rates_table(config: &Config) -> Result<Table, CliError> {
    let rc = config.rates();
    let r = rate_estimate(&rc)?;
    let mut table = Table::new(RATE_COLUMNS.to_vec());
    table.push(vec![
        Value::Sci(rc.rep_rate),
        Value::Sci(rc.pair_rate_per_source),
        Value::Sci(r.per_pulse_pair_prob),
        Value::Fixed(calibrated_chi(&rc)?),
        Value::Fixed(r.raw_sixfold_per_minute),
        Value::Fixed(r.post_selected_per_minute),
    ]);
    Ok(table)
}
