//! `evaplab` command line. Exit status: 0 on success, 1 on a usage or
//! configuration error, 2 when a verification finds a margin violation.

pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use evaplab_core::register::{Capacity, DEFAULT_CAPACITY};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::commands::{execute, Units};
use crate::config::{Command, RunConfig};

pub const CAPACITY_ENV: &str = "EVAPLAB_CAPACITY";

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Usage(String),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

#[derive(Parser, Debug)]
#[command(name = "evaplab", version, about = "Entropy accounting for evaporating black holes")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Run whatever command a config file names.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        output_dir: Option<PathBuf>,
        #[arg(long)]
        bits: bool,
    },
    /// Analytic or Monte-Carlo Page curve to curve.csv.
    PageCurve(PageCurveArgs),
    /// Theorem contradiction sweep to report.json and report.csv.
    Paradox(ParadoxArgs),
    /// Sampled entropy-inequality check to verify.json.
    NocommVerify(NocommArgs),
    /// Lattice mutual information against separation to decay.csv and fit.json.
    LatticeDecay(LatticeArgs),
    /// Haar uniformity diagnostics to verify.json.
    HaarVerify(HaarArgs),
}

#[derive(Args, Debug, Default)]
struct Common {
    /// JSON run configuration; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    output_dir: Option<PathBuf>,
    /// Dominance threshold.
    #[arg(long)]
    theta: Option<f64>,
    /// Print the summary in bits (files stay in qunats).
    #[arg(long)]
    bits: bool,
}

#[derive(Args, Debug, Serialize)]
struct PageCurveArgs {
    #[command(flatten)]
    #[serde(skip)]
    common: Common,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    s_bh: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    s_matter: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    steps: Option<usize>,
    /// Monte-Carlo mode on this many qubits.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    n_evap: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    n_matter_ref: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    trials: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
struct ParadoxArgs {
    #[command(flatten)]
    #[serde(skip)]
    common: Common,
    /// t1, t2, t1-holographic, t1-matter, t2-matter or pagetime-minimal.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    theorem: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    s_bh: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    s_matter: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    epsilon: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    eta: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    log_dim_b: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    steps: Option<usize>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    #[serde(skip_serializing_if = "Option::is_none")]
    stretched_horizon: Option<bool>,
}

#[derive(Args, Debug, Serialize)]
struct NocommArgs {
    #[command(flatten)]
    #[serde(skip)]
    common: Common,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<usize>,
    /// eq2 (arbitrary unitaries) or eq6 (non-signaling circuits).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct LatticeArgs {
    #[command(flatten)]
    #[serde(skip)]
    common: Common,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    n_sites: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    mass: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    self_freq: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    coupling: Option<f64>,
    /// open or periodic.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    boundary: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    block_size: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    d_max: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
struct HaarArgs {
    #[command(flatten)]
    #[serde(skip)]
    common: Common,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    bloch_samples: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    unitary_dim: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    unitary_samples: Option<usize>,
}

fn overrides<T: Serialize>(args: &T) -> Map<String, Value> {
    match serde_json::to_value(args).expect("flags serialize") {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

fn resolve(command: Command, common: &Common, flags: Map<String, Value>) -> Result<RunConfig, CliError> {
    let mut cfg = match &common.config {
        Some(path) => {
            let cfg = RunConfig::load(path)?;
            if cfg.command != command {
                return Err(CliError::Usage(format!(
                    "config.command: file is for `{}`, not `{}`",
                    cfg.command.name(),
                    command.name()
                )));
            }
            cfg
        }
        None => RunConfig::new(command),
    };
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(dir) = &common.output_dir {
        cfg.output_dir = dir.clone();
    }
    if let Some(theta) = common.theta {
        cfg.theta = theta;
    }
    cfg.merge_params(flags)?;
    Ok(cfg)
}

/// Amplitude budget, from `EVAPLAB_CAPACITY` when set.
pub fn capacity_from(value: Option<&str>) -> Result<Capacity, CliError> {
    match value {
        None => Ok(Capacity(DEFAULT_CAPACITY)),
        Some(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Capacity(n)),
            _ => Err(CliError::Usage(format!(
                "{CAPACITY_ENV}: expected a positive integer, got `{v}`"
            ))),
        },
    }
}

fn dispatch(sub: Sub) -> Result<(RunConfig, bool), CliError> {
    Ok(match sub {
        Sub::Run { config, output_dir, bits } => {
            let mut cfg = RunConfig::load(&config)?;
            if let Some(dir) = output_dir {
                cfg.output_dir = dir;
            }
            (cfg, bits)
        }
        Sub::PageCurve(a) => (resolve(Command::PageCurve, &a.common, overrides(&a))?, a.common.bits),
        Sub::Paradox(a) => (resolve(Command::Paradox, &a.common, overrides(&a))?, a.common.bits),
        Sub::NocommVerify(a) => (resolve(Command::NocommVerify, &a.common, overrides(&a))?, a.common.bits),
        Sub::LatticeDecay(a) => (resolve(Command::LatticeDecay, &a.common, overrides(&a))?, a.common.bits),
        Sub::HaarVerify(a) => (resolve(Command::HaarVerify, &a.common, overrides(&a))?, a.common.bits),
    })
}

/// Parses `args`, runs, prints, and returns the process exit status.
pub fn run_from<I, T>(args: I, capacity_env: Option<&str>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = capacity_from(capacity_env).and_then(|cap| {
        let (cfg, bits) = dispatch(cli.command)?;
        let units = if bits { Units::Bits } else { Units::Qunats };
        execute(&cfg, cap, units)
    });
    match result {
        Ok(outcome) => {
            print!("{}", outcome.summary);
            if outcome.violation {
                eprintln!("verification failed: margin violation");
                2
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
