//! Command-line front end: single reports, parameter sweeps, the critical
//! parameter table and a self-verification run.

pub mod commands;
pub mod format;
pub mod verify;

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wernerlike_core::{Error, NamedState, OptimizerConfig, PureState, StateSpec};

pub use commands::{cmd_report, cmd_sweep, cmd_table1, SweepSpec, Table1Row};
pub use verify::{cmd_verify, CheckResult};

#[derive(Debug, Parser)]
#[command(
    name = "wernerlike",
    version,
    about = "Entanglement and discord of Werner-like two-qubit states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form quantities (and optionally the numerical discord) at one p
    Report(ReportArgs),
    /// Quantities over a grid of mixing parameters
    Sweep(SweepArgs),
    /// Critical, intersection and CHSH-violation parameters of the example states
    Table1(Table1Args),
    /// Cross-check closed forms against numerical minimization
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// `named:<id>` or eight comma-separated reals (re, im of z1..z4)
    #[arg(long, allow_hyphen_values = true)]
    pub state: String,
    /// Rescale raw amplitudes to unit norm instead of rejecting them
    #[arg(long)]
    pub normalize: bool,
    /// Phases (radians) for `named:psi6`
    #[arg(long, allow_negative_numbers = true)]
    pub phi1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub phi2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub phi3: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub phi4: Option<f64>,
}

impl StateArgs {
    pub fn spec(&self) -> Result<StateSpec, CliError> {
        let spec: StateSpec = self.state.parse()?;
        let phis = [self.phi1, self.phi2, self.phi3, self.phi4];
        if phis.iter().all(Option::is_none) {
            return Ok(spec);
        }
        match spec {
            StateSpec::Named(NamedState::Psi6(given)) if given == [0.0; 4] => Ok(StateSpec::Named(
                NamedState::Psi6(phis.map(|p| p.unwrap_or(0.0))),
            )),
            StateSpec::Named(NamedState::Psi6(_)) => Err(CliError::Usage(
                "psi6 phases given both inline and through --phi1..--phi4".into(),
            )),
            _ => Err(CliError::Usage(
                "--phi1..--phi4 only apply to --state named:psi6".into(),
            )),
        }
    }

    pub fn resolve(&self) -> Result<PureState, CliError> {
        Ok(self.spec()?.resolve(self.normalize)?)
    }
}

#[derive(Debug, Args)]
pub struct OptimizerArgs {
    /// Grid points per measurement angle
    #[arg(long)]
    pub grid: Option<usize>,
    /// Seed for random states and restarts
    #[arg(long)]
    pub seed: Option<u64>,
    /// JSON file with optimizer settings; --grid and --seed override it
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl OptimizerArgs {
    pub fn config(&self) -> Result<OptimizerConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
                serde_json::from_str(&text).map_err(|e| {
                    CliError::Usage(format!("invalid config {}: {e}", path.display()))
                })?
            }
            None => OptimizerConfig::default(),
        };
        if let Some(g) = self.grid {
            cfg.grid_n = g;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub p: f64,
    /// Also compute the discord by numerical minimization
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, allow_negative_numbers = true, default_value_t = -1.0 / 3.0)]
    pub p_min: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub p_max: f64,
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
    /// Add a numerically minimized discord column
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Number of random pure states
    #[arg(long, default_value_t = 50)]
    pub n_states: usize,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad input; exit status 2.
    Usage(String),
    /// A check or computation failed; exit status 1.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::UnknownState { .. }
            | Error::MixingOutOfRange { .. }
            | Error::NotNormalized { .. }
            | Error::ZeroNorm
            | Error::OutOfDomain { .. }
            | Error::NonFinite { .. }
            | Error::Config(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(format!("write failed: {e}"))
    }
}

/// Runs a parsed command line, writing results to `out`.
pub fn run(cli: &Cli, out: &mut dyn std::io::Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Report(args) => {
            let psi = args.state.resolve()?;
            let cfg = args.oracle.then(|| args.optimizer.config()).transpose()?;
            let report = cmd_report(&psi, args.p, cfg.as_ref())?;
            commands::write_report(out, &report, args.format)
        }
        Command::Sweep(args) => {
            let spec = SweepSpec {
                state: args.state.spec()?,
                normalize: args.state.normalize,
                p_min: args.p_min,
                p_max: args.p_max,
                steps: args.steps,
                with_oracle: args.oracle,
                config: args.optimizer.config()?,
            };
            let rows = cmd_sweep(&spec)?;
            commands::write_sweep(out, &rows, spec.with_oracle, args.format)
        }
        Command::Table1(args) => {
            let rows = cmd_table1(&args.optimizer.config()?)?;
            commands::write_table1(out, &rows, args.format)
        }
        Command::Verify(args) => {
            let cfg = args.optimizer.config()?;
            let results = cmd_verify(args.n_states, &cfg)?;
            verify::write_summary(out, &results)?;
            match results.iter().find(|r| !r.passed()) {
                Some(first) => Err(CliError::Failure(format!(
                    "verification failed: {}",
                    first.describe_failure()
                ))),
                None => Ok(()),
            }
        }
    }
}
