use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qtm", version, about = "Halt-qubit machine scenarios and a bounded Turing machine engine")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve one state and one observable in both pictures.
    Qubit(QubitArgs),
    /// Run a scenario in both pictures and classify it.
    Scenario(ScenarioArgs),
    /// Classify a scenario over a range of rotation angles.
    Sweep(SweepArgs),
    /// Run a machine file on a tape.
    #[command(name = "tm-run")]
    TmRun(TmRunArgs),
    /// Run the self-application demo against a candidate decider.
    #[command(name = "tm-diag")]
    TmDiag(TmDiagArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScenarioName {
    P2,
    P3,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct QubitArgs {
    /// Rotation angle in radians (`pi`, `pi/2`, `3pi/2` also accepted).
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
    /// State as `x,y,z`.
    #[arg(long, allow_hyphen_values = true)]
    pub input: Option<String>,
    /// Observable as `x,y,z`.
    #[arg(long, allow_hyphen_values = true)]
    pub observable: Option<String>,
    /// Rotation axis as `x,y,z`; defaults to y.
    #[arg(long, allow_hyphen_values = true)]
    pub axis: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    /// p2 (external state) or p3 (the machine's own observable).
    #[arg(value_enum)]
    pub scenario: Option<ScenarioName>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
    /// `x,y,z` for p2, or `self` for p3.
    #[arg(long, allow_hyphen_values = true)]
    pub input: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(value_enum)]
    pub scenario: Option<ScenarioName>,
    /// First angle.
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub from: String,
    /// Last angle (inclusive).
    #[arg(long, allow_hyphen_values = true, default_value = "2pi")]
    pub to: String,
    /// Angle increment; must be positive.
    #[arg(long, allow_hyphen_values = true, default_value = "pi/180")]
    pub step: String,
    #[arg(long, allow_hyphen_values = true)]
    pub input: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TmRunArgs {
    /// Machine file in the rule DSL.
    #[arg(long)]
    pub machine: PathBuf,
    /// Initial tape, one symbol per character, head on the first.
    #[arg(long, default_value = "")]
    pub tape: String,
    /// Step budget.
    #[arg(long, default_value_t = qtm_core::tm::DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Emit one JSON line per step before the outcome.
    #[arg(long)]
    pub trace: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DeciderName {
    AlwaysHalt,
    AlwaysLoop,
    BudgetRunner,
}

#[derive(Debug, Args)]
pub struct TmDiagArgs {
    #[arg(long, value_enum, default_value = "budget-runner")]
    pub decider: DeciderName,
    /// Simulation budget of the budget-runner decider (default: budget / 10).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub decider_budget: Option<u64>,
    /// Observation budget.
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Corpus machine files; defaults to the committed machines.
    #[arg(long)]
    pub machine: Vec<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}
