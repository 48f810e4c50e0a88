use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use domatic_core::corpus::Generator;

#[derive(Parser, Debug)]
#[command(
    name = "domatic",
    version,
    about = "Decide whether a graph splits into three dominating sets"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Auto,
    Dimacs,
    EdgeList,
}

#[derive(Args, Debug)]
pub struct GraphInput {
    /// Graph file (`-` for stdin).
    pub input: PathBuf,

    /// Graph file format.
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    pub input_format: InputFormat,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide 3-domatic partitionability. Exit 0 on yes, 1 on no.
    Solve(SolveArgs),
    /// List all minimal dominating sets, one per line (1-indexed).
    EnumMds(EnumArgs),
    /// Print the CNF encoding for one minimal dominating set in DIMACS form.
    Encode(EncodeArgs),
    /// Brute-force domatic number for small graphs.
    Oracle(OracleArgs),
    /// Solve a DIMACS CNF file with the built-in DPLL solver.
    Sat(SatArgs),
    /// Run solvers over a generated corpus and emit one record per run.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").args(["exact", "randomized"])))]
pub struct SolveArgs {
    #[command(flatten)]
    pub graph: GraphInput,

    /// Exact pipeline (default).
    #[arg(long)]
    pub exact: bool,

    /// Random walk with restarts.
    #[arg(long)]
    pub randomized: bool,

    /// RNG seed for --randomized.
    #[arg(long, default_value_t = 0, conflicts_with = "exact")]
    pub seed: u64,

    /// Confidence factor of the restart budget.
    #[arg(long, default_value_t = domatic_core::walk::DEFAULT_LAMBDA, conflicts_with = "exact")]
    pub lambda: f64,

    /// Steps per trial [default: 3n].
    #[arg(long, conflicts_with = "exact")]
    pub walk_len: Option<usize>,

    /// Restart budget, overriding --lambda.
    #[arg(long, conflicts_with = "exact")]
    pub max_trials: Option<u64>,

    /// Hard cap on the computed restart budget.
    #[arg(long, default_value_t = domatic_core::walk::DEFAULT_TRIAL_CAP, conflicts_with = "exact")]
    pub trial_cap: u64,

    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Args, Debug)]
pub struct EnumArgs {
    #[command(flatten)]
    pub graph: GraphInput,
}

#[derive(Args, Debug)]
pub struct EncodeArgs {
    #[command(flatten)]
    pub graph: GraphInput,

    /// Position of the minimal dominating set in canonical order.
    #[arg(long, default_value_t = 0)]
    pub index: u64,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[command(flatten)]
    pub graph: GraphInput,

    /// Largest n accepted by the exhaustive partition search.
    #[arg(long, default_value_t = 12)]
    pub oracle_limit: usize,
}

#[derive(Args, Debug)]
pub struct SatArgs {
    /// DIMACS CNF file (`-` for stdin).
    pub input: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BenchMode {
    Exact,
    Randomized,
    Both,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// `cycles`, `gnp:<p>`, `bounded:<max degree>` or `planted:<p>`.
    #[arg(long, default_value = "cycles")]
    pub generator: Generator,

    #[arg(long, default_value_t = 3)]
    pub n_min: usize,

    #[arg(long, default_value_t = 12)]
    pub n_max: usize,

    /// Instances per size (cycles always have one).
    #[arg(long, default_value_t = 1)]
    pub per_n: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, value_enum, default_value_t = BenchMode::Exact)]
    pub mode: BenchMode,

    /// Instances solved concurrently.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}
