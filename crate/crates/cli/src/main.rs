mod commands;
mod report;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use happylab::{Error, Objective};

#[derive(Parser)]
#[command(name = "happylab", version, about = "Solve, relax and round Maximum Happy / Minimum Unhappy Vertices instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and print a report
    Solve(SolveArgs),
    /// Integral optimum against LP optimum on the terminal/pair gap family
    GapTable(GapTableArgs),
    /// Run a named property suite
    Check(CheckArgs),
    /// Reduce a hypergraph multiway cut instance to MUHV
    Reduce(ReduceArgs),
    /// Write a generated instance or hypergraph
    Generate(GenerateArgs),
}

#[derive(Args)]
#[group(required = true, multiple = true)]
struct Source {
    /// Instance file in happygraph format
    #[arg(long, conflicts_with_all = ["gen", "config"])]
    input: Option<PathBuf>,
    /// Generator spec, e.g. gap:k=3,wt=1,wb=0 or rand:n=8,k=3,p=0.4
    #[arg(long)]
    gen: Option<String>,
    /// Flat key = value file with a `gen = <name>` line
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Exact,
    Greedy,
    RoundRandom,
    RoundDerand,
}

#[derive(Clone, Copy, Default)]
enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct FormatArgs {
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

impl FormatArgs {
    fn format(&self) -> Format {
        match (self.json, self.csv) {
            (true, _) => Format::Json,
            (_, true) => Format::Csv,
            _ => Format::Text,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_parser = parse_objective)]
    problem: Objective,
    #[arg(long, value_enum, default_value = "exact")]
    algo: Algo,
    /// Seed for round-random and for generators without their own seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    format: FormatArgs,
    /// Also brute-force the optimum
    #[arg(long)]
    with_exact: bool,
    /// Also solve the LP relaxation
    #[arg(long)]
    with_lp: bool,
    /// Write the relaxation in LP text format
    #[arg(long)]
    export_lp: Option<PathBuf>,
    /// Include wall-clock time (reports are then no longer reproducible)
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct GapTableArgs {
    #[arg(long, value_parser = parse_objective)]
    problem: Objective,
    #[arg(long, default_value_t = 2)]
    k_min: usize,
    #[arg(long, default_value_t = 5)]
    k_max: usize,
    #[arg(long, default_value = "1")]
    wt: String,
    #[arg(long, default_value = "0")]
    wb: String,
    #[command(flatten)]
    format: FormatArgs,
}

#[derive(Args)]
struct CheckArgs {
    /// boundary, submodular, lovasz-lp-mhv, lovasz-lp-muhv, rounding-guarantee, reduction or all
    suite: String,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Where failing instances are written
    #[arg(long, default_value = ".")]
    dump_dir: PathBuf,
    /// Largest n enumerated exhaustively by the set-function suites (0 to skip)
    #[arg(long, default_value_t = 5)]
    exhaustive_n: usize,
}

#[derive(Args)]
struct ReduceArgs {
    /// Hypergraph in happyhyper format
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// Map file (default: OUTPUT.map)
    #[arg(long)]
    map: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    /// gap, rand, appxc or hyper spec
    #[arg(long, required_unless_present = "config")]
    gen: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file (default: standard output)
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_objective(s: &str) -> Result<Objective, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// An error with its process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn property(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::BudgetExceeded { .. } | Error::HyperedgeBudgetExceeded { .. } => 3,
            Error::SolverFailure(_) | Error::InvariantViolation(_) => 1,
            _ => 2,
        };
        Self { code, message: err.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => commands::solve(args),
        Command::GapTable(args) => commands::gap_table(args),
        Command::Check(args) => commands::check(args),
        Command::Reduce(args) => commands::reduce(args),
        Command::Generate(args) => commands::generate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("happylab: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
