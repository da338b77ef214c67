//! Argument definitions and dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use depmeter_core::{ConvexPhi, MeasureId, OrderingPolicy};

use crate::commands;
use crate::error::CliResult;
use crate::input::WeightKind;
use crate::output::OutputFormat;

#[derive(Debug, Parser)]
#[command(name = "depmeter", version, about = "Nonsymmetric dependence measures for discrete random variables")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate dependence measures on a table, samples, a group tensor or a triple
    Compute(ComputeArgs),
    /// Check the circle example against its closed forms
    Verify(VerifyArgs),
    /// Check the data processing inequality on chains
    Dpi(DpiArgs),
    /// Emit the circle example tables and closed-form values
    Example(ExampleArgs),
    /// Permutation p-value of a measure on raw samples
    Ptest(PtestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputKind {
    /// Sparse `i_label,j_label,weight` table
    Table,
    /// One observation per row; labels from two columns
    Samples,
    /// Long-form group tensor `x1..xd,y1..ye,weight`
    Multi,
    /// `x,y,z,weight` rows for the conditional measure
    Triple,
}

fn parse_order(s: &str) -> Result<OrderingPolicy, String> {
    s.parse().map_err(|e: depmeter_core::Error| e.to_string())
}

fn parse_phi(s: &str) -> Result<ConvexPhi, String> {
    s.parse().map_err(|e: depmeter_core::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Input CSV file
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = InputKind::Table)]
    pub kind: InputKind,
    /// Ordering of each support: numeric, lex or given
    #[arg(long, default_value = "numeric", value_parser = parse_order)]
    pub order: OrderingPolicy,
    #[arg(long, value_enum, default_value_t)]
    pub weights: WeightKind,
    /// Conditioning column (samples, triple)
    #[arg(long)]
    pub x_col: Option<String>,
    /// Target column (samples, triple)
    #[arg(long)]
    pub y_col: Option<String>,
    /// Column playing Z (triple)
    #[arg(long)]
    pub z_col: Option<String>,
    /// Columns of the conditioning group (multi)
    #[arg(long, value_delimiter = ',')]
    pub x_cols: Vec<String>,
    /// Columns of the target group (multi)
    #[arg(long, value_delimiter = ',')]
    pub y_cols: Vec<String>,
    /// JSON file `{"x": [...], "y": [...]}` naming the groups (multi)
    #[arg(long, conflicts_with_all = ["x_cols", "y_cols"])]
    pub axes: Option<PathBuf>,
    #[arg(long, default_value = "weight")]
    pub weight_col: String,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Measures: mi, linfoot, tau2, phi, renyi, tsallis, limit, bhm
    #[arg(short, long = "measure", value_delimiter = ',', default_value = "tau2")]
    pub measures: Vec<MeasureId>,
    /// Order for renyi and tsallis; repeat for several
    #[arg(long)]
    pub alpha: Vec<f64>,
    /// Convex function for the phi measure: square, abs, power:<p>
    #[arg(long, default_value = "square", value_parser = parse_phi)]
    pub phi: ConvexPhi,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Values of n, comma separated
    #[arg(long = "n", value_delimiter = ',', default_value = "2,3,5,10,100")]
    pub n: Vec<u64>,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct DpiArgs {
    /// Number of random chains
    #[arg(long, conflicts_with_all = ["source", "m_xy", "m_yz"], required_unless_present = "source")]
    pub random: Option<usize>,
    #[arg(long, env = "DEPMETER_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "square", value_parser = parse_phi)]
    pub phi: ConvexPhi,
    /// Use groups of variables
    #[arg(long)]
    pub multivariate: bool,
    /// Largest support size in random bivariate chains
    #[arg(long, default_value_t = 8)]
    pub max_size: usize,
    /// Largest number of axes per group in random group chains
    #[arg(long, default_value_t = 3)]
    pub max_axes: usize,
    /// Largest axis length in random group chains
    #[arg(long, default_value_t = 3)]
    pub max_axis: usize,
    /// Law of X, one row or one column
    #[arg(long, requires_all = ["m_xy", "m_yz"])]
    pub source: Option<PathBuf>,
    /// Dense transition matrix from X to Y
    #[arg(long)]
    pub m_xy: Option<PathBuf>,
    /// Dense transition matrix from Y to Z
    #[arg(long)]
    pub m_yz: Option<PathBuf>,
    /// Axis lengths of X when the files describe group chains
    #[arg(long, value_delimiter = ',')]
    pub x_shape: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub y_shape: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub z_shape: Vec<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct ExampleArgs {
    #[arg(long = "n")]
    pub n: u64,
    /// Write the tables, samples and oracle.json here
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct PtestArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(short, long, default_value = "tau2")]
    pub measure: MeasureId,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value = "square", value_parser = parse_phi)]
    pub phi: ConvexPhi,
    #[arg(long, default_value_t = 999)]
    pub permutations: usize,
    #[arg(long, env = "DEPMETER_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

/// What a command produced: text for stdout, and whether a checked
/// property failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub violation: bool,
}

pub fn run(cli: Cli) -> CliResult<Outcome> {
    match cli.command {
        Command::Compute(a) => commands::compute::run(&a),
        Command::Verify(a) => commands::verify::run(&a),
        Command::Dpi(a) => commands::dpi::run(&a),
        Command::Example(a) => commands::example::run(&a),
        Command::Ptest(a) => commands::ptest::run(&a),
    }
}
