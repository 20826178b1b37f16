//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

const DEFAULT_RULE: &str = "blue=[-inf,0] vertical=blue";

/// Exact and Monte Carlo experiments on 2-colored crossing quadrilaterals.
///
/// Coloring rules assign BLUE to segments whose slope lies in a rational
/// interval, e.g. `"blue=[-inf,0] vertical=blue"` (the default) or
/// `"blue=(-1,1) vertical=red"`. Endpoints may be integers, fractions like
/// `1/2`, powers of two like `2^-16`, or `-inf`/`inf`; brackets close an
/// endpoint, parentheses leave it open.
#[derive(Debug, Parser)]
#[command(name = "quadchroma", version, about)]
pub struct Cli {
    /// Worker threads (default: QUADCHROMA_THREADS, then all cores).
    /// Results never depend on this value.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Confirm runs estimated above 10^10 quadruple tests.
    #[arg(long, global = true)]
    pub yes: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact census of same-colored crossings pinned to a w-by-h box.
    ExactBox(ExactBoxArgs),
    /// Exact convex and same-colored-crossing totals over an m-by-m grid.
    ExactGrid(ExactGridArgs),
    /// Monte Carlo estimates from uniform random points in the unit square.
    Mc(McArgs),
    /// Evaluate many coloring rules on one shared sample set.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoxMethod {
    /// Enumerate 4-subsets whose bounding box is exactly the target box.
    Direct,
    /// Inclusion-exclusion over contained-in-box counts (total only).
    Ie,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridMethodArg {
    /// Enumerate every 4-subset of the grid.
    Direct,
    /// Sum per-box censuses weighted by placement counts.
    #[value(name = "per-box")]
    PerBox,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct ExactBoxArgs {
    /// Box width (lattice spans 0..=w horizontally).
    #[arg(long)]
    pub w: i64,

    /// Box height (lattice spans 0..=h vertically).
    #[arg(long)]
    pub h: i64,

    /// Also report the census split by number of box corners used and the
    /// two-corner refinement.
    #[arg(long)]
    pub breakdown: bool,

    #[arg(long, value_enum, default_value_t = BoxMethod::Direct)]
    pub method: BoxMethod,

    /// Coloring rule.
    #[arg(long, default_value = DEFAULT_RULE)]
    pub rule: String,
}

#[derive(Debug, Args)]
pub struct ExactGridArgs {
    /// Grid parameter: points are {0..m} x {0..m}.
    #[arg(long)]
    pub m: i64,

    #[arg(long, value_enum, default_value_t = GridMethodArg::Direct)]
    pub method: GridMethodArg,

    /// Coloring rule.
    #[arg(long, default_value = DEFAULT_RULE)]
    pub rule: String,
}

#[derive(Debug, Args)]
pub struct McArgs {
    /// Number of random quadruples (or graph trials, see --n-points).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,

    /// RNG seed. Together with --stream this fully determines the draw.
    #[arg(long)]
    pub seed: u64,

    /// RNG stream selector.
    #[arg(long, default_value_t = 0)]
    pub stream: u64,

    /// Coloring rule.
    #[arg(long, default_value = DEFAULT_RULE)]
    pub rule: String,

    /// Switch to graph mode: per trial, draw this many points and count
    /// crossings and same-colored crossings of the complete drawing.
    #[arg(long = "n-points", value_parser = clap::value_parser!(u32).range(4..=64))]
    pub n_points: Option<u32>,

    /// Trial count for graph mode (default: --samples).
    #[arg(long, requires = "n_points")]
    pub trials: Option<u64>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("rule_source").required(true))]
pub struct SweepArgs {
    /// Number of shared random quadruples evaluated under every rule.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,

    /// RNG seed.
    #[arg(long)]
    pub seed: u64,

    /// RNG stream selector.
    #[arg(long, default_value_t = 0)]
    pub stream: u64,

    /// File with one rule per line; '#' starts a comment. The first rule is
    /// the baseline.
    #[arg(long = "rules-file", group = "rule_source")]
    pub rules_file: Option<PathBuf>,

    /// Sweep `blue=[-inf,t]` for steps+1 endpoints t from lo to hi
    /// (format lo:hi:steps), compared against the default-rule baseline.
    #[arg(long, group = "rule_source", allow_hyphen_values = true)]
    pub grid: Option<String>,

    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    /// Write the report or CSV to a file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
