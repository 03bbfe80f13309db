//! `assort`: global, local and multiscale assortativity of node attributes,
//! degree-preserving null models, and synthetic block networks.

mod cmds;
mod error;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "assort",
    version,
    about = "Assortativity analysis of networks: global coefficients, per-node multiscale \
             profiles, null-model ensembles and synthetic benchmark graphs",
    propagate_version = true
)]
struct Cli {
    /// Cap worker threads for per-node sweeps (defaults to all cores)
    #[arg(long, global = true, env = "ASSORT_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Global assortativity of one attribute column
    Global(GlobalArgs),
    /// Per-node local assortativity (fixed restart strength or multiscale)
    Local(LocalArgs),
    /// Null distribution of multiscale assortativity over degree- and
    /// assortativity-preserving rewirings
    Null(NullArgs),
    /// Generate a synthetic block network (named preset or JSON spec)
    Generate(GenerateArgs),
    /// Correlate two per-node result files
    Compare(CompareArgs),
    /// Weighted histogram and summary statistics of a per-node result file
    Summary(SummaryArgs),
}

/// Graph + attribute inputs shared by the analysis commands.
#[derive(Args)]
struct InputArgs {
    /// Edge-list file: one whitespace-separated node pair per line, `#` comments
    #[arg(long)]
    edges: PathBuf,
    /// Attribute CSV with a leading `node` column; empty fields are missing
    #[arg(long)]
    attrs: PathBuf,
    /// Name of the attribute column to analyze
    #[arg(long)]
    column: String,
    /// Treat edges as directed arcs
    #[arg(long)]
    directed: bool,
    /// Drop self-loops and duplicate edges instead of rejecting the file
    #[arg(long)]
    lenient: bool,
    /// Force the column to be read as scalar
    #[arg(long, conflicts_with = "categorical")]
    scalar: bool,
    /// Force the column to be read as categorical
    #[arg(long)]
    categorical: bool,
}

/// Convergence controls for the walk computations.
#[derive(Args)]
struct WalkerArgs {
    /// L1 convergence tolerance of the fixed-alpha power method
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Iteration cap for the fixed-alpha power method
    #[arg(long, default_value_t = 100_000)]
    max_iter: usize,
    /// Truncation cap for the multiscale series
    #[arg(long, default_value_t = 10_000)]
    eta_max: usize,
    /// Per-term stopping threshold for the multiscale series
    #[arg(long, default_value_t = 1e-9)]
    multi_tol: f64,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct GlobalArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here (with a manifest) instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct LocalArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Restart-walk continuation probability in [0, 1]
    #[arg(long, conflicts_with = "multiscale")]
    alpha: Option<f64>,
    /// Integrate over all restart strengths (the default)
    #[arg(long)]
    multiscale: bool,
    #[command(flatten)]
    walker: WalkerArgs,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write per-node results here (with a manifest) instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct NullArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Number of rewired samples to pool
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Histogram bin count
    #[arg(long, default_value_t = 50)]
    bins: usize,
    /// Proposals between emitted samples (default 10 * m)
    #[arg(long)]
    swaps_per_sample: Option<usize>,
    /// Proposals before the first sample (default 100 * m)
    #[arg(long)]
    burn_in: Option<usize>,
    /// Initial annealing temperature
    #[arg(long, default_value_t = 1.0)]
    t0: f64,
    /// Floor temperature
    #[arg(long, default_value_t = 1e-3)]
    t_min: f64,
    /// Geometric cooling factor per proposal
    #[arg(long, default_value_t = 0.9999)]
    cooling: f64,
    /// RNG seed for the sampler
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write each sampled graph as `<prefix>.NNN.edges`
    #[arg(long)]
    save_samples: Option<PathBuf>,
    #[command(flatten)]
    walker: WalkerArgs,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the histogram here (with a manifest) instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    /// Name of a built-in preset (see --list)
    #[arg(long, conflicts_with = "spec")]
    preset: Option<String>,
    /// JSON block specification: group_sizes, block_edges, type_of_group
    #[arg(long)]
    spec: Option<PathBuf>,
    /// RNG seed for edge placement (overrides a seed from the spec file)
    #[arg(long)]
    seed: Option<u64>,
    /// Write `<prefix>.edges`, `<prefix>.attrs.csv` and a manifest
    #[arg(long, required_unless_present = "list")]
    output_prefix: Option<PathBuf>,
    /// List the available presets and exit
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct CompareArgs {
    /// First per-node CSV (node,r,z)
    a: PathBuf,
    /// Second per-node CSV (node,r,z)
    b: PathBuf,
    /// Weight every comparable node equally instead of by min(z_a, z_b)
    #[arg(long)]
    unweighted: bool,
    /// Write the report here (with a manifest) instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SummaryArgs {
    /// Per-node CSV (node,r,z)
    local: PathBuf,
    /// Histogram bin count
    #[arg(long, default_value_t = 50)]
    bins: usize,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the histogram here (with a manifest) instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        assort_core::par::configure_threads(jobs);
    }
    let result = match cli.command {
        Command::Global(args) => cmds::global(args),
        Command::Local(args) => cmds::local(args),
        Command::Null(args) => cmds::null(args),
        Command::Generate(args) => cmds::generate(args),
        Command::Compare(args) => cmds::compare(args),
        Command::Summary(args) => cmds::summary(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
