//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "hypercover",
    about = "Sample hyperbolic random graphs, compute vertex covers, and measure disk structure",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample a graph and write edge list + coordinate sidecar
    Generate(GenerateArgs),
    /// Run cover algorithms and report sizes, decompositions, and times
    Solve(SolveArgs),
    /// Compare algorithms against the exact optimum (ratios, relative error)
    Evaluate(EvaluateArgs),
    /// Measure disk regions and sector runs against their predictors
    Diagnose(DiagnoseArgs),
    /// Find the offset constant C for a target average degree
    Calibrate(CalibrateArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    /// Exactly n vertices
    Fixed,
    /// Poisson-distributed vertex count with mean n
    Poisson,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuilderArg {
    /// Check all vertex pairs
    Naive,
    /// Band/cell grid with exact confirmation
    Accelerated,
}

/// Model parameters for commands that sample graphs.
#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// Number of vertices (or the Poisson mean)
    #[arg(long)]
    pub n: Option<usize>,
    /// Radial dispersion, in (1/2, 1); tail exponent is 2*alpha + 1
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Offset constant: disk radius is 2 ln(n) + C
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// Calibrate C to this average degree instead of passing --c
    #[arg(long, conflicts_with = "c")]
    pub avg_degree: Option<f64>,
    /// Vertex count model
    #[arg(long, value_enum, default_value = "fixed")]
    pub mode: ModeArg,
    /// Edge construction
    #[arg(long, value_enum, default_value = "accelerated")]
    pub edge_builder: BuilderArg,
}

/// Seed selection: one seed or a comma-separated list.
#[derive(Args, Debug, Clone)]
pub struct SeedArgs {
    /// Single seed
    #[arg(long, conflicts_with = "seeds")]
    pub seed: Option<u64>,
    /// Comma-separated seed list, e.g. 1,2,3
    #[arg(long, value_delimiter = ',')]
    pub seeds: Vec<u64>,
}

impl SeedArgs {
    pub fn list(&self) -> Vec<u64> {
        if let Some(s) = self.seed {
            vec![s]
        } else if self.seeds.is_empty() {
            vec![0]
        } else {
            self.seeds.clone()
        }
    }
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub seeds: SeedArgs,
    /// Output base path; writes `<base>.edges` and `<base>.coords`
    /// (suffixed `-s<seed>` when several seeds are given)
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// Edge-list file to solve (otherwise a graph is generated from the
    /// model arguments)
    #[arg(long)]
    pub input: Vec<PathBuf>,
    /// Coordinate sidecar for --input (needed by adapted-radius)
    #[arg(long)]
    pub coords: Option<PathBuf>,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub seeds: SeedArgs,
    /// Comma-separated algorithms: standard, adapted-degree,
    /// adapted-radius, exact
    #[arg(long, value_delimiter = ',', default_value = "standard,adapted-degree")]
    pub algorithms: Vec<String>,
    /// Tuning parameter translated into the component-size cap
    #[arg(long)]
    pub tau: Option<f64>,
    /// Explicit component-size cap for adapted-degree (overrides --tau)
    #[arg(long)]
    pub component_limit: Option<usize>,
    /// Exact-solver wall-clock budget in seconds
    #[arg(long, default_value_t = 60.0)]
    pub time_limit: f64,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub input: Vec<PathBuf>,
    #[arg(long)]
    pub coords: Option<PathBuf>,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub seeds: SeedArgs,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "standard,adapted-degree,exact"
    )]
    pub algorithms: Vec<String>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub component_limit: Option<usize>,
    #[arg(long, default_value_t = 60.0)]
    pub time_limit: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DiagnoseArgs {
    #[arg(long)]
    pub input: Vec<PathBuf>,
    /// Coordinate sidecar for --input (diagnostics always need
    /// coordinates)
    #[arg(long)]
    pub coords: Option<PathBuf>,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub seeds: SeedArgs,
    /// Tuning parameter of the discretization
    #[arg(long, default_value_t = 1.0)]
    pub tau: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CalibrateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub alpha: f64,
    /// Target average degree
    #[arg(long)]
    pub avg_degree: f64,
    #[command(flatten)]
    pub seeds: SeedArgs,
}
