use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "rdspread",
    version,
    about = "Spectra, spread and bounds of generalized reciprocal distance matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; defaults to csv for `sweep` and json otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,

    /// Comparison tolerance for bounds, equality flags, eigenvalue grouping and
    /// closed-form checks.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues, spread, Harary index and reciprocal transmissions.
    Spectrum {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
    },
    /// Evaluate every applicable bound at one alpha.
    Bounds {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
    },
    /// Evaluate spread bounds over a grid of alpha values.
    Sweep {
        #[command(flatten)]
        input: GraphInput,
        /// `start:stop:step`, stop included.
        #[arg(long)]
        alphas: String,
        /// Also emit the largest-eigenvalue and eigen-shift bounds.
        #[arg(long)]
        all_bounds: bool,
    },
    /// Compare closed-form spectra against the eigensolver over a parameter range.
    VerifyFamily {
        #[arg(long, value_enum)]
        family: VerifyFamilyName,
        /// Largest n (complete), a + b (complete_bipartite) or m + n (double_star);
        /// defaults to 12, 12 and 10.
        #[arg(long)]
        max_size: Option<usize>,
        /// `start:stop:step`, stop included.
        #[arg(long, default_value = "0:0.75:0.25")]
        alphas: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum FamilyName {
    Complete,
    CompleteBipartite,
    Path,
    Cycle,
    DoubleStar,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum VerifyFamilyName {
    Complete,
    CompleteBipartite,
    DoubleStar,
}

#[derive(Debug, Clone, Args)]
#[group(skip)]
#[command(group(ArgGroup::new("source").required(true).multiple(false)))]
pub struct GraphInput {
    /// Inline graph6 string.
    #[arg(long, group = "source")]
    pub graph6: Option<String>,
    /// Edge list file: one `u v` pair per line, optional leading vertex count.
    #[arg(long, group = "source")]
    pub edgelist: Option<PathBuf>,
    #[arg(long, value_enum, group = "source")]
    pub family: Option<FamilyName>,
    /// Vertex count (complete, path, cycle, random) or leaves of the second centre (double_star).
    #[arg(long)]
    pub n: Option<usize>,
    /// First part size (complete_bipartite).
    #[arg(long)]
    pub a: Option<usize>,
    /// Second part size (complete_bipartite).
    #[arg(long)]
    pub b: Option<usize>,
    /// Leaves of the first centre (double_star).
    #[arg(long)]
    pub m: Option<usize>,
    /// Edge probability (random).
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
