use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "skein", version, about = "Skein algebra, TQFT trace and pillowcase quantization checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Seed for random points and Monte Carlo sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Monte Carlo sample count.
    #[arg(long, global = true, default_value_t = 200_000)]
    pub samples: usize,
    /// Pointwise or exact-comparison tolerance; each command has its own default.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Worker threads. Results do not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, default_value = ".skein-cache")]
    pub cache_dir: PathBuf,
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multiply two skein elements read from JSON files.
    SkeinMul(SkeinMulArgs),
    /// Check the isomorphism with the twisted algebra on all basis pairs.
    IsoSweep(IsoSweepArgs),
    /// Trace sums over admissible colorings and their convergence.
    TqftTrace(TqftTraceArgs),
    /// The limit of normalized traces, by Monte Carlo and quadrature.
    TqftLimit(TqftLimitArgs),
    /// Checks of the pillowcase operators.
    PillowcaseCheck(PillowcaseArgs),
    /// The parity identity for ribbon surfaces.
    RibbonCheck(RibbonArgs),
    /// Gram matrix of the limit trace form on a torus basis.
    GramProbe(GramArgs),
}

#[derive(Debug, Args)]
pub struct SkeinMulArgs {
    pub x: PathBuf,
    pub y: PathBuf,
    /// `formal`, or `a/b` for `A = e^{iπ a/b}`.
    #[arg(long, default_value = "formal", allow_hyphen_values = true)]
    pub at: String,
}

#[derive(Debug, Args)]
pub struct IsoSweepArgs {
    #[arg(long, default_value_t = 3)]
    pub max_d: u32,
    #[arg(long, default_value_t = 5)]
    pub max_pq: i64,
    /// Fault injection: scale one pair's right-hand side by `i`. Format `X:Y`
    /// with each curve as `p,q` or `d,p,q`.
    #[arg(long, hide = true)]
    pub corrupt_phase: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct SequenceArgs {
    /// Base `a/b` of `θ_n = a/b + ζ/p_n`.
    #[arg(long, default_value = "-1/2", allow_hyphen_values = true)]
    pub theta: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub zeta: String,
    /// `p_n = step · n`.
    #[arg(long, default_value_t = 4)]
    pub step: i64,
}

#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    /// `torus`, `theta`, `dumbbell`, or a graph JSON file.
    #[arg(long, default_value = "torus")]
    pub graph: String,
    /// Edge multiplicities `m_e`, comma separated; overrides the file.
    #[arg(long)]
    pub m: Option<String>,
}

#[derive(Debug, Args)]
pub struct TqftTraceArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub seq: SequenceArgs,
    #[arg(long, default_value_t = 1)]
    pub n_min: u64,
    #[arg(long, default_value_t = 20)]
    pub n_max: u64,
    /// Also sum by plain enumeration and compare.
    #[arg(long)]
    pub naive: bool,
    /// Require `|normalized - limit| <= C/n`.
    #[arg(long)]
    pub bound: Option<f64>,
}

#[derive(Debug, Args)]
pub struct TqftLimitArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub seq: SequenceArgs,
    /// Agreement window in standard errors.
    #[arg(long, default_value_t = 3.0)]
    pub sigmas: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PillowcaseCheck {
    All,
    Equivariance,
    Identity,
    Commutation,
    Slope,
    ClosedForm,
    Kauffman,
    Trace,
}

#[derive(Debug, Args)]
pub struct PillowcaseArgs {
    #[arg(long, value_enum, default_value_t = PillowcaseCheck::All)]
    pub check: PillowcaseCheck,
    /// Flow time as an exact rational.
    #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
    pub t: String,
    /// Curve as `p,q`, `d,p,q` or `empty`.
    #[arg(long, allow_hyphen_values = true)]
    pub curve: Option<String>,
    /// Random regular points per pointwise check.
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    #[arg(long, default_value_t = 3.0)]
    pub sigmas: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RibbonExample {
    Disc,
    Annulus,
    Moebius,
}

#[derive(Debug, Args)]
pub struct RibbonArgs {
    /// Ribbon graph JSON file.
    #[arg(long, conflicts_with_all = ["fuzz", "example"])]
    pub graph: Option<PathBuf>,
    #[arg(long, value_enum, conflicts_with = "fuzz")]
    pub example: Option<RibbonExample>,
    /// Number of random graphs to check.
    #[arg(long)]
    pub fuzz: Option<usize>,
    #[arg(long, default_value_t = 6)]
    pub max_vertices: usize,
    #[arg(long, default_value_t = 10)]
    pub max_edges: usize,
}

#[derive(Debug, Args)]
pub struct GramArgs {
    #[command(flatten)]
    pub seq: SequenceArgs,
    /// Basis curves separated by `;`, each `empty`, `p,q` or `d,p,q`.
    #[arg(long, allow_hyphen_values = true)]
    pub curves: Option<String>,
    /// Evaluate the trace form by Monte Carlo instead of quadrature.
    #[arg(long)]
    pub monte_carlo: bool,
}
