use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lenslab::montecarlo::{Algorithm, HaarGenerator};

#[derive(Debug, Parser)]
#[command(
    name = "lenslab",
    version,
    about = "Distance statistics on lens spaces L(n;m)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Moments I_{n,k} of the distance on L(n;1)
    Moments(MomentsArgs),
    /// pdf, cdf, mgf or quantile function of the distance on L(n;1)
    Distribution(DistributionArgs),
    /// Volume and surface area of metric balls in L(n;1)
    Ballvol(BallvolArgs),
    /// Monte Carlo distance samples on L(n;m)
    Simulate(SimulateArgs),
    /// Kolmogorov-Smirnov test of a histogram or sample file against L(n;1)
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv", env = "LENSLAB_FORMAT")]
    pub format: Format,
    /// Output file; standard output when omitted
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Recurrence,
    FiniteSum,
    ClosedForm,
    Quadrature,
    Asymptotic,
    LargeNLimit,
    All,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[arg(long)]
    pub n: u32,
    /// A single k or an inclusive range such as 0..7
    #[arg(long, allow_hyphen_values = true)]
    pub k: String,
    #[arg(long, value_enum, default_value = "closed-form")]
    pub method: MethodArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Pdf,
    Cdf,
    Mgf,
    Quantile,
}

#[derive(Debug, Args)]
pub struct DistributionArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_enum)]
    pub which: Which,
    /// start:stop:count, endpoints included; defaults to the natural domain
    #[arg(long, allow_hyphen_values = true, conflicts_with = "x")]
    pub grid: Option<String>,
    /// Comma-separated evaluation points
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    pub x: Vec<f64>,
    /// Histogram file (JSON or CSV from `simulate`) drawn under the svg curve
    #[arg(long)]
    pub histogram: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BallvolArgs {
    #[arg(long)]
    pub n: u32,
    /// start:stop:count radii, endpoints included
    #[arg(long = "r-grid", default_value = "0:1.5707963267948966:101")]
    pub r_grid: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmArg {
    GeneralOrbit,
    HomogeneousFast,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::GeneralOrbit => Algorithm::GeneralOrbit,
            AlgorithmArg::HomogeneousFast => Algorithm::HomogeneousFast,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeneratorArg {
    GramSchmidt,
    NormalizedGaussian,
}

impl From<GeneratorArg> for HaarGenerator {
    fn from(g: GeneratorArg) -> Self {
        match g {
            GeneratorArg::GramSchmidt => HaarGenerator::GramSchmidt,
            GeneratorArg::NormalizedGaussian => HaarGenerator::NormalizedGaussian,
        }
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Number of samples N
    #[arg(
        long = "samples",
        short = 'N',
        default_value_t = 100_000,
        env = "LENSLAB_SAMPLES"
    )]
    pub samples: usize,
    #[arg(long, default_value_t = 0, env = "LENSLAB_SEED")]
    pub seed: u64,
    /// Worker threads; defaults to the available parallelism
    #[arg(long, env = "LENSLAB_WORKERS")]
    pub workers: Option<usize>,
    #[arg(
        long,
        value_enum,
        default_value = "general-orbit",
        env = "LENSLAB_ALGORITHM"
    )]
    pub algorithm: AlgorithmArg,
    /// Minimize over all n² orbit pairs instead of n shifts
    #[arg(long)]
    pub double_loop: bool,
    #[arg(long, value_enum, default_value = "gram-schmidt")]
    pub generator: GeneratorArg,
    #[arg(long, default_value_t = 100, env = "LENSLAB_BINS")]
    pub bins: usize,
    /// Also write an svg histogram here
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Also write the raw samples here (csv, one `distance` column)
    #[arg(long)]
    pub samples_out: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Histogram (JSON or CSV from `simulate`) or sample CSV with a `distance` column
    pub file: PathBuf,
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    #[arg(long, default_value_t = 0.01, env = "LENSLAB_ALPHA")]
    pub alpha: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}
