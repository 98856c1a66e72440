//! `secrograph`: reproducible secrecy-graph experiments from the command
//! line, emitting plot-ready CSV or JSON.
//!
//! Every command is a pure function of its configuration and the master
//! seed: identical invocations produce byte-identical output. Timing goes
//! to stderr so it never breaks reproducibility.
//!
//! Exit codes: 0 success, 1 usage/parameter error, 2 partial failure.

mod commands;
mod record;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use secrograph::Error as CoreError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "secrograph",
    version,
    about = "Secrecy-graph simulation and analytics toolkit",
    propagate_version = true
)]
pub struct Cli {
    /// Master seed for all sampling (flag beats the environment variable)
    #[arg(long, global = true, env = "SECROGRAPH_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Output path; stdout when omitted
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Cap on parallel worker threads (default: available parallelism)
    #[arg(long, global = true)]
    pub runs_parallel: Option<usize>,

    #[command(subcommand)]
    pub cmd: Cmd,
}

/// Transmission range argument; accepts `inf`.
#[derive(Debug, Clone, Copy)]
pub struct Range(pub f64);

impl std::str::FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(Range(f64::INFINITY));
        }
        s.parse::<f64>().map(Range).map_err(|e| format!("invalid range {s:?}: {e}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryArg {
    Plain,
    Torus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PlacementArg {
    Midpoints,
    Sites,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleArg {
    Analogy,
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKindArg {
    Basic,
    Enhanced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BallArg {
    Open,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum DirectionArg {
    LambdaC,
    #[value(name = "r_c")]
    RC,
    LambdaInf,
}

/// Closed-form quantity selector for `analytic`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Quantity {
    OutIsolation,
    BasicIsolation,
    OutPmf,
    GammaQ,
    MeanOut,
    MeanBasic,
    MeanEnhanced,
    Eta,
    EtaPrime,
    CdfBounds,
    MeanBounds,
    #[value(name = "r_t")]
    RT,
    Slope,
    REps,
    PiecewiseBound,
    LambdaC,
    #[value(name = "r_c")]
    RC,
    RcLowerBound,
    CritIsolation,
    CritMeanLower,
    Range,
    RayleighMean,
}

#[derive(Debug, Args)]
pub struct AnalyticCmd {
    /// Quantity to evaluate
    #[arg(value_enum)]
    pub quantity: Quantity,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub r: Option<Range>,
    #[arg(long)]
    pub n: Option<i64>,
    /// Gamma-function argument (for `gamma_q`)
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    /// Transmit power (for `range`)
    #[arg(long)]
    pub power: Option<f64>,
    /// SNR threshold (for `range`)
    #[arg(long)]
    pub theta: Option<f64>,
    /// Noise power (for `range`)
    #[arg(long)]
    pub noise: Option<f64>,
    /// Path-loss exponent (for `range`)
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Batch mode: read a CSV of parameter rows, append a result column
    #[arg(long)]
    pub batch: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SampleCmd {
    /// Point intensity
    #[arg(long, default_value_t = 1.0)]
    pub intensity: f64,
    #[arg(long = "L", default_value_t = 20.0)]
    pub side: f64,
    #[arg(long, value_enum, default_value_t = BoundaryArg::Plain)]
    pub boundary: BoundaryArg,
    /// Pin an extra node at the window center
    #[arg(long, default_value_t = false)]
    pub center: bool,
}

#[derive(Debug, Args)]
pub struct GraphCmd {
    #[arg(long)]
    pub lambda: f64,
    #[arg(long)]
    pub r: Range,
    #[arg(long = "L", default_value_t = 20.0)]
    pub side: f64,
    #[arg(long, value_enum, default_value_t = BoundaryArg::Plain)]
    pub boundary: BoundaryArg,
}

#[derive(Debug, Args)]
pub struct DegreesCmd {
    #[arg(long)]
    pub lambda: f64,
    #[arg(long)]
    pub r: Range,
    #[arg(long = "L", default_value_t = 40.0)]
    pub side: f64,
    #[arg(long, default_value_t = 30)]
    pub runs: u64,
}

#[derive(Debug, Args)]
pub struct IsolationCmd {
    /// One or more intensities, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    pub lambda: Vec<f64>,
    #[arg(long)]
    pub r: Range,
    #[arg(long = "L", default_value_t = 40.0)]
    pub side: f64,
    #[arg(long, default_value_t = 30)]
    pub runs: u64,
}

#[derive(Debug, Args)]
pub struct RatiosCmd {
    #[arg(long, value_delimiter = ',', required = true)]
    pub lambda: Vec<f64>,
    /// Finite ranges, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    pub r: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct EdgesCmd {
    #[arg(long)]
    pub lambda: f64,
    #[arg(long)]
    pub r: Range,
    #[arg(long = "L", default_value_t = 40.0)]
    pub side: f64,
    #[arg(long, default_value_t = 20)]
    pub runs: u64,
    /// Histogram bin count
    #[arg(long, default_value_t = 40)]
    pub bins: usize,
    /// plain reproduces the single-window estimator; torus removes the
    /// boundary bias
    #[arg(long, value_enum, default_value_t = BoundaryArg::Plain)]
    pub boundary: BoundaryArg,
}

#[derive(Debug, Args)]
pub struct RegimesCmd {
    #[arg(long)]
    pub lambda: f64,
    #[arg(long, default_value_t = 0.05)]
    pub r_min: f64,
    #[arg(long, default_value_t = 5.0)]
    pub r_max: f64,
    #[arg(long, default_value_t = 60)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct LatticeCmd {
    #[arg(long, value_enum)]
    pub placement: PlacementArg,
    #[arg(long, value_enum, default_value_t = RuleArg::Analogy)]
    pub rule: RuleArg,
    /// Undirected graph used by the geometric rule
    #[arg(long, value_enum, default_value_t = GraphKindArg::Enhanced)]
    pub graph: GraphKindArg,
    /// Eavesdropper ball of the geometric rule
    #[arg(long, value_enum, default_value_t = BallArg::Open)]
    pub ball: BallArg,
    /// Fixed occupancy probability; omit to bisect for p_c
    #[arg(long)]
    pub p: Option<f64>,
    /// Lattice sides, comma separated (ladder for the p_c search)
    #[arg(long = "n", value_delimiter = ',', default_values_t = [64usize, 128, 256])]
    pub sides: Vec<usize>,
    #[arg(long, default_value_t = 200)]
    pub runs: u64,
}

#[derive(Debug, Args)]
pub struct PercolateCmd {
    #[arg(long)]
    pub lambda: f64,
    #[arg(long)]
    pub r: Range,
    #[arg(long = "L", default_value_t = 40.0)]
    pub side: f64,
    #[arg(long, default_value_t = 60)]
    pub runs: u64,
    /// Boundary-shell width override
    #[arg(long)]
    pub shell: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ThresholdCmd {
    #[arg(long, value_enum)]
    pub direction: DirectionArg,
    /// Range (lambda_c direction)
    #[arg(long)]
    pub r: Option<f64>,
    /// Intensity (r_c direction)
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Window-side ladder, comma separated
    #[arg(long = "L", value_delimiter = ',', default_values_t = [40.0, 60.0])]
    pub ladder: Vec<f64>,
    #[arg(long, default_value_t = 60)]
    pub runs: u64,
}

#[derive(Debug, Args)]
pub struct SweepCmd {
    /// lambda_c sweeps over r; r_c sweeps over lambda
    #[arg(long, value_enum)]
    pub direction: DirectionArg,
    /// Grid values, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    pub grid: Vec<f64>,
    #[arg(long = "L", value_delimiter = ',', default_values_t = [40.0, 60.0])]
    pub ladder: Vec<f64>,
    #[arg(long, default_value_t = 60)]
    pub runs: u64,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Evaluate a closed-form quantity (one value per line, or batch CSV)
    Analytic(AnalyticCmd),
    /// Dump a sampled point set as CSV
    Sample(SampleCmd),
    /// Dump one secrecy graph as JSON
    Graph(GraphCmd),
    /// Empirical degree pmfs with analytic reference columns
    Degrees(DegreesCmd),
    /// Empirical isolation probabilities with analytic columns
    Isolation(IsolationCmd),
    /// Secrecy-ratio table over a (lambda, r) grid
    Ratios(RatiosCmd),
    /// Edge-length histogram with Rayleigh / disk reference columns
    Edges(EdgesCmd),
    /// Mean-degree-vs-range dataset with regime boundary and bound
    Regimes(RegimesCmd),
    /// Lattice crossing experiment or p_c estimate
    Lattice(LatticeCmd),
    /// Percolation probability estimate at one (lambda, r)
    Percolate(PercolateCmd),
    /// Critical-parameter estimate (lambda_c | r_c | lambda_inf)
    Threshold(ThresholdCmd),
    /// Threshold sweep over a grid with approximation residuals
    Sweep(SweepCmd),
}

/// Failure modes mapped onto exit codes.
pub enum CmdError {
    /// Bad flags or parameter domains → exit 1.
    Usage(String),
    /// The experiment ran but (partially) failed → exit 2.
    Partial(String),
}

impl From<CoreError> for CmdError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Parameter(m) => CmdError::Usage(format!("invalid parameter: {m}")),
            other => CmdError::Partial(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError::Partial(format!("i/o error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(threads) = cli.runs_parallel {
        if let Err(e) =
            rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global()
        {
            eprintln!("secrograph: could not set worker count: {e}");
        }
    }
    let started = std::time::Instant::now();
    let result = commands::dispatch(&cli);
    eprintln!("secrograph: finished in {:.3}s", started.elapsed().as_secs_f64());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CmdError::Usage(msg)) => {
            eprintln!("secrograph: {msg}");
            ExitCode::from(1)
        }
        Err(CmdError::Partial(msg)) => {
            eprintln!("secrograph: {msg}");
            ExitCode::from(2)
        }
    }
}
