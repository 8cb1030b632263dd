//! `linkpred`: generate benchmark networks, inspect degree structure, score
//! candidate pairs, blend scores and tune the blend and time-weight
//! parameters.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use linkpred_core::synthgen::{
    DEFAULT_B, DEFAULT_M, DEFAULT_N_FINAL, DEFAULT_N_PAIRS, DEFAULT_POSITIVE_CAP, DEFAULT_SEED,
};
use linkpred_core::TimeWeights;

#[derive(Parser)]
#[command(name = "linkpred", version, about = "Temporal link prediction toolkit")]
struct Cli {
    /// `key = value` file supplying defaults for any long flag.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grow a preferential-attachment network and optionally cut a benchmark split.
    #[command(args_override_self = true)]
    Generate(GenerateArgs),
    /// Node and link counts, pair degree categories and the degree power-law fit.
    #[command(args_override_self = true)]
    Inspect(InspectArgs),
    /// Score every pair of a pairs file with one method.
    #[command(args_override_self = true)]
    Score(ScoreArgs),
    /// AUC of one score file, or of the blend `eps*aa + (1-eps)*pa` of two.
    #[command(args_override_self = true)]
    Combine(CombineArgs),
    /// Grid search over the blend weight or the time-weight parameters.
    #[command(args_override_self = true)]
    Optimize(OptimizeArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Final node count.
    #[arg(long, default_value_t = DEFAULT_N_FINAL)]
    n: usize,
    /// Links per arriving node.
    #[arg(long, default_value_t = DEFAULT_M)]
    m: usize,
    /// Attachment offset: targets are drawn with probability proportional to k + b.
    #[arg(long, default_value_t = DEFAULT_B, allow_negative_numbers = true)]
    b: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Edge file to write.
    #[arg(long)]
    out: PathBuf,
    /// Labelled pairs file for a benchmark split; enables the split.
    #[arg(long)]
    pairs_out: Option<PathBuf>,
    /// Training links (t <= t1) of the split.
    #[arg(long)]
    train_out: Option<PathBuf>,
    /// Training cutoff; defaults to 20% of the last arrival time.
    #[arg(long)]
    t1: Option<f64>,
    /// End of the evaluation window; defaults to 30% of the last arrival time.
    #[arg(long)]
    t2: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_N_PAIRS)]
    n_pairs: usize,
    /// Minimum share of positives, topped up from the window's links.
    #[arg(long, default_value_t = DEFAULT_POSITIVE_CAP)]
    pos_cap: f64,
}

/// Where the graph comes from.
#[derive(Args, Clone)]
struct GraphInput {
    /// Edge file with `u v t` lines.
    #[arg(long)]
    edges: PathBuf,
    /// Node count; inferred from the largest id when absent.
    #[arg(long)]
    nodes: Option<usize>,
    /// Keep only links with t <= t1.
    #[arg(long)]
    t1: Option<f64>,
}

#[derive(Args)]
struct InspectArgs {
    #[command(flatten)]
    graph: GraphInput,
    /// Pairs file to classify into degree categories.
    #[arg(long)]
    pairs: Option<PathBuf>,
    /// Lower degree cutoff of the fit; defaults to the 10th percentile of nonzero degrees.
    #[arg(long)]
    kmin: Option<f64>,
    /// Histogram bin ratio.
    #[arg(long, default_value_t = 1.5)]
    ratio: f64,
    /// Histogram data file (`centre density` lines).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScoreArgs {
    #[command(flatten)]
    graph: GraphInput,
    #[arg(long)]
    pairs: PathBuf,
    /// One of pa, cn, aa, ra, l3.
    #[arg(long, default_value = "pa")]
    method: String,
    /// Weight of the sqrt(k_u k_v) term of pa.
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
    /// `t0,t1,t2,t3` time weighting, or `uniform`.
    #[arg(long, default_value = "uniform", value_parser = parse_weighting)]
    theta: WeightingArg,
    /// Score file to write.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CombineArgs {
    /// Score file of the popularity scorer.
    #[arg(long)]
    pa: Option<PathBuf>,
    /// Score file of the similarity scorer.
    #[arg(long)]
    aa: Option<PathBuf>,
    /// Single score file to evaluate as is.
    #[arg(long, conflicts_with_all = ["pa", "aa"])]
    scores: Option<PathBuf>,
    /// Labelled pairs file aligned with the score files.
    #[arg(long)]
    labels: PathBuf,
    /// Blend weight on the similarity scores.
    #[arg(long)]
    eps: Option<f64>,
    /// Blended scores to write.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Epsilon,
    Theta,
}

#[derive(Args)]
struct OptimizeArgs {
    #[command(flatten)]
    graph: GraphInput,
    /// Pairs file; must carry labels unless `--labels` is given.
    #[arg(long)]
    pairs: PathBuf,
    /// Labelled pairs file supplying labels for `--pairs`.
    #[arg(long)]
    labels: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Epsilon)]
    mode: Mode,
    /// Epsilon grid spacing.
    #[arg(long, default_value_t = 0.01)]
    grid_step: f64,
    /// Scorer tuned in theta mode.
    #[arg(long, default_value = "pa")]
    method: String,
    /// Weight of the sqrt(k_u k_v) term of pa.
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
    /// Time weighting used in epsilon mode.
    #[arg(long, default_value = "uniform", value_parser = parse_weighting)]
    theta: WeightingArg,
    #[arg(long, default_value = "0,0.25,0.5,1", value_parser = parse_reals)]
    theta0: RealList,
    #[arg(long, default_value = "0,0.15,0.3,0.45,0.6,0.75,0.9,1", value_parser = parse_reals)]
    theta1: RealList,
    #[arg(long, default_value = "1,2,3,5", value_parser = parse_reals)]
    theta2: RealList,
    #[arg(long, default_value = "2,4,6", value_parser = parse_evens)]
    theta3: EvenList,
    #[arg(long, default_value_t = 10)]
    max_passes: usize,
    /// Trace file with every evaluated grid point.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Debug)]
enum WeightingArg {
    Uniform,
    Time(TimeWeights),
}

impl std::fmt::Display for WeightingArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WeightingArg::Uniform => f.write_str("uniform"),
            WeightingArg::Time(p) => write!(f, "{p}"),
        }
    }
}

fn parse_weighting(s: &str) -> Result<WeightingArg, String> {
    if s.trim().eq_ignore_ascii_case("uniform") {
        return Ok(WeightingArg::Uniform);
    }
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, c, d] = parts[..] else {
        return Err("expected `t0,t1,t2,t3` or `uniform`".into());
    };
    let real = |x: &str| x.parse::<f64>().map_err(|_| format!("bad number `{x}`"));
    let power: u32 = d
        .parse()
        .map_err(|_| format!("t3 must be a positive even integer, got `{d}`"))?;
    TimeWeights::new(real(a)?, real(b)?, real(c)?, power)
        .map(WeightingArg::Time)
        .map_err(|e| e.to_string())
}

#[derive(Clone, Debug)]
struct RealList(Vec<f64>);

#[derive(Clone, Debug)]
struct EvenList(Vec<u32>);

fn join<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn parse_reals(s: &str) -> Result<RealList, String> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("bad number `{x}`"))
        })
        .collect::<Result<_, _>>()
        .map(RealList)
}

fn parse_evens(s: &str) -> Result<EvenList, String> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| format!("bad integer `{x}`"))
        })
        .collect::<Result<_, _>>()
        .map(EvenList)
}

fn run() -> Result<()> {
    let args = config::expand_args(std::env::args_os().collect())?;
    let cli = Cli::parse_from(args);
    if let Some(path) = &cli.config {
        println!("# config file {}", path.display());
    }
    match cli.command {
        Command::Generate(a) => commands::generate(a),
        Command::Inspect(a) => commands::inspect(a),
        Command::Score(a) => commands::score(a),
        Command::Combine(a) => {
            if a.scores.is_none() && (a.pa.is_none() || a.aa.is_none()) {
                bail!("give either --scores or both --pa and --aa");
            }
            commands::combine(a)
        }
        Command::Optimize(a) => commands::optimize(a),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
