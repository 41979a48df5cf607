use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use parhac_core::{LinkageKind, WeightScheme};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "parhac", version, about = "Graph-based hierarchical agglomerative clustering")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cluster a similarity graph given as an edge list.
    Cluster(ClusterArgs),
    /// Build a k-NN similarity graph from points and cluster it.
    ClusterPoints(ClusterPointsArgs),
    /// Score a dendrogram against ground-truth labels.
    Metrics(MetricsArgs),
    /// Time algorithms over a grid of settings.
    Bench(BenchArgs),
    /// Emit or verify a circuit-evaluation gadget graph.
    Gadget(GadgetArgs),
    /// Re-run a recorded clustering and check the output matches.
    Replay(ReplayArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algo {
    Parhac,
    Seqhac,
    Exact,
    Rac,
    Affinity,
    Scc,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Parhac => "parhac",
            Algo::Seqhac => "seqhac",
            Algo::Exact => "exact",
            Algo::Rac => "rac",
            Algo::Affinity => "affinity",
            Algo::Scc => "scc",
        }
    }

    pub fn uses_epsilon(self) -> bool {
        matches!(self, Algo::Parhac | Algo::Seqhac)
    }
}

/// How edge weights are chosen: keep the input's, or recompute them from
/// the topology. `auto` keeps weighted inputs and applies `inv-log-deg` to
/// unweighted ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightChoice {
    Auto,
    Original,
    Scheme(WeightScheme),
}

impl FromStr for WeightChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(WeightChoice::Auto),
            "original" => Ok(WeightChoice::Original),
            _ => s.parse().map(WeightChoice::Scheme).map_err(|_| {
                let names: Vec<&str> = WeightScheme::ALL.iter().map(|w| w.name()).collect();
                format!("expected auto, original or one of {}", names.join(", "))
            }),
        }
    }
}

fn parse_linkage(s: &str) -> Result<LinkageKind, String> {
    s.parse().map_err(|e: parhac_core::Error| e.to_string())
}

#[derive(Clone, Debug, Args)]
pub struct EngineArgs {
    #[arg(long, value_enum, default_value = "parhac")]
    pub algo: Algo,
    /// Approximation slack for parhac and seqhac (0 = exact for parhac).
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; defaults to all cores.
    #[arg(long, env = "PARHAC_THREADS")]
    pub threads: Option<usize>,
    /// auto, original, or a scheme: deg, triangle, rand, log-deg, log-rand,
    /// unit, inv-log-deg.
    #[arg(long, default_value = "auto")]
    pub weight_scheme: WeightChoice,
    #[arg(long, default_value_t = 100)]
    pub scc_rounds: usize,
    /// Lowest SCC threshold; defaults to the smallest edge weight.
    #[arg(long)]
    pub scc_lower: Option<f64>,
    /// Highest SCC threshold; defaults to the largest edge weight.
    #[arg(long)]
    pub scc_upper: Option<f64>,
    /// Dendrogram output path; a manifest is written next to it.
    #[arg(long, short)]
    pub output: PathBuf,
    /// Append a JSON record of the run to this file.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    /// Edge list with `u v [w]` lines.
    #[arg(long, short)]
    pub input: PathBuf,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct ClusterPointsArgs {
    /// CSV of coordinates, one point per row.
    #[arg(long)]
    pub points: PathBuf,
    /// Neighbors per point.
    #[arg(long, short)]
    pub k: usize,
    /// Zero-based column holding integer class labels.
    #[arg(long)]
    pub label_col: Option<usize>,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    #[arg(long, short)]
    pub dendrogram: PathBuf,
    /// Ground-truth labels, one per line.
    #[arg(long, short)]
    pub truth: PathBuf,
    /// Similarity graph for the Dasgupta cost.
    #[arg(long, short)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Edge list to benchmark on.
    #[arg(long, short, conflicts_with = "vertices")]
    pub input: Option<PathBuf>,
    /// Generate a random graph with this many vertices instead.
    #[arg(long, requires = "edges")]
    pub vertices: Option<usize>,
    #[arg(long)]
    pub edges: Option<usize>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "parhac")]
    pub algos: Vec<Algo>,
    #[arg(long, value_delimiter = ',', default_value = "0.1")]
    pub epsilons: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub thread_counts: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "auto")]
    pub weight_schemes: Vec<WeightChoice>,
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GadgetArgs {
    /// Circuit file: `t n` header then one gate per line.
    #[arg(long, short, required_unless_present = "fuzz")]
    pub circuit: Option<PathBuf>,
    /// wpgma or average; fuzzing checks both when omitted.
    #[arg(long, value_parser = parse_linkage)]
    pub linkage: Option<LinkageKind>,
    /// Weight gap of the WPGMA gadget, in (0, 1/4).
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    /// Simulate HAC on the gadget and compare against circuit evaluation.
    #[arg(long)]
    pub verify: bool,
    /// Verify this many random circuits instead of reading one.
    #[arg(long, conflicts_with = "circuit")]
    pub fuzz: Option<usize>,
    #[arg(long, default_value_t = 30)]
    pub max_gates: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Where to write the gadget edge list (stdout if omitted).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
    /// Also write the regenerated dendrogram here.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Override the recorded thread count.
    #[arg(long)]
    pub threads: Option<usize>,
}
