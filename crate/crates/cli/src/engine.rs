//! Graph preparation and algorithm dispatch shared by the subcommands.

use parhac_core::baselines::{affinity, exact_heap, rac, scc, seqhac, SccParams};
use parhac_core::graph::apply_weight_scheme;
use parhac_core::{parhac, Dendrogram, ParhacParams, SimilarityGraph, WeightScheme};
use serde::{Deserialize, Serialize};

use crate::args::{Algo, EngineArgs, WeightChoice};
use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SccSettings {
    pub rounds: usize,
    pub lower: f64,
    pub upper: f64,
}

/// Fully resolved algorithm settings.
#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub algo: Algo,
    pub epsilon: f64,
    pub seed: u64,
    pub threads: Option<usize>,
    pub scc: Option<SccSettings>,
}

impl Settings {
    /// Settings from flags alone; SCC bounds are filled in later by
    /// [`Settings::with_scc_defaults`] once the graph is known.
    pub fn from_args(args: &EngineArgs) -> CliResult<Self> {
        let s = Settings { algo: args.algo, epsilon: args.epsilon, seed: args.seed, threads: args.threads, scc: None };
        s.validate()?;
        Ok(s)
    }

    pub fn with_scc_defaults(mut self, args: &EngineArgs, g: &SimilarityGraph) -> CliResult<Self> {
        if self.algo == Algo::Scc {
            self.scc = Some(SccSettings {
                rounds: args.scc_rounds,
                lower: args.scc_lower.or(g.min_weight()).unwrap_or(1.0),
                upper: args.scc_upper.or(g.max_weight()).unwrap_or(1.0),
            });
            self.validate()?;
        }
        Ok(self)
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.threads == Some(0) {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        match self.algo {
            Algo::Parhac => ParhacParams::new(self.epsilon).validate()?,
            Algo::Seqhac if !(self.epsilon > 0.0 && self.epsilon.is_finite()) => {
                return Err(CliError::Usage(format!("seqhac needs --epsilon > 0, got {}", self.epsilon)));
            }
            _ => {}
        }
        if let Some(s) = self.scc {
            SccParams::new(s.rounds, s.lower, s.upper)?;
        }
        Ok(())
    }
}

/// Round counters reported alongside a run.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Counters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub layers: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outer_rounds: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inner_rounds: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rounds: Option<usize>,
}

/// Applies a weight choice, returning the graph and the resolved scheme name.
pub fn weigh(g: SimilarityGraph, choice: WeightChoice, seed: u64) -> CliResult<(SimilarityGraph, String)> {
    let scheme = match choice {
        WeightChoice::Original => None,
        WeightChoice::Auto if !g.is_unweighted() => None,
        WeightChoice::Auto => Some(WeightScheme::InverseLogDegree),
        WeightChoice::Scheme(s) => Some(s),
    };
    match scheme {
        None => Ok((g, "original".to_string())),
        Some(s) => Ok((apply_weight_scheme(&g, s, seed)?, s.name().to_string())),
    }
}

fn run_inner(g: &SimilarityGraph, s: &Settings) -> CliResult<(Dendrogram, Counters)> {
    let mut c = Counters::default();
    let d = match s.algo {
        Algo::Parhac => {
            let (d, stats) = parhac::run_with_stats(g, &ParhacParams::new(s.epsilon).with_seed(s.seed))?;
            c.layers = Some(stats.num_layers());
            c.outer_rounds = Some(stats.total_outer_rounds());
            c.inner_rounds = Some(stats.total_inner_rounds());
            d
        }
        Algo::Seqhac => seqhac(g, s.epsilon)?,
        Algo::Exact => exact_heap(g)?,
        Algo::Rac => {
            let r = rac(g)?;
            c.rounds = Some(r.rounds);
            r.dendrogram
        }
        Algo::Affinity => {
            let r = affinity(g)?;
            c.rounds = Some(r.rounds.len());
            r.dendrogram
        }
        Algo::Scc => {
            let p = s.scc.expect("scc settings resolved");
            let r = scc(g, &SccParams::new(p.rounds, p.lower, p.upper)?)?;
            c.rounds = Some(r.rounds.len());
            r.dendrogram
        }
    };
    Ok((d, c))
}

/// Runs the configured algorithm, inside a dedicated pool when a thread
/// count is given.
pub fn run(g: &SimilarityGraph, s: &Settings) -> CliResult<(Dendrogram, Counters)> {
    match s.threads {
        Some(t) => rayon_pool(t)?.install(|| run_inner(g, s)),
        None => run_inner(g, s),
    }
}

fn rayon_pool(threads: usize) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {threads} threads: {e}")))
}
