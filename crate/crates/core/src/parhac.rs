//! Parallel (1+ε)-approximate average-linkage HAC.
//!
//! The driver peels off geometric weight layers from the top: with `W_max` the
//! current heaviest edge it contracts every edge of weight at least
//! `T_L = W_max / (1 + δ)` before moving on. Inside a layer, outer rounds color
//! the active clusters red or blue at random. Blues propose to one random red
//! neighbor in the layer, and each red accepts proposals in priority order
//! until it has grown by roughly a `(1 + δ)` factor since the outer round
//! began (the capacity rule). Inner rounds repeat the proposal step until no
//! blue has a red left to propose to.
//!
//! All reads run on rayon; merges are applied in a fixed order, so output only
//! depends on the input, `ε` and the seed.

use rand::Rng;
use rayon::prelude::*;

use crate::clustered::{ClusterId, ClusteredGraph, MergeBatch};
use crate::dendrogram::Dendrogram;
use crate::error::{Error, Result};
use crate::graph::SimilarityGraph;
use crate::rng::{stream, Purpose, RoundKey};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParhacParams {
    /// Approximation slack; 0 runs the exact variant.
    pub epsilon: f64,
    pub seed: u64,
    /// Worker threads; `None` uses the ambient rayon pool.
    pub threads: Option<usize>,
}

impl Default for ParhacParams {
    fn default() -> Self {
        Self { epsilon: 0.1, seed: 0, threads: None }
    }
}

impl ParhacParams {
    pub fn new(epsilon: f64) -> Self {
        Self { epsilon, ..Self::default() }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads);
        self
    }

    /// Per-layer slack δ; chosen so that `(1 + δ)^2 <= 1 + ε`.
    pub fn delta(&self) -> f64 {
        if self.epsilon <= 1.0 {
            self.epsilon / 3.0
        } else {
            self.epsilon.sqrt() / 3.0
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be finite and nonnegative, got {}",
                self.epsilon
            )));
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidParameter("threads must be positive".into()));
        }
        Ok(())
    }
}

/// Counters for one layer-contraction phase.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LayerStats {
    pub w_max: f64,
    pub threshold: f64,
    /// Inner-round count of each outer round.
    pub inner_rounds: Vec<usize>,
    pub merges: usize,
}

impl LayerStats {
    pub fn outer_rounds(&self) -> usize {
        self.inner_rounds.len()
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParhacStats {
    pub layers: Vec<LayerStats>,
}

impl ParhacStats {
    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn total_outer_rounds(&self) -> usize {
        self.layers.iter().map(LayerStats::outer_rounds).sum()
    }

    pub fn total_inner_rounds(&self) -> usize {
        self.layers.iter().flat_map(|l| l.inner_rounds.iter()).sum()
    }

    pub fn max_outer_per_layer(&self) -> usize {
        self.layers.iter().map(LayerStats::outer_rounds).max().unwrap_or(0)
    }

    pub fn max_inner_per_outer(&self) -> usize {
        self.layers.iter().flat_map(|l| l.inner_rounds.iter().copied()).max().unwrap_or(0)
    }

    pub fn total_merges(&self) -> usize {
        self.layers.iter().map(|l| l.merges).sum()
    }

    /// `W_max` at the start of each layer.
    pub fn w_max_sequence(&self) -> Vec<f64> {
        self.layers.iter().map(|l| l.w_max).collect()
    }
}

pub fn run(g: &SimilarityGraph, params: &ParhacParams) -> Result<Dendrogram> {
    run_with_stats(g, params).map(|(d, _)| d)
}

pub fn run_with_stats(g: &SimilarityGraph, params: &ParhacParams) -> Result<(Dendrogram, ParhacStats)> {
    run_observed(g, params, |_, _, _| {})
}

/// Runs the engine and calls `before(graph, red, blue)` ahead of every binary
/// merge, while the graph still shows the pre-merge state.
pub fn run_observed<F>(
    g: &SimilarityGraph,
    params: &ParhacParams,
    mut before: F,
) -> Result<(Dendrogram, ParhacStats)>
where
    F: FnMut(&ClusteredGraph, ClusterId, ClusterId) + Send,
{
    params.validate()?;
    g.require_positive()?;
    let mut body = move || {
        let mut cg = ClusteredGraph::new(g);
        let mut stats = ParhacStats::default();
        let mut scratch = Scratch::new(g.n());
        let delta = params.delta();
        while let Some(w_max) = cg.current_max_weight() {
            let threshold = if delta == 0.0 { w_max } else { w_max / (1.0 + delta) };
            let layer = stats.layers.len() as u32;
            let mut ls = LayerStats { w_max, threshold, ..LayerStats::default() };
            contract_layer(&mut cg, &mut scratch, threshold, delta, params.seed, layer, &mut ls, &mut before)?;
            stats.layers.push(ls);
        }
        Ok((cg.into_dendrogram(), stats))
    };
    match params.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(body),
        None => body(),
    }
}

/// Index into `blue_sizes` one past the accepted prefix: the shortest prefix
/// whose total exceeds `delta * start_size`, or everything if none does.
pub fn accepted_prefix(blue_sizes: &[u64], start_size: u64, delta: f64) -> usize {
    let cap = delta * start_size as f64;
    let mut total = 0u64;
    for (i, &s) in blue_sizes.iter().enumerate() {
        total += s;
        if total as f64 > cap {
            return i + 1;
        }
    }
    blue_sizes.len()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Color {
    None,
    Red,
    Blue,
}

struct Scratch {
    color: Vec<Color>,
    open: Vec<bool>,
    start_size: Vec<u64>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Self { color: vec![Color::None; n], open: vec![false; n], start_size: vec![0; n] }
    }
}

/// Contracts every edge of weight at least `threshold`.
#[allow(clippy::too_many_arguments)]
fn contract_layer<F>(
    cg: &mut ClusteredGraph,
    scratch: &mut Scratch,
    threshold: f64,
    delta: f64,
    seed: u64,
    layer: u32,
    stats: &mut LayerStats,
    before: &mut F,
) -> Result<()>
where
    F: FnMut(&ClusteredGraph, ClusterId, ClusterId),
{
    let in_layer = |cg: &ClusteredGraph, c: ClusterId| {
        cg.neighbors(c).any(|(x, agg)| crate::linkage::average_weight(agg, cg.size(c), cg.size(x)) >= threshold)
    };
    let mut active: Vec<ClusterId> = (0..cg.capacity() as u32)
        .into_par_iter()
        .filter(|&c| cg.is_alive(c) && in_layer(cg, c))
        .collect();

    let mut outer = 0u32;
    loop {
        if outer > 0 {
            let view = &*cg;
            active = active.into_par_iter().filter(|&c| view.is_alive(c) && in_layer(view, c)).collect();
        }
        if active.is_empty() {
            return Ok(());
        }
        outer += 1;
        let key = RoundKey { layer, outer, inner: 0 };

        let colors: Vec<Color> = active
            .par_iter()
            .map(|&c| if stream(seed, key, Purpose::Color, c).gen::<bool>() { Color::Red } else { Color::Blue })
            .collect();
        for (&c, &col) in active.iter().zip(&colors) {
            scratch.color[c as usize] = col;
            if col == Color::Red {
                scratch.open[c as usize] = true;
                scratch.start_size[c as usize] = cg.size(c);
            }
        }

        // Layer edges from each blue to a red that is not smaller.
        let view = &*cg;
        let color = &scratch.color;
        let mut work: Vec<(ClusterId, Vec<ClusterId>)> = active
            .par_iter()
            .filter(|&&b| color[b as usize] == Color::Blue)
            .filter_map(|&b| {
                let sb = view.size(b);
                let mut reds: Vec<ClusterId> = view
                    .neighbors(b)
                    .filter(|&(r, agg)| {
                        color[r as usize] == Color::Red
                            && (view.size(r), r) > (sb, b)
                            && crate::linkage::average_weight(agg, sb, view.size(r)) >= threshold
                    })
                    .map(|(r, _)| r)
                    .collect();
                if reds.is_empty() {
                    return None;
                }
                reds.sort_unstable();
                Some((b, reds))
            })
            .collect();

        let mut inner = 0u32;
        while !work.is_empty() {
            inner += 1;
            let key = RoundKey { layer, outer, inner };
            let mut proposals: Vec<(ClusterId, u64, ClusterId)> = work
                .par_iter()
                .map(|(b, reds)| {
                    let mut rng = stream(seed, key, Purpose::Proposal, *b);
                    let r = reds[rng.gen_range(0..reds.len())];
                    (r, rng.gen::<u64>(), *b)
                })
                .collect();
            proposals.par_sort_unstable();

            let mut batch = MergeBatch::new();
            let mut touched: Vec<ClusterId> = Vec::new();
            for group in proposals.chunk_by(|a, b| a.0 == b.0) {
                let r = group[0].0;
                let sizes: Vec<u64> = group.iter().map(|p| cg.size(p.2)).collect();
                let take = accepted_prefix(&sizes, scratch.start_size[r as usize], delta);
                for p in &group[..take] {
                    batch.push(r, p.2);
                }
                touched.push(r);
            }
            cg.multi_merge_with(&batch, |view, r, b| before(view, r, b))?;
            stats.merges += batch.len();
            for r in touched {
                let grown = cg.size(r) as f64 > (1.0 + delta) * scratch.start_size[r as usize] as f64;
                if grown {
                    scratch.open[r as usize] = false;
                }
            }

            let view = &*cg;
            let open = &scratch.open;
            work = std::mem::take(&mut work)
                .into_par_iter()
                .filter_map(|(b, mut reds)| {
                    if !view.is_alive(b) {
                        return None;
                    }
                    reds.retain(|&r| {
                        open[r as usize] && view.weight(r, b).is_some_and(|w| w >= threshold)
                    });
                    (!reds.is_empty()).then_some((b, reds))
                })
                .collect();
        }
        stats.inner_rounds.push(inner as usize);

        for &c in &active {
            scratch.color[c as usize] = Color::None;
            scratch.open[c as usize] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> SimilarityGraph {
        SimilarityGraph::from_edges(3, [(0, 1, 3.0), (1, 2, 2.0)]).unwrap()
    }

    #[test]
    fn delta_schedule() {
        assert_eq!(ParhacParams::new(0.75).delta(), 0.25);
        assert_eq!(ParhacParams::new(4.0).delta(), 2.0 / 3.0);
        assert_eq!(ParhacParams::new(0.0).delta(), 0.0);
        assert!(ParhacParams::new(-1.0).validate().is_err());
        assert!(ParhacParams::new(f64::NAN).validate().is_err());
    }

    #[test]
    fn exact_path() {
        let d = run(&path3(), &ParhacParams::new(0.0)).unwrap();
        assert_eq!(d.merge_similarities(), vec![3.0, 1.0]);
        assert_eq!(d.roots().len(), 1);
    }

    #[test]
    fn edgeless_forest() {
        let d = run(&SimilarityGraph::empty(3), &ParhacParams::new(0.1)).unwrap();
        assert_eq!(d.merges().len(), 0);
        assert_eq!(d.roots(), vec![0, 1, 2]);
    }

    #[test]
    fn single_edge() {
        let g = SimilarityGraph::from_edges(2, [(0, 1, 5.0)]).unwrap();
        let (d, stats) = run_with_stats(&g, &ParhacParams::new(0.5)).unwrap();
        assert_eq!(d.merge_similarities(), vec![5.0]);
        assert_eq!(stats.num_layers(), 1);
        assert_eq!(stats.layers[0].inner_rounds.iter().filter(|&&i| i > 0).count(), 1);
    }

    #[test]
    fn prefix_rule() {
        assert_eq!(accepted_prefix(&[2, 2, 2], 10, 0.1), 1);
        assert_eq!(accepted_prefix(&[2, 2, 2], 10, 1.0), 3);
        assert_eq!(accepted_prefix(&[1, 1, 1], 1, 0.0), 1);
        assert_eq!(accepted_prefix(&[], 4, 0.1), 0);
    }

    #[test]
    fn star_merges_stay_within_slack() {
        let g = SimilarityGraph::from_edges(5, (1..5).map(|l| (0, l, 1.0))).unwrap();
        for seed in 0..20 {
            let params = ParhacParams::new(0.3).with_seed(seed);
            let mut sims = Vec::new();
            let (d, _) = run_observed(&g, &params, |cg, r, b| {
                sims.push(cg.normalized_weight(r, b).unwrap());
            })
            .unwrap();
            assert_eq!(d.merges().len(), 4);
            assert_eq!(sims, d.merge_similarities());
        }
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let edges: Vec<_> = (0..40u32)
            .flat_map(|u| (u + 1..40).filter(move |v| (u * 7 + v * 13) % 5 == 0).map(move |v| (u, v, (u * 40 + v + 1) as f64)))
            .collect();
        let g = SimilarityGraph::from_edges(40, edges).unwrap();
        let base = run(&g, &ParhacParams::new(0.1).with_seed(3).with_threads(1)).unwrap();
        for t in [2, 4] {
            let d = run(&g, &ParhacParams::new(0.1).with_seed(3).with_threads(t)).unwrap();
            assert_eq!(d, base);
        }
    }
}
