use std::collections::VecDeque;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::clustered::{ClusterId, ClusteredGraph, MergeBatch};
use crate::dendrogram::Dendrogram;
use crate::error::{Error, Result};
use crate::graph::SimilarityGraph;
use crate::metrics::Clustering;

/// Output of [`affinity`] and [`scc`]: the dendrogram plus the flat
/// clustering left after each round.
#[derive(Clone, Debug)]
pub struct RoundsResult {
    pub dendrogram: Dendrogram,
    pub rounds: Vec<Clustering>,
}

/// Threshold schedule for [`scc`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SccParams {
    pub rounds: usize,
    pub lower: f64,
    pub upper: f64,
}

impl SccParams {
    pub fn new(rounds: usize, lower: f64, upper: f64) -> Result<Self> {
        if rounds == 0 {
            return Err(Error::InvalidParameter("scc needs at least one round".into()));
        }
        if !(lower > 0.0 && lower <= upper && upper.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "scc thresholds need 0 < lower <= upper, got {lower} and {upper}"
            )));
        }
        Ok(Self { rounds, lower, upper })
    }

    /// `U * (L/U)^(R-i)` for round `i` in `1..=R`.
    pub fn threshold(&self, i: usize) -> f64 {
        self.upper * (self.lower / self.upper).powi((self.rounds - i) as i32)
    }
}

/// One Borůvka-style step: each live cluster picks its heaviest neighbor with
/// weight at least `floor`, and every component of picked edges is merged
/// into its smallest id. Returns false when nothing merged.
fn affinity_round(cg: &mut ClusteredGraph, floor: f64) -> Result<bool> {
    let view = &*cg;
    let picks: Vec<(ClusterId, ClusterId)> = (0..view.capacity() as ClusterId)
        .into_par_iter()
        .filter(|&c| view.is_alive(c))
        .filter_map(|c| {
            let sc = view.size(c);
            view.neighbors(c)
                .map(|(x, agg)| (crate::linkage::average_weight(agg, sc, view.size(x)), x))
                .filter(|&(w, _)| w >= floor)
                .reduce(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
                .map(|(_, x)| (c, x))
        })
        .collect();
    if picks.is_empty() {
        return Ok(false);
    }

    let cap = view.capacity();
    let mut uf = UnionFind::<u32>::new(cap);
    let mut chosen: Vec<Vec<ClusterId>> = vec![Vec::new(); cap];
    for &(c, x) in &picks {
        uf.union(c, x);
        chosen[c as usize].push(x);
        chosen[x as usize].push(c);
    }
    for list in chosen.iter_mut() {
        list.sort_unstable();
        list.dedup();
    }

    // Walk each component breadth-first from its smallest id so every blue
    // touches the growing red cluster when its turn comes.
    let mut seen = vec![false; cap];
    let mut batch = MergeBatch::new();
    for rep in 0..cap as ClusterId {
        if seen[rep as usize] || chosen[rep as usize].is_empty() {
            continue;
        }
        debug_assert_eq!(uf.find_mut(rep), uf.find_mut(chosen[rep as usize][0]));
        seen[rep as usize] = true;
        let mut queue = VecDeque::from([rep]);
        while let Some(v) = queue.pop_front() {
            for &x in &chosen[v as usize] {
                if !seen[x as usize] {
                    seen[x as usize] = true;
                    batch.push(rep, x);
                    queue.push_back(x);
                }
            }
        }
    }
    cg.multi_merge(&batch)?;
    Ok(true)
}

fn snapshot(cg: &ClusteredGraph) -> Clustering {
    Clustering::from_dendrogram_roots(cg.dendrogram())
}

/// Affinity clustering: Borůvka rounds until no edges remain.
pub fn affinity(g: &SimilarityGraph) -> Result<RoundsResult> {
    g.require_positive()?;
    let mut cg = ClusteredGraph::new(g);
    let mut rounds = Vec::new();
    while affinity_round(&mut cg, f64::NEG_INFINITY)? {
        rounds.push(snapshot(&cg));
    }
    Ok(RoundsResult { dendrogram: cg.into_dendrogram(), rounds })
}

/// Thresholded affinity: round `i` only considers edges whose weight is at
/// least the `i`-th threshold. Stops early once the graph is edgeless.
pub fn scc(g: &SimilarityGraph, params: &SccParams) -> Result<RoundsResult> {
    g.require_positive()?;
    let mut cg = ClusteredGraph::new(g);
    let mut rounds = Vec::new();
    for i in 1..=params.rounds {
        if !cg.has_edges() {
            break;
        }
        affinity_round(&mut cg, params.threshold(i))?;
        rounds.push(snapshot(&cg));
    }
    Ok(RoundsResult { dendrogram: cg.into_dendrogram(), rounds })
}
