//! Mergeable cluster-level view of a similarity graph.
//!
//! Each live cluster keeps its leaf count and a map from neighboring cluster to
//! the aggregate cut weight (the plain sum of original edge weights crossing
//! the cut). Similarities are derived on demand with
//! [`average_weight`](crate::linkage::average_weight), so no stored value ever
//! needs renormalizing. A merge keeps the red (receiving) id and kills the blue
//! one; ids are never reused.

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::dendrogram::{Dendrogram, NodeId};
use crate::error::{Error, Result};
use crate::graph::SimilarityGraph;
use crate::linkage::average_weight;

pub type ClusterId = u32;

/// Ordered `(red, blue)` merges applied as one unit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MergeBatch {
    pairs: Vec<(ClusterId, ClusterId)>,
}

impl MergeBatch {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: Vec<(ClusterId, ClusterId)>) -> Self {
        Self { pairs }
    }

    pub fn push(&mut self, red: ClusterId, blue: ClusterId) {
        self.pairs.push((red, blue));
    }

    pub fn pairs(&self) -> &[(ClusterId, ClusterId)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct ClusteredGraph {
    size: Vec<u64>,
    alive: Vec<bool>,
    adj: Vec<FxHashMap<ClusterId, f64>>,
    node: Vec<NodeId>,
    live: usize,
    internalized: f64,
    dendrogram: Dendrogram,
}

impl ClusteredGraph {
    /// One singleton cluster per vertex; aggregates equal the edge weights.
    pub fn new(g: &SimilarityGraph) -> Self {
        let n = g.n();
        let adj = (0..n as u32)
            .map(|u| {
                let nbrs = g.neighbors(u);
                let mut map = FxHashMap::with_capacity_and_hasher(nbrs.len(), Default::default());
                map.extend(nbrs.iter().copied());
                map
            })
            .collect();
        Self {
            size: vec![1; n],
            alive: vec![true; n],
            adj,
            node: (0..n).collect(),
            live: n,
            internalized: 0.0,
            dendrogram: Dendrogram::new(n),
        }
    }

    /// Total number of cluster ids ever issued (live or dead).
    pub fn capacity(&self) -> usize {
        self.size.len()
    }

    pub fn num_live(&self) -> usize {
        self.live
    }

    pub fn is_alive(&self, c: ClusterId) -> bool {
        self.alive.get(c as usize).copied().unwrap_or(false)
    }

    pub fn size(&self, c: ClusterId) -> u64 {
        self.size[c as usize]
    }

    /// Dendrogram node currently representing cluster `c`.
    pub fn node(&self, c: ClusterId) -> NodeId {
        self.node[c as usize]
    }

    pub fn degree(&self, c: ClusterId) -> usize {
        self.adj[c as usize].len()
    }

    pub fn live_clusters(&self) -> impl Iterator<Item = ClusterId> + '_ {
        (0..self.capacity() as u32).filter(|&c| self.alive[c as usize])
    }

    /// Neighbors with aggregate weights, in unspecified order.
    pub fn neighbors(&self, c: ClusterId) -> impl Iterator<Item = (ClusterId, f64)> + '_ {
        self.adj[c as usize].iter().map(|(&x, &w)| (x, w))
    }

    /// Neighbors with aggregate weights, sorted by id.
    pub fn sorted_neighbors(&self, c: ClusterId) -> Vec<(ClusterId, f64)> {
        let mut v: Vec<_> = self.neighbors(c).collect();
        v.sort_unstable_by_key(|&(x, _)| x);
        v
    }

    pub fn aggregate(&self, a: ClusterId, b: ClusterId) -> Option<f64> {
        self.adj.get(a as usize)?.get(&b).copied()
    }

    /// Average-linkage similarity of a live edge.
    pub fn normalized_weight(&self, a: ClusterId, b: ClusterId) -> Result<f64> {
        for c in [a, b] {
            if !self.is_alive(c) {
                return Err(Error::DeadCluster(c));
            }
        }
        self.weight(a, b).ok_or(Error::MissingEdge(a, b))
    }

    /// Like [`normalized_weight`](Self::normalized_weight) without liveness checks.
    #[inline]
    pub fn weight(&self, a: ClusterId, b: ClusterId) -> Option<f64> {
        self.aggregate(a, b).map(|agg| average_weight(agg, self.size(a), self.size(b)))
    }

    /// Heaviest incident edge of `c` as `(similarity, neighbor)`; ties go to
    /// the smaller neighbor id.
    pub fn best_edge(&self, c: ClusterId) -> Option<(f64, ClusterId)> {
        let sc = self.size(c);
        self.neighbors(c)
            .map(|(x, agg)| (average_weight(agg, sc, self.size(x)), x))
            .reduce(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
    }

    /// Largest similarity over all live edges, or `None` if none remain.
    pub fn current_max_weight(&self) -> Option<f64> {
        (0..self.capacity() as u32)
            .into_par_iter()
            .filter(|&c| self.alive[c as usize])
            .filter_map(|c| self.best_edge(c).map(|(w, _)| w))
            .reduce_with(f64::max)
    }

    pub fn has_edges(&self) -> bool {
        self.live_clusters().any(|c| self.degree(c) > 0)
    }

    /// Sum of aggregates over live edges, each counted once.
    pub fn live_aggregate_total(&self) -> f64 {
        self.live_clusters()
            .flat_map(|c| self.neighbors(c).filter(move |&(x, _)| x > c).map(|(_, w)| w))
            .sum()
    }

    /// Weight of original edges that became internal to a cluster.
    pub fn internalized_weight(&self) -> f64 {
        self.internalized
    }

    pub fn dendrogram(&self) -> &Dendrogram {
        &self.dendrogram
    }

    pub fn into_dendrogram(self) -> Dendrogram {
        self.dendrogram
    }

    /// Absorbs `blue` into `red` and records the binary merge. Returns the
    /// exact similarity of the pair just before the merge.
    pub fn merge_pair(&mut self, red: ClusterId, blue: ClusterId) -> Result<f64> {
        for c in [red, blue] {
            if !self.is_alive(c) {
                return Err(Error::DeadCluster(c));
            }
        }
        let sim = self.weight(red, blue).ok_or(Error::MissingEdge(red, blue))?;
        let (r, b) = (red as usize, blue as usize);
        let blue_adj = std::mem::take(&mut self.adj[b]);
        for (x, w) in blue_adj {
            if x == red {
                self.adj[r].remove(&blue);
                self.internalized += w;
                continue;
            }
            let xs = &mut self.adj[x as usize];
            xs.remove(&blue);
            *xs.entry(red).or_insert(0.0) += w;
            *self.adj[r].entry(x).or_insert(0.0) += w;
        }
        self.size[r] += self.size[b];
        self.alive[b] = false;
        self.live -= 1;
        self.node[r] = self
            .dendrogram
            .push(self.node[r], self.node[b], sim)
            .expect("live clusters map to dendrogram roots");
        Ok(sim)
    }

    /// Applies a batch atomically: the whole batch is validated before any
    /// merge happens. Several blues sent to one red are merged left-deep in
    /// batch order, each binary step recorded with the exact similarity at the
    /// moment it is applied. Returns those similarities in batch order.
    ///
    /// A blue must touch the red cluster as it stands when its turn comes
    /// (the red itself or an earlier blue of the same red).
    pub fn multi_merge(&mut self, batch: &MergeBatch) -> Result<Vec<f64>> {
        self.multi_merge_with(batch, |_, _, _| {})
    }

    /// [`multi_merge`](Self::multi_merge) that shows the graph to `before`
    /// ahead of every binary merge.
    pub fn multi_merge_with<F>(&mut self, batch: &MergeBatch, mut before: F) -> Result<Vec<f64>>
    where
        F: FnMut(&ClusteredGraph, ClusterId, ClusterId),
    {
        self.validate_batch(batch)?;
        let mut sims = Vec::with_capacity(batch.len());
        for &(r, b) in batch.pairs() {
            before(self, r, b);
            sims.push(self.merge_pair(r, b)?);
        }
        Ok(sims)
    }

    fn validate_batch(&self, batch: &MergeBatch) -> Result<()> {
        let mut owner: FxHashMap<ClusterId, ClusterId> = FxHashMap::default();
        let mut reds: FxHashMap<ClusterId, ()> = FxHashMap::default();
        for &(r, b) in batch.pairs() {
            for c in [r, b] {
                if !self.is_alive(c) {
                    return Err(Error::DeadCluster(c));
                }
            }
            if r == b {
                return Err(Error::InvalidBatch(format!("cluster {r} merged into itself")));
            }
            if owner.contains_key(&r) {
                return Err(Error::InvalidBatch(format!("cluster {r} is both red and blue")));
            }
            if reds.contains_key(&b) {
                return Err(Error::InvalidBatch(format!("cluster {b} is both red and blue")));
            }
            if owner.contains_key(&b) {
                return Err(Error::InvalidBatch(format!("cluster {b} is blue twice")));
            }
            let touches = self.adj[b as usize]
                .keys()
                .any(|&x| x == r || owner.get(&x) == Some(&r));
            if !touches {
                return Err(Error::MissingEdge(r, b));
            }
            reds.insert(r, ());
            owner.insert(b, r);
        }
        Ok(())
    }
}
