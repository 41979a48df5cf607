use rayon::prelude::*;

use crate::clustered::{ClusterId, ClusteredGraph, MergeBatch};
use crate::dendrogram::Dendrogram;
use crate::error::Result;
use crate::graph::SimilarityGraph;

/// Output of [`rac`].
#[derive(Clone, Debug)]
pub struct RacResult {
    pub dendrogram: Dendrogram,
    pub rounds: usize,
}

/// Reciprocal agglomerative clustering: every round merges all pairs of
/// clusters that are each other's heaviest neighbor. Weight ties go to the
/// lexicographically smaller edge.
pub fn rac(g: &SimilarityGraph) -> Result<RacResult> {
    g.require_positive()?;
    let mut cg = ClusteredGraph::new(g);
    let mut rounds = 0;
    loop {
        let view = &cg;
        let best: Vec<Option<ClusterId>> = (0..view.capacity() as ClusterId)
            .into_par_iter()
            .map(|c| if view.is_alive(c) { view.best_edge(c).map(|(_, x)| x) } else { None })
            .collect();
        let mut batch = MergeBatch::new();
        for (c, &x) in best.iter().enumerate() {
            let c = c as ClusterId;
            if let Some(x) = x {
                if c < x && best[x as usize] == Some(c) {
                    if (cg.size(x), std::cmp::Reverse(x)) > (cg.size(c), std::cmp::Reverse(c)) {
                        batch.push(x, c);
                    } else {
                        batch.push(c, x);
                    }
                }
            }
        }
        if batch.is_empty() {
            break;
        }
        rounds += 1;
        cg.multi_merge(&batch)?;
    }
    Ok(RacResult { dendrogram: cg.into_dendrogram(), rounds })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_takes_two_rounds() {
        let g = SimilarityGraph::from_edges(3, [(0, 1, 3.0), (1, 2, 2.0)]).unwrap();
        let r = rac(&g).unwrap();
        assert_eq!(r.rounds, 2);
        assert_eq!(r.dendrogram.merge_similarities(), vec![3.0, 1.0]);
    }

    #[test]
    fn matching_takes_one_round() {
        let g = SimilarityGraph::from_edges(6, [(0, 1, 1.0), (2, 3, 2.0), (4, 5, 3.0)]).unwrap();
        let r = rac(&g).unwrap();
        assert_eq!(r.rounds, 1);
        assert_eq!(r.dendrogram.merges().len(), 3);
    }
}
