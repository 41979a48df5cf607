mod common;

use common::{rng, Tracker};
use parhac_core::synth::random_connected;
use parhac_core::{ClusteredGraph, MergeBatch, SimilarityGraph};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

/// A random batch: reds and blues are disjoint and each blue touches its red.
fn random_batch<R: Rng>(cg: &ClusteredGraph, rng: &mut R) -> MergeBatch {
    let mut live: Vec<u32> = cg.live_clusters().collect();
    live.shuffle(rng);
    let mut role = vec![0u8; cg.capacity()]; // 0 free, 1 red, 2 blue
    let mut batch = MergeBatch::new();
    for &b in &live {
        if role[b as usize] != 0 {
            continue;
        }
        let reds: Vec<u32> = cg.sorted_neighbors(b).into_iter().map(|(x, _)| x).filter(|&x| role[x as usize] != 2).collect();
        if let Some(&r) = reds.choose(rng) {
            if rng.gen_bool(0.7) {
                role[r as usize] = 1;
                role[b as usize] = 2;
                batch.push(r, b);
            }
        }
    }
    // Group by red so the batch is in a canonical order.
    let mut pairs = batch.pairs().to_vec();
    pairs.sort_by_key(|&(r, _)| r);
    MergeBatch::from_pairs(pairs)
}

fn check_against_rebuild(g: &SimilarityGraph, cg: &ClusteredGraph, t: &Tracker) {
    let cut = t.cut_weights(g);
    let mut seen = 0;
    for a in cg.live_clusters() {
        assert_eq!(cg.size(a), t.size(a));
        for (b, agg) in cg.neighbors(a) {
            let key = (a.min(b), a.max(b));
            assert_eq!(Some(&agg), cut.get(&key), "aggregate for {key:?}");
            seen += 1;
        }
    }
    assert_eq!(seen, 2 * cut.len());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multi_merge_matches_rebuild(seed in any::<u64>(), n in 2usize..40, extra in 0usize..80) {
        let mut r = rng(seed);
        let g = random_connected(&mut r, n, extra);
        let mut cg = ClusteredGraph::new(&g);
        let mut t = Tracker::new(n);
        let total = g.total_weight();
        while cg.has_edges() {
            let batch = random_batch(&cg, &mut r);
            let mut expected = Vec::new();
            let sims = cg
                .multi_merge_with(&batch, |cg, red, blue| {
                    let s = t.similarity(&g, red, blue).expect("adjacent");
                    assert_eq!(cg.weight(red, blue), Some(s));
                    expected.push(s);
                    t.merge(red, blue);
                })
                .unwrap();
            prop_assert_eq!(sims, expected);
            check_against_rebuild(&g, &cg, &t);
            prop_assert_eq!(cg.live_aggregate_total() + cg.internalized_weight(), total);
        }
        prop_assert_eq!(cg.num_live(), 1);
        cg.dendrogram().validate().unwrap();
    }

    #[test]
    fn adjacency_stays_symmetric(seed in any::<u64>(), n in 2usize..30) {
        let mut r = rng(seed);
        let g = random_connected(&mut r, n, n);
        let mut cg = ClusteredGraph::new(&g);
        while cg.has_edges() {
            let batch = random_batch(&cg, &mut r);
            cg.multi_merge(&batch).unwrap();
            for a in cg.live_clusters() {
                for (b, w) in cg.neighbors(a) {
                    prop_assert!(cg.is_alive(b));
                    prop_assert_eq!(cg.aggregate(b, a), Some(w));
                }
            }
        }
    }
}

#[test]
fn rejected_batches_leave_graph_untouched() {
    let g = SimilarityGraph::from_edges(4, [(0, 1, 2.0), (1, 2, 3.0), (2, 3, 4.0)]).unwrap();
    let mut cg = ClusteredGraph::new(&g);
    let before = cg.clone();
    // 3 is not adjacent to 0.
    assert!(cg.multi_merge(&MergeBatch::from_pairs(vec![(1, 2), (0, 3)])).is_err());
    assert_eq!(cg.num_live(), before.num_live());
    assert_eq!(cg.sorted_neighbors(1), before.sorted_neighbors(1));
    assert_eq!(cg.dendrogram().merges().len(), 0);
}
