mod common;

use common::{rng, sorted, Tracker};
use parhac_core::baselines::{affinity, exact_bruteforce, exact_heap, rac, scc, SccParams};
use parhac_core::synth::{decreasing_path, gnm, random_connected};
use parhac_core::{parhac, Clustering, LinkageKind, ParhacParams, SimilarityGraph};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_engines_agree(seed in any::<u64>(), n in 2usize..48, extra in 0usize..120) {
        let g = random_connected(&mut rng(seed), n, extra);
        let oracle = sorted(&exact_bruteforce(&g, LinkageKind::Average).unwrap());
        prop_assert_eq!(&sorted(&exact_heap(&g).unwrap()), &oracle);
        prop_assert_eq!(&sorted(&rac(&g).unwrap().dendrogram), &oracle);
        let d = parhac::run(&g, &ParhacParams::new(0.0).with_seed(seed)).unwrap();
        prop_assert_eq!(&sorted(&d), &oracle);
    }

    #[test]
    fn disconnected_inputs_give_forests(seed in any::<u64>(), n in 2usize..40, m in 0usize..30) {
        let g = gnm(&mut rng(seed), n, m);
        let components = Clustering::new(g.component_labels());
        let oracle = exact_bruteforce(&g, LinkageKind::Average).unwrap();
        for d in [
            exact_heap(&g).unwrap(),
            rac(&g).unwrap().dendrogram,
            parhac::run(&g, &ParhacParams::new(0.0)).unwrap(),
            parhac::run(&g, &ParhacParams::new(0.5).with_seed(seed)).unwrap(),
            affinity(&g).unwrap().dendrogram,
        ] {
            d.validate().unwrap();
            prop_assert!(Clustering::from_dendrogram_roots(&d).same_partition(&components));
            prop_assert_eq!(d.merges().len(), oracle.merges().len());
        }
    }

    #[test]
    fn merge_similarities_match_the_oracle_at_merge_time(seed in any::<u64>(), n in 2usize..40) {
        let g = random_connected(&mut rng(seed), n, 2 * n);
        let mut t = Tracker::new(n);
        let (d, _) = parhac::run_observed(&g, &ParhacParams::new(0.2).with_seed(seed), |cg, red, blue| {
            assert_eq!(cg.weight(red, blue), t.similarity(&g, red, blue));
            t.merge(red, blue);
        })
        .unwrap();
        prop_assert_eq!(d.merges().len(), n - 1);
    }
}

#[test]
fn rac_rounds_on_a_decreasing_path() {
    let n = 200;
    let r = rac(&decreasing_path(n)).unwrap();
    // Merging halves a cluster's pull on its next neighbour, so reciprocal
    // pairs appear only a few at a time.
    assert!(r.rounds >= n / 4, "{} rounds", r.rounds);
    let (_, stats) = parhac::run_with_stats(&decreasing_path(n), &ParhacParams::new(0.1)).unwrap();
    assert!(stats.max_inner_per_outer() <= 16 * (n as f64).log2() as usize);
}

#[test]
fn affinity_rounds_are_nested() {
    let g = random_connected(&mut rng(3), 60, 90);
    let res = affinity(&g).unwrap();
    assert!(!res.rounds.is_empty());
    for pair in res.rounds.windows(2) {
        assert!(pair[1].num_clusters() < pair[0].num_clusters());
        // Every cluster of the earlier round sits inside one of the later.
        let (a, b) = (pair[0].labels(), pair[1].labels());
        for u in 0..a.len() {
            for v in 0..a.len() {
                if a[u] == a[v] {
                    assert_eq!(b[u], b[v]);
                }
            }
        }
    }
    assert_eq!(res.rounds.last().unwrap().num_clusters(), 1);
}

#[test]
fn scc_respects_thresholds() {
    let g = SimilarityGraph::from_edges(4, [(0, 1, 8.0), (1, 2, 4.0), (2, 3, 1.0)]).unwrap();
    let params = SccParams::new(3, 1.0, 8.0).unwrap();
    let res = scc(&g, &params).unwrap();
    res.dendrogram.validate().unwrap();
    let mut sims = res.dendrogram.merge_similarities();
    sims.sort_by(|a, b| b.total_cmp(a));
    assert_eq!(sims[0], 8.0);
    // No merge ever uses an edge lighter than the lowest threshold.
    assert!(sims.iter().all(|&s| s >= 1.0 / 9.0));
}
