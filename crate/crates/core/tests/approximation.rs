mod common;

use common::{rng, Tracker};
use parhac_core::baselines::seqhac_observed;
use parhac_core::synth::{gnm, random_connected};
use parhac_core::{parhac, ParhacParams, SimilarityGraph};
use proptest::prelude::*;

/// Counts merges whose similarity falls below `W* / (1 + eps)`, with both
/// sides recomputed from the original graph.
struct Audit<'a> {
    g: &'a SimilarityGraph,
    eps: f64,
    tracker: Tracker,
    violations: usize,
    merges: usize,
}

impl<'a> Audit<'a> {
    fn new(g: &'a SimilarityGraph, eps: f64) -> Self {
        Self { g, eps, tracker: Tracker::new(g.n()), violations: 0, merges: 0 }
    }

    fn observe(&mut self, survivor: u32, absorbed: u32) {
        let sim = self.tracker.similarity(self.g, survivor, absorbed).expect("merged clusters are adjacent");
        let w_star = self.tracker.max_similarity(self.g).expect("an edge exists");
        if sim < w_star / (1.0 + self.eps) {
            self.violations += 1;
        }
        self.merges += 1;
        self.tracker.merge(survivor, absorbed);
    }
}

fn audit_parhac(g: &SimilarityGraph, eps: f64, seed: u64) -> (usize, usize) {
    let mut a = Audit::new(g, eps);
    parhac::run_observed(g, &ParhacParams::new(eps).with_seed(seed), |_, r, b| a.observe(r, b)).unwrap();
    (a.violations, a.merges)
}

fn audit_seqhac(g: &SimilarityGraph, eps: f64) -> (usize, usize) {
    let mut a = Audit::new(g, eps);
    seqhac_observed(g, eps, |_, s, o| a.observe(s, o)).unwrap();
    (a.violations, a.merges)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn every_merge_is_within_the_approximation(
        seed in any::<u64>(),
        n in 2usize..80,
        extra in 0usize..200,
        eps in prop::sample::select(vec![0.01, 0.1, 0.5, 1.0, 4.0]),
    ) {
        let g = random_connected(&mut rng(seed), n, extra);
        let (v, m) = audit_parhac(&g, eps, seed);
        prop_assert_eq!((v, m), (0, n - 1));
        let (v, m) = audit_seqhac(&g, eps);
        prop_assert_eq!((v, m), (0, n - 1));
    }

    #[test]
    fn sparse_forests_are_audited_too(seed in any::<u64>(), n in 2usize..60, m in 0usize..60) {
        let g = gnm(&mut rng(seed), n, m);
        prop_assert_eq!(audit_parhac(&g, 0.1, seed).0, 0);
        prop_assert_eq!(audit_seqhac(&g, 0.1).0, 0);
    }
}

#[test]
fn unit_weights_are_audited() {
    // Every edge ties; any merge is within slack of the maximum.
    let g = SimilarityGraph::from_edges(
        6,
        [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0), (4, 5, 1.0), (5, 0, 1.0), (0, 3, 1.0)],
    )
    .unwrap();
    for seed in 0..20 {
        assert_eq!(audit_parhac(&g, 0.25, seed), (0, 5));
    }
    assert_eq!(audit_seqhac(&g, 0.25), (0, 5));
}
