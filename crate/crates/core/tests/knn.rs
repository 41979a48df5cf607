mod common;

use common::rng;
use parhac_core::pointset::{knn_similarity_graph, BruteForceKnn, NeighborBuilder};
use parhac_core::synth::{grid_points, uniform_points};
use parhac_core::PointSet;
use proptest::prelude::*;

/// Neighbor ids from a full distance matrix, ranked by (distance, id).
fn argsort_neighbors(p: &PointSet, k: usize) -> Vec<Vec<u32>> {
    let n = p.len();
    let dist: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| p.point(i).iter().zip(p.point(j)).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt())
                .collect()
        })
        .collect();
    (0..n)
        .map(|i| {
            let mut order: Vec<u32> = (0..n as u32).filter(|&j| j as usize != i).collect();
            order.sort_by(|&a, &b| dist[i][a as usize].total_cmp(&dist[i][b as usize]).then(a.cmp(&b)));
            order.truncate(k);
            order
        })
        .collect()
}

fn check(p: &PointSet, k: usize) {
    let expected = argsort_neighbors(p, k);
    let got = BruteForceKnn::default().neighbors(p, k).unwrap();
    for (i, (e, g)) in expected.iter().zip(&got).enumerate() {
        let ids: Vec<u32> = g.iter().map(|x| x.0).collect();
        assert_eq!(&ids, e, "neighbors of {i}");
    }
    let g = knn_similarity_graph(p, k).unwrap();
    assert_eq!(g.max_weight(), Some(1.0));
    for (i, e) in expected.iter().enumerate() {
        for &j in e {
            assert!(g.weight(i as u32, j).is_some());
        }
    }
    let expected_edges: std::collections::BTreeSet<(u32, u32)> = expected
        .iter()
        .enumerate()
        .flat_map(|(i, l)| l.iter().map(move |&j| ((i as u32).min(j), (i as u32).max(j))))
        .collect();
    assert_eq!(g.m(), expected_edges.len());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn neighbors_match_argsort(seed in any::<u64>(), n in 2usize..120, dim in 1usize..8, k in 1usize..12) {
        let p = uniform_points(&mut rng(seed), n, dim);
        check(&p, k.min(n - 1));
    }

    #[test]
    fn tied_distances_break_by_id(seed in any::<u64>(), n in 2usize..80, k in 1usize..6) {
        let p = grid_points(&mut rng(seed), n, 2, 3);
        check(&p, k.min(n - 1));
    }
}

#[test]
fn k_must_be_below_n() {
    let p = PointSet::new(1, vec![0.0, 1.0, 2.0], None).unwrap();
    assert!(knn_similarity_graph(&p, 3).is_err());
    assert!(knn_similarity_graph(&p, 0).is_err());
    assert!(knn_similarity_graph(&p, 2).is_ok());
}
