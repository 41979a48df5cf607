use criterion::{criterion_group, criterion_main, Criterion};
use parhac_bench::{blob_points, random_graph};
use parhac_core::metrics::{best_cut_score, dasgupta_cost, dendrogram_purity, Measure};
use parhac_core::pointset::knn_similarity_graph;
use parhac_core::{parhac, Clustering, ParhacParams};

fn knn(c: &mut Criterion) {
    let points = blob_points(5_000, 8, 10, 4);
    let mut group = c.benchmark_group("knn");
    group.sample_size(10);
    group.bench_function("k10_n5000_d8", |b| b.iter(|| knn_similarity_graph(&points, 10).unwrap()));
    group.finish();
}

fn metrics(c: &mut Criterion) {
    let points = blob_points(5_000, 8, 10, 5);
    let truth = Clustering::new(points.labels().unwrap().to_vec());
    let g = knn_similarity_graph(&points, 10).unwrap();
    let d = parhac::run(&g, &ParhacParams::new(0.1)).unwrap();
    let mut group = c.benchmark_group("metrics");
    group.bench_function("best_cut_ari", |b| b.iter(|| best_cut_score(&d, &truth, Measure::Ari).unwrap()));
    group.bench_function("best_cut_nmi", |b| b.iter(|| best_cut_score(&d, &truth, Measure::Nmi).unwrap()));
    group.bench_function("purity", |b| b.iter(|| dendrogram_purity(&d, &truth).unwrap()));
    group.bench_function("dasgupta", |b| b.iter(|| dasgupta_cost(&d, &g).unwrap()));
    group.finish();

    let big = random_graph(100_000, 1_000_000, 6);
    let mut group = c.benchmark_group("parhac_large");
    group.sample_size(10);
    group.bench_function("n1e5_m1e6_eps0.1", |b| b.iter(|| parhac::run(&big, &ParhacParams::new(0.1)).unwrap()));
    group.finish();
}

criterion_group!(benches, knn, metrics);
criterion_main!(benches);
