use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use parhac_bench::random_graph;
use parhac_core::baselines::{affinity, exact_heap, rac, seqhac};
use parhac_core::{parhac, ParhacParams};

fn epsilon_sweep(c: &mut Criterion) {
    let g = random_graph(20_000, 200_000, 1);
    let mut group = c.benchmark_group("parhac_epsilon");
    group.sample_size(10);
    for eps in [0.01, 0.1, 1.0] {
        group.bench_with_input(BenchmarkId::from_parameter(eps), &eps, |b, &eps| {
            b.iter(|| parhac::run(&g, &ParhacParams::new(eps).with_seed(3)).unwrap())
        });
    }
    group.finish();
}

fn thread_sweep(c: &mut Criterion) {
    let g = random_graph(20_000, 200_000, 2);
    let max = std::thread::available_parallelism().map_or(1, |p| p.get());
    let mut counts = vec![1, 2, 4, max];
    counts.sort_unstable();
    counts.dedup();
    let mut group = c.benchmark_group("parhac_threads");
    group.sample_size(10);
    for t in counts {
        group.bench_with_input(BenchmarkId::from_parameter(t), &t, |b, &t| {
            b.iter(|| parhac::run(&g, &ParhacParams::new(0.1).with_seed(3).with_threads(t)).unwrap())
        });
    }
    group.finish();
}

fn algorithms(c: &mut Criterion) {
    let g = random_graph(5_000, 50_000, 3);
    let mut group = c.benchmark_group("algorithms");
    group.sample_size(10);
    group.bench_function("parhac_0.1", |b| b.iter(|| parhac::run(&g, &ParhacParams::new(0.1)).unwrap()));
    group.bench_function("seqhac_0.1", |b| b.iter(|| seqhac(&g, 0.1).unwrap()));
    group.bench_function("exact_heap", |b| b.iter(|| exact_heap(&g).unwrap()));
    group.bench_function("rac", |b| b.iter(|| rac(&g).unwrap()));
    group.bench_function("affinity", |b| b.iter(|| affinity(&g).unwrap()));
    group.finish();
}

criterion_group!(benches, epsilon_sweep, thread_sweep, algorithms);
criterion_main!(benches);
