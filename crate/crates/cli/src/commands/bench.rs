use std::time::Instant;

use parhac_core::graph::read_edge_list;
use parhac_core::synth::gnm;
use parhac_core::SimilarityGraph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::args::{Algo, BenchArgs};
use crate::engine::{self, Counters, SccSettings, Settings};
use crate::error::{CliError, CliResult};
use crate::report::Record;

struct Cell {
    algo: Algo,
    scheme: String,
    epsilon: Option<f64>,
    threads: usize,
    median_seconds: f64,
    counters: Counters,
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

fn median_count(v: &[Option<usize>]) -> Option<usize> {
    let mut xs: Vec<usize> = v.iter().copied().collect::<Option<_>>()?;
    xs.sort_unstable();
    xs.get(xs.len() / 2).copied()
}

fn base_graph(args: &BenchArgs) -> CliResult<SimilarityGraph> {
    match (&args.input, args.vertices, args.edges) {
        (Some(p), _, _) => Ok(read_edge_list(p)?),
        (None, Some(n), Some(m)) => Ok(gnm(&mut ChaCha8Rng::seed_from_u64(args.seed), n, m)),
        _ => Err(CliError::Usage("bench needs --input or --vertices with --edges".into())),
    }
}

fn dash<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

pub fn bench(args: BenchArgs) -> CliResult<()> {
    if args.repeats == 0 {
        return Err(CliError::Usage("--repeats must be at least 1".into()));
    }
    if args.thread_counts.contains(&0) {
        return Err(CliError::Usage("thread counts must be at least 1".into()));
    }
    let base = base_graph(&args)?;
    let mut cells = Vec::new();
    for &choice in &args.weight_schemes {
        let (g, scheme) = engine::weigh(base.clone(), choice, args.seed)?;
        for &algo in &args.algos {
            let epsilons: Vec<Option<f64>> =
                if algo.uses_epsilon() { args.epsilons.iter().map(|&e| Some(e)).collect() } else { vec![None] };
            for epsilon in epsilons {
                for &threads in &args.thread_counts {
                    let mut times = Vec::with_capacity(args.repeats);
                    let mut runs = Vec::with_capacity(args.repeats);
                    for r in 0..args.repeats {
                        let settings = Settings {
                            algo,
                            epsilon: epsilon.unwrap_or(0.0),
                            seed: args.seed.wrapping_add(r as u64),
                            threads: Some(threads),
                            scc: (algo == Algo::Scc).then(|| SccSettings {
                                rounds: 100,
                                lower: g.min_weight().unwrap_or(1.0),
                                upper: g.max_weight().unwrap_or(1.0),
                            }),
                        };
                        settings.validate()?;
                        let start = Instant::now();
                        let (_, c) = engine::run(&g, &settings)?;
                        times.push(start.elapsed().as_secs_f64());
                        runs.push(c);
                    }
                    let pick = |f: fn(&Counters) -> Option<usize>| median_count(&runs.iter().map(f).collect::<Vec<_>>());
                    cells.push(Cell {
                        algo,
                        scheme: scheme.clone(),
                        epsilon,
                        threads,
                        median_seconds: median(times),
                        counters: Counters {
                            layers: pick(|c| c.layers),
                            outer_rounds: pick(|c| c.outer_rounds),
                            inner_rounds: pick(|c| c.inner_rounds),
                            rounds: pick(|c| c.rounds),
                        },
                    });
                }
            }
        }
    }

    println!("graph: {} vertices, {} edges, {} repeats per cell", base.n(), base.m(), args.repeats);
    println!(
        "{:<9} {:<12} {:>8} {:>7} {:>12} {:>7} {:>7} {:>7} {:>7}",
        "algo", "weights", "epsilon", "threads", "median_s", "layers", "outer", "inner", "rounds"
    );
    for c in &cells {
        println!(
            "{:<9} {:<12} {:>8} {:>7} {:>12.6} {:>7} {:>7} {:>7} {:>7}",
            c.algo.name(),
            c.scheme,
            dash(c.epsilon),
            c.threads,
            c.median_seconds,
            dash(c.counters.layers),
            dash(c.counters.outer_rounds),
            dash(c.counters.inner_rounds),
            dash(c.counters.rounds),
        );
        if let Some(report) = &args.report {
            let mut r = Record::new("bench");
            r.set("algorithm", c.algo.name())
                .set("weight_scheme", c.scheme.clone())
                .set("epsilon", c.epsilon)
                .set("threads", c.threads)
                .set("repeats", args.repeats)
                .set("vertices", base.n())
                .set("edges", base.m())
                .set("median_seconds", c.median_seconds)
                .extend(&c.counters);
            r.append_to(report)?;
        }
    }
    Ok(())
}
