use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use parhac_core::graph::read_edge_list;
use parhac_core::pointset::knn_similarity_graph;
use parhac_core::{Clustering, PointSet, SimilarityGraph};

use crate::args::{ClusterArgs, ClusterPointsArgs, EngineArgs, ReplayArgs, WeightChoice};
use crate::engine::{self, Settings};
use crate::error::{CliError, CliResult};
use crate::manifest::{absolute, sha256_hex, InputDescriptor, Outputs, RunManifest, Timings};
use crate::report::Record;

struct Loaded {
    graph: SimilarityGraph,
    scheme: String,
    labels: Option<Clustering>,
}

fn load(input: &InputDescriptor, weight: WeightChoice, seed: u64) -> CliResult<Loaded> {
    let (graph, labels) = match input {
        InputDescriptor::EdgeList { path } => (read_edge_list(path)?, None),
        InputDescriptor::Points { path, k, label_col } => {
            let points = PointSet::read_csv(path, *label_col)?;
            let g = knn_similarity_graph(&points, *k)?;
            (g, points.labels().map(|l| Clustering::new(l.to_vec())))
        }
    };
    let (graph, scheme) = engine::weigh(graph, weight, seed)?;
    Ok(Loaded { graph, scheme, labels })
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn labels_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".labels");
    PathBuf::from(s)
}

fn execute(command: &str, input: InputDescriptor, args: &EngineArgs) -> CliResult<()> {
    let settings = Settings::from_args(args)?;
    let start = Instant::now();
    let loaded = load(&input, args.weight_scheme, args.seed)?;
    let graph_build_seconds = start.elapsed().as_secs_f64();
    let settings = settings.with_scc_defaults(args, &loaded.graph)?;

    let start = Instant::now();
    let (d, counters) = engine::run(&loaded.graph, &settings)?;
    let cluster_seconds = start.elapsed().as_secs_f64();

    let text = d.to_text();
    write_file(&args.output, text.as_bytes())?;
    let labels = match &loaded.labels {
        Some(l) => {
            let p = labels_path(&args.output);
            write_file(&p, l.to_text().as_bytes())?;
            Some(absolute(&p))
        }
        None => None,
    };
    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        input,
        vertices: loaded.graph.n(),
        edges: loaded.graph.m(),
        algorithm: settings.algo,
        epsilon: settings.epsilon,
        seed: settings.seed,
        threads: settings.threads,
        weight_scheme: loaded.scheme,
        scc: settings.scc,
        counters,
        timings: Timings { graph_build_seconds, cluster_seconds },
        outputs: Outputs { dendrogram: absolute(&args.output), dendrogram_sha256: sha256_hex(text.as_bytes()), labels },
    };
    let manifest_path = RunManifest::path_for(&args.output);
    manifest.write(&manifest_path)?;

    if let Some(report) = &args.report {
        let mut r = Record::new(command);
        r.set("algorithm", settings.algo.name())
            .set("epsilon", settings.epsilon)
            .set("seed", settings.seed)
            .set("threads", settings.threads)
            .set("weight_scheme", manifest.weight_scheme.clone())
            .set("vertices", manifest.vertices)
            .set("edges", manifest.edges)
            .set("merges", d.merges().len())
            .set("trees", d.roots().len())
            .extend(&manifest.timings)
            .extend(&manifest.counters)
            .set("output", manifest.outputs.dendrogram.display().to_string());
        r.append_to(report)?;
    }
    println!(
        "{}: {} vertices, {} edges, {} merges in {:.3}s (graph {:.3}s); wrote {}",
        settings.algo.name(),
        manifest.vertices,
        manifest.edges,
        d.merges().len(),
        cluster_seconds,
        graph_build_seconds,
        args.output.display()
    );
    Ok(())
}

pub fn cluster(args: ClusterArgs) -> CliResult<()> {
    let input = InputDescriptor::EdgeList { path: absolute(&args.input) };
    execute("cluster", input, &args.engine)
}

pub fn cluster_points(args: ClusterPointsArgs) -> CliResult<()> {
    let input = InputDescriptor::Points { path: absolute(&args.points), k: args.k, label_col: args.label_col };
    execute("cluster-points", input, &args.engine)
}

pub fn replay(args: ReplayArgs) -> CliResult<()> {
    let m = RunManifest::read(&args.manifest)?;
    let weight: WeightChoice = m
        .weight_scheme
        .parse()
        .map_err(|e: String| CliError::Data(anyhow::anyhow!("manifest weight scheme: {e}")))?;
    let settings = Settings {
        algo: m.algorithm,
        epsilon: m.epsilon,
        seed: m.seed,
        threads: args.threads.or(m.threads),
        scc: m.scc,
    };
    settings.validate()?;
    let loaded = load(&m.input, weight, m.seed)?;
    let (d, _) = engine::run(&loaded.graph, &settings)?;
    let text = d.to_text();
    if let Some(out) = &args.output {
        write_file(out, text.as_bytes())?;
    }
    let digest = sha256_hex(text.as_bytes());
    if digest != m.outputs.dendrogram_sha256 {
        return Err(CliError::Mismatch(format!(
            "regenerated dendrogram has sha256 {digest}, manifest records {}",
            m.outputs.dendrogram_sha256
        )));
    }
    println!("replay matches: {} merges, sha256 {digest}", d.merges().len());
    Ok(())
}
