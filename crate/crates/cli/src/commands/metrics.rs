use parhac_core::graph::read_edge_list;
use parhac_core::metrics::{best_cut_score, dasgupta_cost, dendrogram_purity, Measure};
use parhac_core::{Clustering, Dendrogram, Error};

use crate::args::MetricsArgs;
use crate::error::CliResult;
use crate::report::Record;

pub fn metrics(args: MetricsArgs) -> CliResult<()> {
    let d = Dendrogram::read(&args.dendrogram)?;
    let truth = Clustering::read(&args.truth)?;
    let (ari, ari_at) = best_cut_score(&d, &truth, Measure::Ari)?;
    let (nmi, nmi_at) = best_cut_score(&d, &truth, Measure::Nmi)?;
    // All-singleton truth has no same-class pair to average over.
    let purity = match dendrogram_purity(&d, &truth) {
        Ok(p) => Some(p),
        Err(Error::NoSameClassPairs) => None,
        Err(e) => return Err(e.into()),
    };
    let dasgupta = match &args.graph {
        Some(p) => Some(dasgupta_cost(&d, &read_edge_list(p)?)?),
        None => None,
    };

    println!("leaves            {}", d.num_leaves());
    println!("best_cut_ari      {ari:.6}  (threshold {ari_at})");
    println!("best_cut_nmi      {nmi:.6}  (threshold {nmi_at})");
    match purity {
        Some(p) => println!("purity            {p:.6}"),
        None => println!("purity            undefined (no two leaves share a class)"),
    }
    if let Some(c) = dasgupta {
        println!("dasgupta_cost     {c}");
    }

    if let Some(report) = &args.report {
        let mut r = Record::new("metrics");
        r.set("dendrogram", args.dendrogram.display().to_string())
            .set("truth", args.truth.display().to_string())
            .set("leaves", d.num_leaves())
            .set("best_cut_ari", ari)
            .set("best_cut_ari_threshold", threshold_value(ari_at))
            .set("best_cut_nmi", nmi)
            .set("best_cut_nmi_threshold", threshold_value(nmi_at))
            .set("purity", purity)
            .set("dasgupta_cost", dasgupta);
        r.append_to(report)?;
    }
    Ok(())
}

/// JSON has no infinity; the all-singletons cut is written as null.
fn threshold_value(t: f64) -> Option<f64> {
    t.is_finite().then_some(t)
}
