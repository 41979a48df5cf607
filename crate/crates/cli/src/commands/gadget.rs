use anyhow::Context;
use parhac_core::graph::edge_list_text;
use parhac_core::hardness::{build_avg_gadget, build_wpgma_gadget, simulate_gadget, GadgetInstance, MonotoneCircuit};
use parhac_core::LinkageKind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::GadgetArgs;
use crate::error::{CliError, CliResult};

fn build(c: &MonotoneCircuit, linkage: LinkageKind, delta: f64) -> CliResult<GadgetInstance> {
    Ok(match linkage {
        LinkageKind::Wpgma => build_wpgma_gadget(c, delta)?,
        LinkageKind::Average => build_avg_gadget(c)?,
    })
}

/// Simulates the gadget and describes every gate that reads wrong.
fn check(c: &MonotoneCircuit, gi: &GadgetInstance) -> Result<(), String> {
    let sim = simulate_gadget(gi).map_err(|e| e.to_string())?;
    let truth = c.eval();
    let diffs: Vec<String> = truth
        .iter()
        .zip(&sim.values)
        .enumerate()
        .filter(|(_, (t, s))| t != s)
        .map(|(k, (t, s))| format!("gate {}: circuit {t}, gadget {s}", k + 1))
        .collect();
    if diffs.is_empty() {
        Ok(())
    } else {
        Err(diffs.join("\n"))
    }
}

fn fuzz(args: &GadgetArgs, count: usize) -> CliResult<()> {
    if args.max_gates < 3 {
        return Err(CliError::Usage("--max-gates must be at least 3".into()));
    }
    let linkages = match args.linkage {
        Some(l) => vec![l],
        None => vec![LinkageKind::Wpgma, LinkageKind::Average],
    };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut failures = 0;
    for i in 0..count {
        let t = rng.gen_range(3..=args.max_gates);
        let n = rng.gen_range(1..=(t - 1) / 2);
        let c = MonotoneCircuit::random(&mut rng, n, t)?;
        for &l in &linkages {
            if let Err(diff) = check(&c, &build(&c, l, args.delta)?) {
                failures += 1;
                eprintln!("circuit {i} ({l}):\n{}{diff}", c.to_text());
            }
        }
    }
    let names: Vec<String> = linkages.iter().map(|l| l.to_string()).collect();
    if failures > 0 {
        return Err(CliError::Mismatch(format!("{failures} of {count} circuits disagree")));
    }
    println!("{count} random circuits verified ({})", names.join(", "));
    Ok(())
}

pub fn gadget(args: GadgetArgs) -> CliResult<()> {
    if let Some(count) = args.fuzz {
        return fuzz(&args, count);
    }
    let path = args.circuit.as_ref().expect("clap requires --circuit without --fuzz");
    let c = MonotoneCircuit::read(path)?;
    let linkage = args.linkage.unwrap_or(LinkageKind::Wpgma);
    let gi = build(&c, linkage, args.delta)?;

    if let Some(out) = &args.output {
        std::fs::write(out, edge_list_text(&gi.graph)).with_context(|| format!("writing {}", out.display()))?;
    } else if !args.verify {
        print!("{}", edge_list_text(&gi.graph));
    }
    if args.verify {
        check(&c, &gi).map_err(|diff| CliError::Mismatch(format!("{linkage} gadget disagrees:\n{diff}")))?;
        println!("{linkage} gadget matches the circuit on all {} gates; output {}", c.t(), c.output());
    }
    Ok(())
}
