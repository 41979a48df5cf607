mod common;

use common::rng;
use parhac_core::hardness::{build_avg_gadget, build_wpgma_gadget, simulate_gadget, MonotoneCircuit};
use rand::Rng;

fn random_circuit(seed: u64, max_gates: usize) -> MonotoneCircuit {
    let mut r = rng(seed);
    let t = r.gen_range(3..=max_gates);
    let n = r.gen_range(1..=(t - 1) / 2);
    MonotoneCircuit::random(&mut r, n, t).unwrap()
}

#[test]
fn both_gadgets_evaluate_random_circuits() {
    for seed in 0..40 {
        let c = random_circuit(seed, 30);
        let truth = c.eval();
        for gi in [build_wpgma_gadget(&c, 0.1).unwrap(), build_avg_gadget(&c).unwrap()] {
            let sim = simulate_gadget(&gi).unwrap_or_else(|e| panic!("seed {seed} {}: {e}", gi.linkage));
            assert_eq!(sim.values, truth, "seed {seed} {}\n{}", gi.linkage, c.to_text());
        }
    }
}

#[test]
fn wpgma_gates_merge_in_index_order() {
    for seed in 0..100 {
        let c = random_circuit(1000 + seed, 12);
        let gi = build_wpgma_gadget(&c, 0.1).unwrap();
        let sim = simulate_gadget(&gi).unwrap();
        let gates: Vec<usize> = sim.merge_order.iter().copied().filter(|&k| k >= c.literals()).collect();
        assert!(gates.windows(2).all(|p| p[0] < p[1]), "seed {seed}: {gates:?}");
        assert_eq!(gates.len(), c.t() - c.literals());
    }
}

#[test]
fn other_deltas_in_range_also_work() {
    for (seed, delta) in [(7, 0.01), (8, 0.2), (9, 0.24)] {
        let c = random_circuit(seed, 20);
        let sim = simulate_gadget(&build_wpgma_gadget(&c, delta).unwrap()).unwrap();
        assert_eq!(sim.values, c.eval());
    }
}

#[test]
fn circuit_text_round_trips() {
    for seed in 0..20 {
        let c = random_circuit(seed, 30);
        assert_eq!(MonotoneCircuit::parse(&c.to_text()).unwrap().gates(), c.gates());
    }
}
