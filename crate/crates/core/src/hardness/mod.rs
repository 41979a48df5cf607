//! Circuit-to-HAC reductions: greedy exact HAC on the gadget graph evaluates
//! a monotone circuit.

mod circuit;
mod gadget;

pub use circuit::{Gate, MonotoneCircuit};
pub use gadget::{
    avg_gadget_dummies, build_avg_gadget, build_wpgma_gadget, simulate_gadget, GadgetInstance, Simulation,
    AVG_GADGET_EPSILON,
};
