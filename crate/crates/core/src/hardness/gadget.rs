use super::circuit::{Gate, MonotoneCircuit};
use crate::baselines::BruteForce;
use crate::error::{Error, Result};
use crate::graph::SimilarityGraph;
use crate::linkage::LinkageKind;

/// HAC instance whose greedy run evaluates a circuit.
#[derive(Clone, Debug)]
pub struct GadgetInstance {
    pub graph: SimilarityGraph,
    pub linkage: LinkageKind,
    pub c_true: u32,
    pub c_false: u32,
    /// Vertex of each gate.
    pub gate: Vec<u32>,
    /// Complement vertex of each gate (average-linkage gadget only).
    pub complement: Vec<Option<u32>>,
    /// Delay vertex `d_k` of each non-literal gate (WPGMA gadget only).
    pub delay: Vec<Option<u32>>,
    /// Number of leading literal gates.
    pub literals: usize,
}

impl GadgetInstance {
    /// Vertices that must land in one of the two sinks.
    fn gate_vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.gate.iter().copied().chain(self.complement.iter().flatten().copied())
    }

    /// Flags the gate, complement and delay vertices of non-literal gates.
    fn audited_vertices(&self) -> Vec<bool> {
        let mut flag = vec![false; self.graph.n()];
        let lits = self.literals;
        let verts = self.gate[lits..]
            .iter()
            .copied()
            .chain(self.complement[lits..].iter().flatten().copied())
            .chain(self.delay.iter().flatten().copied());
        for v in verts {
            flag[v as usize] = true;
        }
        flag
    }
}

/// Weighted-average-linkage gadget with `w(i) = t - i`.
pub fn build_wpgma_gadget(c: &MonotoneCircuit, delta: f64) -> Result<GadgetInstance> {
    if !(delta > 0.0 && delta < 0.25) {
        return Err(Error::InvalidParameter(format!("delta must lie in (0, 1/4), got {delta}")));
    }
    let t = c.t();
    let lits = c.literals();
    let tf = t as f64;
    let w = |i: usize| tf - i as f64;
    let c_true = t as u32;
    let c_false = t as u32 + 1;
    let mut delay = vec![None; t];
    let mut edges = vec![(c_true, c_false, -tf)];
    for (k, g) in c.gates().iter().enumerate() {
        let gk = k as u32;
        let wk = w(k + 1);
        match *g {
            Gate::Input(b) => edges.push((gk, if b { c_true } else { c_false }, w(0))),
            Gate::And(i, j) | Gate::Or(i, j) => {
                let dk = (t + 2 + k - lits) as u32;
                delay[k] = Some(dk);
                let (to_true, to_false) = match g {
                    Gate::And(..) => (wk - 2.0 * delta, wk - delta),
                    _ => (wk - delta, wk - 2.0 * delta),
                };
                edges.extend([
                    (gk, c_true, to_true),
                    (gk, c_false, to_false),
                    (gk, i as u32, wk),
                    (gk, j as u32, wk),
                    (dk, c_true, wk - 3.0 * delta),
                    (dk, c_false, -2.0 * tf),
                ]);
            }
        }
    }
    let n = 2 * t - lits + 2;
    Ok(GadgetInstance {
        graph: SimilarityGraph::from_signed_edges(n, edges)?,
        linkage: LinkageKind::Wpgma,
        c_true,
        c_false,
        gate: (0..t as u32).collect(),
        complement: vec![None; t],
        delay,
        literals: lits,
    })
}

/// Gate-input edge weight of the average-linkage gadget.
pub const AVG_GADGET_EPSILON: f64 = 0.01;

/// Dummy vertices of the average-linkage gadget: `(1/ε - 3) t`.
pub fn avg_gadget_dummies(t: usize) -> usize {
    97 * t
}

/// Average-linkage gadget with `w(k) = 4t - 2k`.
///
/// Every gate, literals included, gets a vertex and a complement vertex that
/// always joins the opposite sink, so both sinks grow in lockstep. Dummies are
/// split evenly; an odd count gets one extra dummy so the sides match.
pub fn build_avg_gadget(c: &MonotoneCircuit) -> Result<GadgetInstance> {
    let eps = AVG_GADGET_EPSILON;
    let t = c.t();
    let tf = t as f64;
    let heavy = tf * tf * tf;
    let (c_true, c_false) = (0u32, 1u32);
    let gate: Vec<u32> = (0..t as u32).map(|k| 2 + 2 * k).collect();
    let comp: Vec<u32> = (0..t as u32).map(|k| 3 + 2 * k).collect();
    let per_side = avg_gadget_dummies(t).div_ceil(2) as u32;
    let first_dummy = 2 + 2 * t as u32;
    let n = first_dummy as usize + 2 * per_side as usize;

    let mut edges = Vec::new();
    for d in 0..per_side {
        edges.push((first_dummy + 2 * d, c_true, heavy));
        edges.push((first_dummy + 2 * d + 1, c_false, heavy));
    }
    // An AND-type vertex leans to false unless both inputs are true; an
    // OR-type vertex leans to true unless both inputs are false.
    let and_type = |v: u32, a: u32, b: u32, wk: f64, e: &mut Vec<(u32, u32, f64)>| {
        e.extend([(v, c_true, wk), (v, c_false, wk + 1.5 * eps), (v, a, eps), (v, b, eps)]);
    };
    let or_type = |v: u32, a: u32, b: u32, wk: f64, e: &mut Vec<(u32, u32, f64)>| {
        e.extend([(v, c_true, wk - 1.0 + 1.5 * eps), (v, c_false, wk - 1.0), (v, a, eps), (v, b, eps)]);
    };
    for (k, g) in c.gates().iter().enumerate() {
        let wk = 4.0 * tf - 2.0 * (k + 1) as f64;
        match *g {
            Gate::Input(b) => {
                let (mine, other) = if b { (c_true, c_false) } else { (c_false, c_true) };
                edges.push((gate[k], mine, heavy));
                edges.push((comp[k], other, heavy));
            }
            Gate::And(i, j) => {
                and_type(gate[k], gate[i], gate[j], wk, &mut edges);
                or_type(comp[k], comp[i], comp[j], wk, &mut edges);
            }
            Gate::Or(i, j) => {
                or_type(gate[k], gate[i], gate[j], wk, &mut edges);
                and_type(comp[k], comp[i], comp[j], wk, &mut edges);
            }
        }
    }
    Ok(GadgetInstance {
        graph: SimilarityGraph::from_edges(n, edges)?,
        linkage: LinkageKind::Average,
        c_true,
        c_false,
        gate,
        complement: comp.into_iter().map(Some).collect(),
        delay: vec![None; t],
        literals: c.literals(),
    })
}

/// Outcome of a gadget run.
#[derive(Clone, Debug, PartialEq)]
pub struct Simulation {
    /// Whether each gate's vertex ended up with the true sink.
    pub values: Vec<bool>,
    /// Gate indices in the order their vertex first merged.
    pub merge_order: Vec<usize>,
    pub merges: usize,
}

/// Runs greedy exact HAC on the gadget and reads off the gate values.
///
/// Average linkage stops once every gate and complement vertex sits with a
/// sink. WPGMA runs until no nonnegative edge remains and every gate vertex
/// sits with a sink (the last gate's edges start at zero and turn negative
/// once its inputs are absorbed). Fails if the two sinks would merge, if a
/// merge touching a gate or delay vertex is tied with another candidate, or if
/// a gate ends up away from both sinks.
pub fn simulate_gadget(gi: &GadgetInstance) -> Result<Simulation> {
    let audited = gi.audited_vertices();
    let mut bf = BruteForce::new(&gi.graph, gi.linkage)?;
    let with_sink = |bf: &BruteForce, v: u32| {
        let c = bf.cluster_of(v);
        c == bf.cluster_of(gi.c_true) || c == bf.cluster_of(gi.c_false)
    };
    let mut first_merge = vec![usize::MAX; gi.gate.len()];
    let mut merges = 0;
    loop {
        let all_placed = gi.gate_vertices().all(|v| with_sink(&bf, v));
        let (best, second) = bf.best_two();
        let Some(best) = best else { break };
        let done = match gi.linkage {
            LinkageKind::Average => all_placed,
            LinkageKind::Wpgma => all_placed && best.similarity < 0.0,
        };
        if done {
            break;
        }
        let sinks = (bf.cluster_of(gi.c_true), bf.cluster_of(gi.c_false));
        if (best.a, best.b) == sinks || (best.b, best.a) == sinks {
            return Err(Error::Simulation(format!("sinks merge at similarity {}", best.similarity)));
        }
        // Cluster ids are vertex ids, so a singleton cluster holds its own id.
        let touches_gate = |c: u32| bf.size(c) == 1 && audited[c as usize];
        if let Some(s) = second {
            if s.similarity == best.similarity && (touches_gate(best.a) || touches_gate(best.b)) {
                return Err(Error::Simulation(format!(
                    "tie at similarity {} between ({}, {}) and ({}, {})",
                    best.similarity, best.a, best.b, s.a, s.b
                )));
            }
        }
        bf.merge(best.a, best.b);
        merges += 1;
        for (k, &v) in gi.gate.iter().enumerate() {
            if first_merge[k] == usize::MAX && bf.size(bf.cluster_of(v)) > 1 {
                first_merge[k] = merges;
            }
        }
    }

    let mut values = Vec::with_capacity(gi.gate.len());
    for (k, &v) in gi.gate.iter().enumerate() {
        let c = bf.cluster_of(v);
        if c == bf.cluster_of(gi.c_true) {
            values.push(true);
        } else if c == bf.cluster_of(gi.c_false) {
            values.push(false);
        } else {
            return Err(Error::Simulation(format!("gate {} never joined a sink", k + 1)));
        }
    }
    if let Some(k) = gi.complement.iter().enumerate().find_map(|(k, c)| {
        c.filter(|&v| !with_sink(&bf, v)).map(|_| k)
    }) {
        return Err(Error::Simulation(format!("complement of gate {} never joined a sink", k + 1)));
    }
    let mut merge_order: Vec<usize> = (0..gi.gate.len()).collect();
    merge_order.sort_by_key(|&k| (first_merge[k], k));
    Ok(Simulation { values, merge_order, merges })
}
