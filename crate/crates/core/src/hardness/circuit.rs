use std::fmt::Write as _;
use std::path::Path;

use rand::Rng;

use crate::error::{Error, Result};

/// Gate of a monotone circuit. Input indices are 0-based positions of
/// earlier gates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    Input(bool),
    And(usize, usize),
    Or(usize, usize),
}

/// Topologically ordered monotone circuit: `2n` input literals followed by
/// two-input AND/OR gates. The last gate is the output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneCircuit {
    n: usize,
    gates: Vec<Gate>,
}

impl MonotoneCircuit {
    pub fn new(n: usize, gates: Vec<Gate>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidCircuit(msg));
        if n == 0 {
            return bad("a circuit needs at least one input variable".into());
        }
        if gates.len() < 2 * n {
            return bad(format!("{} gates cannot hold {} literals", gates.len(), 2 * n));
        }
        for (k, g) in gates.iter().enumerate() {
            match (*g, k < 2 * n) {
                (Gate::Input(_), true) => {}
                (Gate::Input(_), false) => return bad(format!("gate {} is an input after the literals", k + 1)),
                (_, true) => return bad(format!("gate {} must be an input literal", k + 1)),
                (Gate::And(i, j) | Gate::Or(i, j), false) => {
                    if i >= k || j >= k {
                        return bad(format!("gate {} reads a gate that is not earlier", k + 1));
                    }
                    if i == j {
                        return bad(format!("gate {} reads gate {} twice", k + 1, i + 1));
                    }
                }
            }
        }
        Ok(Self { n, gates })
    }

    /// Number of input variables; there are `2n` literal gates.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Total gate count.
    pub fn t(&self) -> usize {
        self.gates.len()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn literals(&self) -> usize {
        2 * self.n
    }

    /// Truth value of every gate by direct evaluation.
    pub fn eval(&self) -> Vec<bool> {
        let mut v: Vec<bool> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let x = match *g {
                Gate::Input(b) => b,
                Gate::And(i, j) => v[i] && v[j],
                Gate::Or(i, j) => v[i] || v[j],
            };
            v.push(x);
        }
        v
    }

    pub fn output(&self) -> bool {
        *self.eval().last().expect("circuits have at least two gates")
    }

    /// Text form: header `t n`, then one line per gate, `INPUT 0|1`,
    /// `AND i j` or `OR i j` with 1-based gate indices.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or_else(|| Error::InvalidCircuit("empty circuit file".into()))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|s| s.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::parse(hl, "header must be `t n`"))?;
        let [t, n] = nums[..] else {
            return Err(Error::parse(hl, "header must be `t n`"));
        };
        let mut gates = Vec::with_capacity(t);
        for (ln, line) in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            let idx = |s: &str| -> Result<usize> {
                match s.parse::<usize>() {
                    Ok(i) if i >= 1 => Ok(i - 1),
                    _ => Err(Error::parse(ln, format!("bad gate index `{s}`"))),
                }
            };
            let gate = match f.as_slice() {
                [kw, v] if kw.eq_ignore_ascii_case("INPUT") => match *v {
                    "0" => Gate::Input(false),
                    "1" => Gate::Input(true),
                    _ => return Err(Error::parse(ln, format!("bad input value `{v}`"))),
                },
                [kw, i, j] if kw.eq_ignore_ascii_case("AND") => Gate::And(idx(i)?, idx(j)?),
                [kw, i, j] if kw.eq_ignore_ascii_case("OR") => Gate::Or(idx(i)?, idx(j)?),
                _ => return Err(Error::parse(ln, format!("unrecognized gate `{line}`"))),
            };
            gates.push(gate);
        }
        if gates.len() != t {
            return Err(Error::InvalidCircuit(format!("header promises {t} gates, found {}", gates.len())));
        }
        Self::new(n, gates)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.t(), self.n);
        for g in &self.gates {
            let _ = match *g {
                Gate::Input(b) => writeln!(out, "INPUT {}", u8::from(b)),
                Gate::And(i, j) => writeln!(out, "AND {} {}", i + 1, j + 1),
                Gate::Or(i, j) => writeln!(out, "OR {} {}", i + 1, j + 1),
            };
        }
        out
    }

    /// Random circuit with `n` variables and `t` gates. The literals come in
    /// complementary pairs `x_i, not x_i`; gate kinds and inputs are uniform.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, t: usize) -> Result<Self> {
        let mut gates = Vec::with_capacity(t);
        for _ in 0..n {
            let x = rng.gen::<bool>();
            gates.push(Gate::Input(x));
            gates.push(Gate::Input(!x));
        }
        for k in 2 * n..t {
            let i = rng.gen_range(0..k);
            let mut j = rng.gen_range(0..k - 1);
            if j >= i {
                j += 1;
            }
            gates.push(if rng.gen::<bool>() { Gate::And(i, j) } else { Gate::Or(i, j) });
        }
        Self::new(n, gates)
    }
}
