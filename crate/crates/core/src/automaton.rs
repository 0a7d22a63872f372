//! Abstract automata and global state-transition diagrams.
//!
//! An [`Automaton`] always ranges over the full label space `0..2^width`; a
//! state is identified with its binary label. The transition function is
//! stored per input symbol. Circuits without external inputs get the single
//! symbol `tick`; circuits with `m` external inputs get `2^m` symbols, one per
//! input assignment, named by their bit strings.

use crate::circuit::{format_label, Circuit};
use crate::error::{Error, Result};
use crate::matrix::DyadicMatrix;

/// Symbol of a closed (input-free) system.
pub const TICK: &str = "tick";

/// Default cap on `width + input bits` when enumerating a state space.
pub const DEFAULT_MAX_STATE_BITS: usize = 20;

/// Largest width for which dense transition matrices are built.
pub const MAX_MATRIX_BITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    width: usize,
    inputs: Vec<String>,
    symbols: Vec<String>,
    /// `delta[symbol][state]`
    delta: Vec<Vec<u32>>,
    start: Option<u32>,
}

impl Automaton {
    /// Closed automaton on `2^width` states with successor function `next`.
    pub fn closed(width: usize, next: Vec<u32>) -> Result<Self> {
        Automaton::with_inputs(width, Vec::new(), vec![next])
    }

    /// Automaton driven by `inputs.len()` binary inputs. `delta` holds one
    /// successor table per input assignment, in lexicographic order.
    pub fn with_inputs(width: usize, inputs: Vec<String>, delta: Vec<Vec<u32>>) -> Result<Self> {
        if width == 0 || width > 31 {
            return Err(Error::InvalidTransitions(format!(
                "unsupported width {width}"
            )));
        }
        let size = 1usize << width;
        if inputs.len() > 16 || delta.len() != 1usize << inputs.len() {
            return Err(Error::InvalidTransitions(format!(
                "{} input(s) need {} symbol tables, got {}",
                inputs.len(),
                1usize << inputs.len().min(16),
                delta.len()
            )));
        }
        for (sym, row) in delta.iter().enumerate() {
            if row.len() != size {
                return Err(Error::InvalidTransitions(format!(
                    "symbol {sym}: {} transitions for {size} states",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&t| t as usize >= size) {
                return Err(Error::InvalidTransitions(format!(
                    "target {bad} out of range"
                )));
            }
        }
        let symbols = if inputs.is_empty() {
            vec![TICK.to_string()]
        } else {
            (0..delta.len() as u32)
                .map(|i| format_label(i, inputs.len()))
                .collect()
        };
        Ok(Automaton {
            width,
            inputs,
            symbols,
            delta,
            start: None,
        })
    }

    /// Global state-transition diagram of a circuit.
    pub fn from_circuit(circuit: &Circuit) -> Result<Self> {
        Automaton::from_circuit_with_limit(circuit, DEFAULT_MAX_STATE_BITS)
    }

    pub fn from_circuit_with_limit(circuit: &Circuit, max_state_bits: usize) -> Result<Self> {
        let bits = circuit.len() + circuit.input_count();
        if bits > max_state_bits || bits > 31 {
            return Err(Error::TooLarge {
                what: "state space (bits)",
                size: bits,
                max: max_state_bits.min(31),
            });
        }
        let size = 1u32 << circuit.len();
        let delta = (0..1u32 << circuit.input_count())
            .map(|sym| (0..size).map(|s| circuit.step_bits(s, sym)).collect())
            .collect();
        Automaton::with_inputs(circuit.len(), circuit.external_inputs().to_vec(), delta)
    }

    pub fn with_start(mut self, start: u32) -> Result<Self> {
        if start as usize >= self.size() {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: 32 - start.leading_zeros() as usize,
            });
        }
        self.start = Some(start);
        Ok(self)
    }

    /// Number of state bits.
    pub fn width(&self) -> usize {
        self.width
    }

    /// Number of states, `2^width`.
    pub fn size(&self) -> usize {
        1 << self.width
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol_count(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_closed(&self) -> bool {
        self.symbols.len() == 1
    }

    pub fn start(&self) -> Option<u32> {
        self.start
    }

    pub fn symbol_index(&self, symbol: &str) -> Result<usize> {
        self.symbols
            .iter()
            .position(|s| s == symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    pub fn next(&self, symbol: usize, state: u32) -> u32 {
        self.delta[symbol][state as usize]
    }

    /// Successor table for one symbol.
    pub fn successors(&self, symbol: usize) -> &[u32] {
        &self.delta[symbol]
    }

    pub fn delta(&self) -> &[Vec<u32>] {
        &self.delta
    }

    pub fn label(&self, state: u32) -> String {
        format_label(state, self.width)
    }

    /// All labelled edges `(symbol, from, to)` in canonical order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, u32, u32)> + '_ {
        (0..self.size() as u32).flat_map(move |s| {
            (0..self.symbols.len()).map(move |sym| (sym, s, self.delta[sym][s as usize]))
        })
    }

    /// Transition matrix of a closed system; row `s` has its 1 at column `f(s)`.
    pub fn tpm(&self) -> Result<DyadicMatrix> {
        if !self.is_closed() {
            return Err(Error::NotClosed(self.symbols.len()));
        }
        if self.width > MAX_MATRIX_BITS {
            return Err(Error::TooLarge {
                what: "matrix width (bits)",
                size: self.width,
                max: MAX_MATRIX_BITS,
            });
        }
        Ok(DyadicMatrix::deterministic(&self.delta[0]))
    }

    /// In-degree of every state, counted over all symbols.
    pub fn reachability(&self) -> Reachability {
        let mut in_degree = vec![0usize; self.size()];
        for row in &self.delta {
            for &t in row {
                in_degree[t as usize] += 1;
            }
        }
        Reachability { in_degree }
    }

    /// The automaton whose state `map[s]` behaves like state `s` of `self`.
    pub fn relabel(&self, map: &[u32]) -> Result<Automaton> {
        check_bijection(map, self.size())?;
        let delta = self
            .delta
            .iter()
            .map(|row| {
                let mut out = vec![0u32; row.len()];
                for (s, &t) in row.iter().enumerate() {
                    out[map[s] as usize] = map[t as usize];
                }
                out
            })
            .collect();
        Ok(Automaton {
            width: self.width,
            inputs: self.inputs.clone(),
            symbols: self.symbols.clone(),
            delta,
            start: self.start.map(|q| map[q as usize]),
        })
    }
}

pub(crate) fn check_bijection(map: &[u32], size: usize) -> Result<()> {
    if map.len() != size {
        return Err(Error::NotBijective(size));
    }
    let mut seen = vec![false; size];
    for &v in map {
        let v = v as usize;
        if v >= size || std::mem::replace(&mut seen[v], true) {
            return Err(Error::NotBijective(size));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reachability {
    pub in_degree: Vec<usize>,
}

impl Reachability {
    /// States with at least one predecessor.
    pub fn reachable(&self) -> Vec<u32> {
        self.filter(|d| d > 0)
    }

    /// States without predecessors.
    pub fn sources(&self) -> Vec<u32> {
        self.filter(|d| d == 0)
    }

    fn filter(&self, keep: impl Fn(usize) -> bool) -> Vec<u32> {
        (0..self.in_degree.len() as u32)
            .filter(|&s| keep(self.in_degree[s as usize]))
            .collect()
    }
}
