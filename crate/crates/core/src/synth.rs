//! Cascade synthesis from a nested sequence, and isomorphism checking.

use std::fmt;

use crate::automaton::{check_bijection, Automaton};
use crate::circuit::{format_label, Circuit, Component};
use crate::error::{Error, Result};
use crate::gate::{bits_to_string, Gate};
use crate::partition::NestedSequence;

/// Next-state table of cascade coordinate `level` (1-based).
///
/// Variables are coordinates `1..=level` followed by the external inputs,
/// first variable most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateTable {
    pub level: usize,
    pub inputs: usize,
    pub table: Vec<bool>,
}

impl CoordinateTable {
    pub fn arity(&self) -> usize {
        self.level + self.inputs
    }

    /// `prefix -> bit` pairs, e.g. `00->0; 01->1; ...`.
    pub fn render(&self) -> String {
        let arity = self.arity();
        self.table
            .iter()
            .enumerate()
            .map(|(i, &b)| format!("{}->{}", format_label(i as u32, arity), b as u8))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Reads off the update table of every coordinate from the block transitions
/// of the sequence.
pub fn derive_coordinate_tables(
    sequence: &NestedSequence,
    automaton: &Automaton,
) -> Result<Vec<CoordinateTable>> {
    let width = automaton.width();
    if sequence.width() != width {
        return Err(Error::WidthMismatch {
            expected: width,
            found: sequence.width(),
        });
    }
    let labels = sequence.labels();
    let m = automaton.inputs().len();
    (1..=width)
        .map(|level| {
            let mut table: Vec<Option<bool>> = vec![None; 1 << (level + m)];
            for symbol in 0..automaton.symbol_count() {
                for s in 0..automaton.size() as u32 {
                    let prefix = labels[s as usize] >> (width - level);
                    let target = labels[automaton.next(symbol, s) as usize];
                    let bit = (target >> (width - level)) & 1 == 1;
                    let slot = &mut table[((prefix as usize) << m) | symbol];
                    match *slot {
                        Some(prev) if prev != bit => {
                            return Err(Error::InvalidSequence(format!(
                                "level {level} is not preserved: coordinate table is contradictory"
                            )))
                        }
                        _ => *slot = Some(bit),
                    }
                }
            }
            Ok(CoordinateTable {
                level,
                inputs: m,
                table: table
                    .into_iter()
                    .map(|b| b.expect("every prefix is hit"))
                    .collect(),
            })
        })
        .collect()
}

/// A truth table restricted to the variables it actually depends on.
/// `retained` lists the kept variable positions of the original table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedTable {
    pub table: Vec<bool>,
    pub retained: Vec<usize>,
}

/// Drops every variable whose flip never changes the output.
pub fn reduce_dependencies(table: &[bool]) -> ReducedTable {
    assert!(table.len().is_power_of_two());
    let arity = table.len().trailing_zeros() as usize;
    let relevant = |v: usize| {
        let mask = 1usize << (arity - 1 - v);
        (0..table.len()).any(|i| table[i] != table[i ^ mask])
    };
    let retained: Vec<usize> = (0..arity).filter(|&v| relevant(v)).collect();
    let k = retained.len();
    let reduced = (0..1usize << k)
        .map(|r| {
            let index = retained.iter().enumerate().fold(0usize, |acc, (pos, &v)| {
                let bit = (r >> (k - 1 - pos)) & 1;
                acc | bit << (arity - 1 - v)
            });
            table[index]
        })
        .collect();
    ReducedTable {
        table: reduced,
        retained,
    }
}

/// Canonical gate name for a minimal-support table, `LUT` when none fits.
pub fn name_gate(reduced: &ReducedTable) -> Gate {
    Gate::from_table(reduced.table.clone()).expect("reduced tables have power-of-two length")
}

/// Id of cascade coordinate `level` (1-based).
pub fn coordinate_id(level: usize) -> String {
    format!("Q{level}'")
}

/// Feed-forward circuit: coordinate `k` reads only the coordinates `<= k`
/// (and inputs) its reduced table retains.
pub fn build_cascade_circuit(
    name: &str,
    tables: &[CoordinateTable],
    input_names: &[String],
) -> Result<Circuit> {
    let components = tables
        .iter()
        .map(|t| {
            let reduced = reduce_dependencies(&t.table);
            let inputs = reduced
                .retained
                .iter()
                .map(|&v| {
                    if v < t.level {
                        coordinate_id(v + 1)
                    } else {
                        input_names[v - t.level].clone()
                    }
                })
                .collect();
            Component {
                id: coordinate_id(t.level),
                gate: name_gate(&reduced),
                inputs,
            }
        })
        .collect();
    Circuit::with_limit(name, components, input_names.to_vec(), usize::MAX)
}

/// A permutation of state labels, original → cascade.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Isomorphism {
    map: Vec<u32>,
}

impl Isomorphism {
    pub fn new(map: Vec<u32>) -> Result<Self> {
        if !map.len().is_power_of_two() {
            return Err(Error::NotBijective(map.len()));
        }
        check_bijection(&map, map.len())?;
        Ok(Isomorphism { map })
    }

    pub fn identity(size: usize) -> Self {
        Isomorphism {
            map: (0..size as u32).collect(),
        }
    }

    pub fn apply(&self, state: u32) -> u32 {
        self.map[state as usize]
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    pub fn size(&self) -> usize {
        self.map.len()
    }

    pub fn width(&self) -> usize {
        self.map.len().trailing_zeros() as usize
    }

    pub fn inverse(&self) -> Isomorphism {
        let mut inv = vec![0u32; self.map.len()];
        for (s, &t) in self.map.iter().enumerate() {
            inv[t as usize] = s as u32;
        }
        Isomorphism { map: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(s, &t)| s as u32 == t)
    }
}

impl fmt::Display for Isomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.width();
        for (s, &t) in self.map.iter().enumerate() {
            writeln!(f, "{} {}", format_label(s as u32, w), format_label(t, w))?;
        }
        Ok(())
    }
}

/// `h = cascade ∘ original⁻¹` for two labelings of the same abstract states.
pub fn build_isomorphism(original: &[u32], cascade: &[u32]) -> Result<Isomorphism> {
    if original.len() != cascade.len() {
        return Err(Error::Mismatch(format!(
            "labelings cover {} and {} states",
            original.len(),
            cascade.len()
        )));
    }
    check_bijection(original, original.len())?;
    check_bijection(cascade, cascade.len())?;
    let mut map = vec![0u32; original.len()];
    for (abstract_state, &label) in original.iter().enumerate() {
        map[label as usize] = cascade[abstract_state];
    }
    Isomorphism::new(map)
}

/// First `(symbol, state)` where `h(δ(σ, q)) ≠ δ'(σ, h(q))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counterexample {
    pub symbol: usize,
    pub state: u32,
}

/// Exhaustive commutation check over every symbol and state.
pub fn verify_isomorphism(
    original: &Automaton,
    cascade: &Automaton,
    h: &Isomorphism,
) -> Result<Option<Counterexample>> {
    if original.size() != cascade.size() || h.size() != original.size() {
        return Err(Error::Mismatch(format!(
            "state counts {} / {} / map {}",
            original.size(),
            cascade.size(),
            h.size()
        )));
    }
    if original.symbols() != cascade.symbols() {
        return Err(Error::Mismatch("input alphabets differ".into()));
    }
    for state in 0..original.size() as u32 {
        for symbol in 0..original.symbol_count() {
            if h.apply(original.next(symbol, state)) != cascade.next(symbol, h.apply(state)) {
                return Ok(Some(Counterexample { symbol, state }));
            }
        }
    }
    Ok(None)
}

/// States visited from `start` over `steps` updates (`steps + 1` entries).
/// Closed systems ignore `inputs`; others need one symbol per step.
pub fn trajectory(
    automaton: &Automaton,
    start: u32,
    steps: usize,
    inputs: &[usize],
) -> Result<Vec<u32>> {
    if start as usize >= automaton.size() {
        return Err(Error::WidthMismatch {
            expected: automaton.width(),
            found: 32 - start.leading_zeros() as usize,
        });
    }
    if !automaton.is_closed() && inputs.len() < steps {
        return Err(Error::InputMismatch {
            expected: steps,
            found: inputs.len(),
        });
    }
    if let Some(&bad) = inputs.iter().find(|&&s| s >= automaton.symbol_count()) {
        return Err(Error::UnknownSymbol(bad.to_string()));
    }
    let mut states = Vec::with_capacity(steps + 1);
    let mut q = start;
    states.push(q);
    let symbols = (0..steps).map(|t| if automaton.is_closed() { 0 } else { inputs[t] });
    for symbol in symbols {
        q = automaton.next(symbol, q);
        states.push(q);
    }
    Ok(states)
}

/// Runs both systems from `start` and `h(start)` and checks that `h` maps
/// the first trajectory onto the second pointwise.
pub fn trace_equivalence(
    original: &Automaton,
    cascade: &Automaton,
    h: &Isomorphism,
    start: u32,
    steps: usize,
    inputs: &[usize],
) -> Result<bool> {
    if h.size() != original.size() || h.size() != cascade.size() {
        return Err(Error::Mismatch(
            "map size differs from the state count".into(),
        ));
    }
    let a = trajectory(original, start, steps, inputs)?;
    let b = trajectory(cascade, h.apply(start), steps, inputs)?;
    Ok(a.iter().zip(&b).all(|(&x, &y)| h.apply(x) == y))
}

/// Everything produced from one nested sequence.
#[derive(Debug, Clone)]
pub struct Cascade {
    pub sequence: NestedSequence,
    pub tables: Vec<CoordinateTable>,
    pub circuit: Circuit,
    pub automaton: Automaton,
    pub isomorphism: Isomorphism,
}

impl Cascade {
    /// Gate kinds of the cascade components, in coordinate order.
    pub fn gate_names(&self) -> Vec<String> {
        self.circuit
            .components()
            .iter()
            .map(|c| c.gate.kind().to_string())
            .collect()
    }
}

/// Synthesizes the cascade circuit of `sequence` and the label permutation
/// relating it to `automaton`.
pub fn synthesize(automaton: &Automaton, sequence: &NestedSequence, name: &str) -> Result<Cascade> {
    let tables = derive_coordinate_tables(sequence, automaton)?;
    let circuit = build_cascade_circuit(name, &tables, automaton.inputs())?;
    let cascade_automaton = Automaton::from_circuit_with_limit(&circuit, usize::MAX)?;
    let identity: Vec<u32> = (0..automaton.size() as u32).collect();
    let isomorphism = build_isomorphism(&identity, &sequence.labels())?;
    Ok(Cascade {
        sequence: sequence.clone(),
        tables,
        circuit,
        automaton: cascade_automaton,
        isomorphism,
    })
}

impl fmt::Display for ReducedTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} over {:?}",
            bits_to_string(&self.table),
            self.retained
        )
    }
}
