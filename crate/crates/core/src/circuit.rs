//! Gate-level circuits and their synchronous update.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gate::{Gate, GateKind};

/// Default cap on the number of components of a circuit.
pub const DEFAULT_MAX_COMPONENTS: usize = 16;

/// A binary global state: one bit per component, first component leftmost.
///
/// The numeric value of a state is its binary label read as an unsigned
/// integer, so numeric order is lexicographic order on labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlobalState {
    bits: u32,
    width: u8,
}

impl GlobalState {
    pub fn new(bits: u32, width: usize) -> Result<Self> {
        if width > 31 || (width < 32 && bits >> width != 0) {
            return Err(Error::WidthMismatch {
                expected: width,
                found: 32 - bits.leading_zeros() as usize,
            });
        }
        Ok(GlobalState {
            bits,
            width: width as u8,
        })
    }

    pub fn from_label(label: &str) -> Result<Self> {
        let bits = crate::gate::parse_bits(label)?;
        if bits.len() > 31 {
            return Err(Error::BadBitString(label.to_string()));
        }
        let value = bits.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32);
        GlobalState::new(value, bits.len())
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn width(self) -> usize {
        self.width as usize
    }

    /// Bit of component `i` (0 = first component).
    pub fn component(self, i: usize) -> bool {
        (self.bits >> (self.width as usize - 1 - i)) & 1 == 1
    }

    pub fn label(self) -> String {
        format_label(self.bits, self.width as usize)
    }
}

impl fmt::Display for GlobalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Renders `value` as a `width`-bit binary label.
pub fn format_label(value: u32, width: usize) -> String {
    (0..width)
        .map(|i| {
            if (value >> (width - 1 - i)) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Source {
    Component(usize),
    External(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub id: String,
    pub gate: Gate,
    pub inputs: Vec<String>,
}

impl Component {
    pub fn new(id: impl Into<String>, gate: Gate, inputs: &[&str]) -> Self {
        Component {
            id: id.into(),
            gate,
            inputs: inputs.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn named(id: impl Into<String>, kind: GateKind, inputs: &[&str]) -> Self {
        Component::new(id, Gate::named(kind), inputs)
    }
}

/// A validated circuit. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    name: String,
    components: Vec<Component>,
    external_inputs: Vec<String>,
    wiring: Vec<Vec<Source>>,
}

impl Circuit {
    pub fn new(
        name: impl Into<String>,
        components: Vec<Component>,
        external_inputs: Vec<String>,
    ) -> Result<Self> {
        Circuit::with_limit(name, components, external_inputs, DEFAULT_MAX_COMPONENTS)
    }

    pub fn with_limit(
        name: impl Into<String>,
        components: Vec<Component>,
        external_inputs: Vec<String>,
        max_components: usize,
    ) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyCircuit);
        }
        if components.len() > max_components {
            return Err(Error::TooLarge {
                what: "component count",
                size: components.len(),
                max: max_components,
            });
        }
        let mut ids = HashMap::new();
        for (i, c) in components.iter().enumerate() {
            if ids.insert(c.id.as_str(), Source::Component(i)).is_some() {
                return Err(Error::DuplicateId(c.id.clone()));
            }
        }
        for (i, x) in external_inputs.iter().enumerate() {
            if ids.insert(x.as_str(), Source::External(i)).is_some() {
                return Err(Error::DuplicateId(x.clone()));
            }
        }
        let mut wiring = Vec::with_capacity(components.len());
        for c in &components {
            if c.gate.arity() != c.inputs.len() {
                return Err(Error::ArityMismatch {
                    component: c.id.clone(),
                    gate: c.gate.kind().to_string(),
                    arity: c.gate.arity(),
                    inputs: c.inputs.len(),
                });
            }
            let sources = c
                .inputs
                .iter()
                .map(|src| {
                    ids.get(src.as_str())
                        .copied()
                        .ok_or_else(|| Error::DanglingWire {
                            component: c.id.clone(),
                            source_id: src.clone(),
                        })
                })
                .collect::<Result<Vec<_>>>()?;
            wiring.push(sources);
        }
        Ok(Circuit {
            name: name.into(),
            components,
            external_inputs,
            wiring,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn external_inputs(&self) -> &[String] {
        &self.external_inputs
    }

    /// Resolved sources of every component, in wiring order.
    pub fn wiring(&self) -> &[Vec<Source>] {
        &self.wiring
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn input_count(&self) -> usize {
        self.external_inputs.len()
    }

    pub fn is_closed(&self) -> bool {
        self.external_inputs.is_empty()
    }

    pub fn component_index(&self, id: &str) -> Option<usize> {
        self.components.iter().position(|c| c.id == id)
    }

    /// Synchronous update of the whole circuit.
    ///
    /// `inputs` assigns one bit to each external input, in declaration order.
    pub fn step(&self, state: GlobalState, inputs: &[bool]) -> Result<GlobalState> {
        if state.width() != self.len() {
            return Err(Error::WidthMismatch {
                expected: self.len(),
                found: state.width(),
            });
        }
        if inputs.len() != self.input_count() {
            return Err(Error::InputMismatch {
                expected: self.input_count(),
                found: inputs.len(),
            });
        }
        let symbol = inputs.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32);
        GlobalState::new(self.step_bits(state.bits(), symbol), self.len())
    }

    /// Unchecked update on packed values. `symbol` packs the external inputs
    /// with the first input as the MSB.
    pub fn step_bits(&self, state: u32, symbol: u32) -> u32 {
        let n = self.len();
        let mut next = 0u32;
        for (j, component) in self.components.iter().enumerate() {
            let index = self.input_index(j, state, symbol);
            if component.gate.eval_index(index) {
                next |= 1 << (n - 1 - j);
            }
        }
        next
    }

    /// Value carried by `source` in the given state and input symbol.
    pub fn source_value(&self, source: Source, state: u32, symbol: u32) -> bool {
        match source {
            Source::Component(i) => (state >> (self.len() - 1 - i)) & 1 == 1,
            Source::External(i) => (symbol >> (self.input_count() - 1 - i)) & 1 == 1,
        }
    }

    fn input_index(&self, j: usize, state: u32, symbol: u32) -> usize {
        self.wiring[j].iter().fold(0usize, |acc, &src| {
            (acc << 1) | self.source_value(src, state, symbol) as usize
        })
    }

    /// Returns a closed circuit with every external input fixed to the given
    /// value. Gates reading a clamped input are folded into smaller tables.
    pub fn clamp_inputs(&self, values: &[bool]) -> Result<Circuit> {
        if values.len() != self.input_count() {
            return Err(Error::InputMismatch {
                expected: self.input_count(),
                found: values.len(),
            });
        }
        let components = self
            .components
            .iter()
            .zip(&self.wiring)
            .map(|(c, wires)| {
                let kept: Vec<usize> = (0..wires.len())
                    .filter(|&p| matches!(wires[p], Source::Component(_)))
                    .collect();
                let arity = wires.len();
                let table = (0..1usize << kept.len())
                    .map(|k| {
                        let mut index = 0usize;
                        let mut kept_pos = 0;
                        for (p, src) in wires.iter().enumerate() {
                            let bit = match src {
                                Source::External(i) => values[*i],
                                Source::Component(_) => {
                                    let b = (k >> (kept.len() - 1 - kept_pos)) & 1 == 1;
                                    kept_pos += 1;
                                    b
                                }
                            };
                            index |= (bit as usize) << (arity - 1 - p);
                        }
                        c.gate.eval_index(index)
                    })
                    .collect::<Vec<_>>();
                let gate = if kept.len() == arity {
                    c.gate.clone()
                } else {
                    Gate::from_table(table)?
                };
                let inputs = kept.iter().map(|&p| c.inputs[p].clone()).collect();
                Ok(Component {
                    id: c.id.clone(),
                    gate,
                    inputs,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Circuit::with_limit(self.name.clone(), components, Vec::new(), usize::MAX)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.name)?;
        for (i, c) in self.components.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{}={}({})", c.id, c.gate, c.inputs.join(","))?;
        }
        Ok(())
    }
}

/// The two-bit right-shift register: `Q1` copies the external input `s`,
/// `Q2` copies `Q1`.
pub fn make_right_shift() -> Circuit {
    Circuit::new(
        "right-shift",
        vec![
            Component::named("Q1", GateKind::Copy, &["s"]),
            Component::named("Q2", GateKind::Copy, &["Q1"]),
        ],
        vec!["s".to_string()],
    )
    .expect("right-shift circuit is valid")
}
