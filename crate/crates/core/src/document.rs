//! TOML circuit documents and isomorphism map files.
//!
//! A gate-level document:
//!
//! ```toml
//! name = "X"
//! external_inputs = []
//!
//! [[components]]
//! id = "Q1"
//! gate = "AND"
//! inputs = ["Q1", "Q2"]
//!
//! [[components]]
//! id = "Q2"
//! gate = "LUT"
//! table = "0111"
//! inputs = ["Q1", "Q2"]
//! ```
//!
//! A transition-table document replaces `components` with one table per
//! input symbol (`tick` for closed systems, else the input bit strings):
//!
//! ```toml
//! name = "cycle"
//!
//! [transitions.tick]
//! "00" = "01"
//! "01" = "10"
//! "10" = "11"
//! "11" = "00"
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::automaton::{Automaton, TICK};
use crate::circuit::{format_label, Circuit, Component, DEFAULT_MAX_COMPONENTS};
use crate::error::{Error, Result};
use crate::gate::{parse_bits, Gate, GateKind};
use crate::synth::Isomorphism;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDocument {
    pub name: String,
    #[serde(default)]
    pub external_inputs: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<RawComponent>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transitions: Option<BTreeMap<String, BTreeMap<String, String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComponent {
    pub id: String,
    pub gate: String,
    #[serde(default)]
    pub inputs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<String>,
}

/// A parsed document: a circuit, or a bare transition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Circuit(Circuit),
    Transitions { name: String, automaton: Automaton },
}

impl Document {
    pub fn name(&self) -> &str {
        match self {
            Document::Circuit(c) => c.name(),
            Document::Transitions { name, .. } => name,
        }
    }

    pub fn circuit(&self) -> Option<&Circuit> {
        match self {
            Document::Circuit(c) => Some(c),
            Document::Transitions { .. } => None,
        }
    }

    pub fn automaton(&self, max_state_bits: usize) -> Result<Automaton> {
        match self {
            Document::Circuit(c) => Automaton::from_circuit_with_limit(c, max_state_bits),
            Document::Transitions { automaton, .. } => Ok(automaton.clone()),
        }
    }
}

fn doc_error(location: impl Into<String>, message: impl ToString) -> Error {
    Error::Document {
        location: location.into(),
        message: message.to_string(),
    }
}

pub fn parse_document(text: &str) -> Result<Document> {
    parse_document_with_limit(text, DEFAULT_MAX_COMPONENTS)
}

pub fn parse_document_with_limit(text: &str, max_components: usize) -> Result<Document> {
    let raw: RawDocument = toml::from_str(text)?;
    raw.into_document(max_components)
}

/// Parses a gate-level document; transition tables are rejected.
pub fn parse_circuit(text: &str) -> Result<Circuit> {
    match parse_document(text)? {
        Document::Circuit(c) => Ok(c),
        Document::Transitions { .. } => Err(doc_error(
            "document",
            "expected components, found transitions",
        )),
    }
}

impl RawDocument {
    pub fn into_document(self, max_components: usize) -> Result<Document> {
        match (&self.transitions, self.components.is_empty()) {
            (Some(_), false) => Err(doc_error(
                "document",
                "both components and transitions given",
            )),
            (Some(_), true) => self.into_transitions(),
            (None, _) => self.into_circuit(max_components).map(Document::Circuit),
        }
    }

    fn into_circuit(self, max_components: usize) -> Result<Circuit> {
        if self.components.is_empty() {
            return Err(doc_error("components", Error::EmptyCircuit));
        }
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(i, raw)| {
                let at = format!("components[{i}] (`{}`)", raw.id);
                let kind: GateKind = raw.gate.parse().map_err(|e| doc_error(&at, e))?;
                let gate = match (&raw.table, kind) {
                    (Some(t), kind) => {
                        let bits = parse_bits(t).map_err(|e| doc_error(&at, e))?;
                        Gate::with_table(kind, bits)
                    }
                    (None, GateKind::Lut) => Err(doc_error(&at, "LUT gate needs a `table`")),
                    (None, kind) => Ok(Gate::named(kind)),
                }
                .map_err(|e| match e {
                    e @ Error::Document { .. } => e,
                    e => doc_error(&at, e),
                })?;
                Ok(Component {
                    id: raw.id.clone(),
                    gate,
                    inputs: raw.inputs.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Circuit::with_limit(self.name, components, self.external_inputs, max_components).map_err(
            |e| {
                let at = match &e {
                    Error::DuplicateId(id) => format!("id `{id}`"),
                    Error::DanglingWire { component, .. }
                    | Error::ArityMismatch { component, .. } => {
                        format!("component `{component}`")
                    }
                    _ => "components".to_string(),
                };
                doc_error(at, e)
            },
        )
    }

    fn into_transitions(self) -> Result<Document> {
        let tables = self.transitions.expect("checked by caller");
        let m = self.external_inputs.len();
        let symbols: Vec<String> = if m == 0 {
            vec![TICK.to_string()]
        } else {
            (0..1u32 << m).map(|i| format_label(i, m)).collect()
        };
        if let Some(extra) = tables.keys().find(|k| !symbols.contains(k)) {
            return Err(doc_error(
                format!("transitions.{extra}"),
                "unknown input symbol",
            ));
        }
        let mut width = None;
        let mut delta = Vec::with_capacity(symbols.len());
        for symbol in &symbols {
            let at = format!("transitions.{symbol}");
            let table = tables
                .get(symbol)
                .ok_or_else(|| doc_error(&at, "missing table"))?;
            let w = *width.get_or_insert_with(|| table.keys().next().map_or(0, String::len));
            if w == 0 || w > 16 {
                return Err(doc_error(&at, format!("unsupported state width {w}")));
            }
            let size = 1usize << w;
            let mut next = vec![None; size];
            for (from, to) in table {
                let parse = |label: &str| -> Result<u32> {
                    if label.len() != w {
                        return Err(doc_error(
                            format!("{at}.{from}"),
                            format!("label `{label}` is not {w} bits"),
                        ));
                    }
                    let bits =
                        parse_bits(label).map_err(|e| doc_error(format!("{at}.{from}"), e))?;
                    Ok(bits.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32))
                };
                next[parse(from)? as usize] = Some(parse(to)?);
            }
            let next = next
                .into_iter()
                .enumerate()
                .map(|(s, t)| {
                    t.ok_or_else(|| {
                        doc_error(
                            &at,
                            format!("no transition for `{}`", format_label(s as u32, w)),
                        )
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            delta.push(next);
        }
        let automaton = Automaton::with_inputs(width.unwrap_or(0), self.external_inputs, delta)
            .map_err(|e| doc_error("transitions", e))?;
        Ok(Document::Transitions {
            name: self.name,
            automaton,
        })
    }
}

impl From<&Circuit> for RawDocument {
    fn from(c: &Circuit) -> Self {
        RawDocument {
            name: c.name().to_string(),
            external_inputs: c.external_inputs().to_vec(),
            components: c
                .components()
                .iter()
                .map(|comp| RawComponent {
                    id: comp.id.clone(),
                    gate: comp.gate.kind().to_string(),
                    inputs: comp.inputs.clone(),
                    table: (comp.gate.kind() == GateKind::Lut).then(|| comp.gate.table_string()),
                })
                .collect(),
            transitions: None,
        }
    }
}

impl RawDocument {
    pub fn from_automaton(name: &str, a: &Automaton) -> Self {
        let transitions = a
            .symbols()
            .iter()
            .enumerate()
            .map(|(sym, symbol)| {
                let table = (0..a.size() as u32)
                    .map(|s| (a.label(s), a.label(a.next(sym, s))))
                    .collect();
                (symbol.clone(), table)
            })
            .collect();
        RawDocument {
            name: name.to_string(),
            external_inputs: a.inputs().to_vec(),
            components: Vec::new(),
            transitions: Some(transitions),
        }
    }
}

pub fn emit_circuit(circuit: &Circuit) -> String {
    toml::to_string(&RawDocument::from(circuit)).expect("circuit documents serialize")
}

pub fn emit_document(doc: &Document) -> String {
    let raw = match doc {
        Document::Circuit(c) => RawDocument::from(c),
        Document::Transitions { name, automaton } => RawDocument::from_automaton(name, automaton),
    };
    toml::to_string(&raw).expect("documents serialize")
}

/// Parses `<orig-label> <cascade-label>` lines. Blank lines and `#`
/// comments are ignored.
pub fn parse_map(text: &str) -> Result<Isomorphism> {
    let mut pairs = Vec::new();
    let mut width = None;
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = format!("line {}", n + 1);
        let mut parts = line.split_whitespace();
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(doc_error(at, "expected `<orig-label> <cascade-label>`"));
        };
        let w = *width.get_or_insert(a.len());
        if a.len() != w || b.len() != w || w == 0 || w > 16 {
            return Err(doc_error(at, "labels must share one width"));
        }
        let value = |s: &str| -> Result<u32> {
            Ok(parse_bits(s)?
                .iter()
                .fold(0u32, |acc, &b| (acc << 1) | b as u32))
        };
        pairs.push((
            value(a).map_err(|e| doc_error(&at, e))?,
            value(b).map_err(|e| doc_error(&at, e))?,
        ));
    }
    let w = width.ok_or_else(|| doc_error("map", "no entries"))?;
    let mut map = vec![u32::MAX; 1 << w];
    for (a, b) in pairs {
        if map[a as usize] != u32::MAX {
            return Err(doc_error(
                "map",
                format!("label `{}` mapped twice", format_label(a, w)),
            ));
        }
        map[a as usize] = b;
    }
    if map.contains(&u32::MAX) {
        return Err(doc_error("map", "not every label is mapped"));
    }
    Isomorphism::new(map).map_err(|e| doc_error("map", e))
}
