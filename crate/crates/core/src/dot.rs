//! Graphviz DOT export of logical architectures and state-transition diagrams.

use std::fmt::Write;

use crate::automaton::Automaton;
use crate::circuit::{Circuit, Source};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", escape(s))
}

/// Components as boxes labeled with their gate, one edge per wire.
/// External inputs are drawn as plain-text nodes.
pub fn architecture_dot(circuit: &Circuit) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(circuit.name())).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    for x in circuit.external_inputs() {
        writeln!(out, "  {} [shape=plaintext];", quote(x)).unwrap();
    }
    for c in circuit.components() {
        let label = format!("\"{}\\n{}\"", escape(&c.id), escape(&c.gate.to_string()));
        writeln!(out, "  {} [shape=box, label={label}];", quote(&c.id)).unwrap();
    }
    for (j, wires) in circuit.wiring().iter().enumerate() {
        let to = &circuit.components()[j].id;
        for src in wires {
            let from = match *src {
                Source::Component(i) => &circuit.components()[i].id,
                Source::External(i) => &circuit.external_inputs()[i],
            };
            writeln!(out, "  {} -> {};", quote(from), quote(to)).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// States as binary-labeled nodes. Edges carry their input symbol except in
/// closed systems, where the single `tick` symbol is left implicit.
pub fn std_dot(name: &str, automaton: &Automaton) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    for s in 0..automaton.size() as u32 {
        writeln!(out, "  {};", quote(&automaton.label(s))).unwrap();
    }
    for (sym, from, to) in automaton.transitions() {
        let (from, to) = (quote(&automaton.label(from)), quote(&automaton.label(to)));
        if automaton.is_closed() {
            writeln!(out, "  {from} -> {to};").unwrap();
        } else {
            let label = quote(&automaton.symbols()[sym]);
            writeln!(out, "  {from} -> {to} [label={label}];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}
