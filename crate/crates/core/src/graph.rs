//! Wiring and influence graphs between components.
//!
//! Nodes are the circuit's components followed by its external inputs.
//! Influence is judged per wire: an edge `i -> j` exists when some wire of
//! `j` sourced from `i` can flip `j`'s output with all other wires held.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use crate::circuit::{Circuit, Source};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyGraph {
    nodes: Vec<String>,
    components: usize,
    edges: BTreeSet<(usize, usize)>,
}

/// Outcome of the cascade test: a topological order of all nodes when the
/// graph without self-loops is acyclic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CascadeCheck {
    pub order: Option<Vec<usize>>,
}

impl CascadeCheck {
    pub fn is_cascade(&self) -> bool {
        self.order.is_some()
    }
}

impl DependencyGraph {
    /// One edge per distinct syntactic wire.
    pub fn wiring(circuit: &Circuit) -> Self {
        Self::build(circuit, |_, _| true)
    }

    /// Semantic dependence edges only.
    pub fn influence(circuit: &Circuit) -> Self {
        Self::build(circuit, |j, pos| {
            circuit.components()[j].gate.depends_on(pos)
        })
    }

    fn build(circuit: &Circuit, keep: impl Fn(usize, usize) -> bool) -> Self {
        let n = circuit.len();
        let nodes = circuit
            .components()
            .iter()
            .map(|c| c.id.clone())
            .chain(circuit.external_inputs().iter().cloned())
            .collect();
        let mut edges = BTreeSet::new();
        for (j, wires) in circuit.wiring().iter().enumerate() {
            for (pos, src) in wires.iter().enumerate() {
                if keep(j, pos) {
                    let from = match *src {
                        Source::Component(i) => i,
                        Source::External(i) => n + i,
                    };
                    edges.insert((from, j));
                }
            }
        }
        DependencyGraph {
            nodes,
            components: n,
            edges,
        }
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edges.contains(&(from, to))
    }

    /// Edges as `(from_id, to_id)` pairs.
    pub fn named_edges(&self) -> Vec<(&str, &str)> {
        self.edges
            .iter()
            .map(|&(a, b)| (self.nodes[a].as_str(), self.nodes[b].as_str()))
            .collect()
    }

    pub fn is_subgraph_of(&self, other: &DependencyGraph) -> bool {
        self.nodes == other.nodes && self.edges.is_subset(&other.edges)
    }

    /// Kahn's algorithm on the graph with self-loops removed. Ties are broken
    /// by node index so the witness order is deterministic.
    pub fn is_cascade(&self) -> CascadeCheck {
        let count = self.nodes.len();
        let mut indegree = vec![0usize; count];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); count];
        for &(a, b) in &self.edges {
            if a != b {
                indegree[b] += 1;
                out[a].push(b);
            }
        }
        let mut ready: BinaryHeap<Reverse<usize>> = (0..count)
            .filter(|&v| indegree[v] == 0)
            .map(Reverse)
            .collect();
        let mut order = Vec::with_capacity(count);
        while let Some(Reverse(v)) = ready.pop() {
            order.push(v);
            for &w in &out[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    ready.push(Reverse(w));
                }
            }
        }
        CascadeCheck {
            order: (order.len() == count).then_some(order),
        }
    }

    /// Topological order restricted to components, when one exists.
    pub fn component_order(&self) -> Option<Vec<usize>> {
        self.is_cascade()
            .order
            .map(|o| o.into_iter().filter(|&v| v < self.components).collect())
    }
}
