//! Isomorphic cascade decomposition of boolean circuits.
//!
//! The pipeline takes a gate-level circuit (or a bare transition table),
//! builds its global state-transition diagram, searches for a nested
//! sequence of preserved partitions, and turns each sequence into a
//! feed-forward circuit that performs the same computation up to a
//! permutation of state labels. The graph integration measure `Φ_G` is
//! positive for circuits whose every directed cut matters and exactly zero
//! for the synthesized cascades, which is the point of the exercise: `Φ_G`
//! is not invariant under isomorphism of the computation.
//!
//! ```
//! use cascade_core::{fixtures, Automaton, partition::{search_nested_sequence, SearchMode}};
//! use cascade_core::synth::{synthesize, verify_isomorphism};
//!
//! let y = fixtures::xnor_xnor_xor();
//! let std = Automaton::from_circuit(&y).unwrap();
//! let seq = search_nested_sequence(&std, SearchMode::First).unwrap().sequences.remove(0);
//! let cascade = synthesize(&std, &seq, "Y'").unwrap();
//! assert!(verify_isomorphism(&std, &cascade.automaton, &cascade.isomorphism).unwrap().is_none());
//! ```

pub mod automaton;
pub mod circuit;
pub mod document;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod gate;
pub mod graph;
pub mod matrix;
pub mod partition;
pub mod phi;
pub mod synth;
pub mod zombie;

pub use automaton::Automaton;
pub use circuit::{make_right_shift, Circuit, Component, GlobalState, Source};
pub use error::{Error, Result};
pub use gate::{Gate, GateKind};
pub use graph::DependencyGraph;
pub use matrix::DyadicMatrix;
pub use partition::{NestedSequence, Partition, PartitionChain, SearchMode};
pub use synth::{Cascade, Isomorphism};
