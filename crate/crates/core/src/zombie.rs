//! End-to-end construction of an isomorphic feed-forward re-implementation.

use crate::automaton::Automaton;
use crate::circuit::{Circuit, Source};
use crate::error::Result;
use crate::gate::GateKind;
use crate::partition::{search_chains, NestedSequence};
use crate::phi::{phi_g, PhiReport};
use crate::synth::{synthesize, trace_equivalence, verify_isomorphism, Cascade, Counterexample};

#[derive(Debug, Clone)]
pub struct ZombieOptions {
    /// Steps per trace comparison.
    pub trace_steps: usize,
    /// Which of the possible architectures to report.
    pub selector: Selector,
    /// Stop counting alternative chains after this many.
    pub count_cap: usize,
}

impl Default for ZombieOptions {
    fn default() -> Self {
        ZombieOptions {
            trace_steps: 16,
            selector: Selector::Canonical,
            count_cap: 10_000,
        }
    }
}

/// Architecture selection among all labeled sequences.
#[derive(Debug, Clone)]
pub enum Selector {
    /// Canonical labeling of the first chain.
    Canonical,
    /// First architecture (in enumeration order) with these gate kinds.
    GateKinds(Vec<GateKind>),
    /// First architecture equal to this circuit up to component ids: same
    /// gates, wires matched by position.
    Like(Circuit),
}

impl Selector {
    fn accepts(&self, candidate: &Circuit) -> bool {
        match self {
            Selector::Canonical => true,
            Selector::GateKinds(kinds) => {
                candidate.components().len() == kinds.len()
                    && candidate
                        .components()
                        .iter()
                        .zip(kinds)
                        .all(|(c, k)| c.gate.kind() == *k)
            }
            Selector::Like(target) => shape(target) == shape(candidate),
        }
    }
}

fn shape(c: &Circuit) -> (Vec<(&crate::gate::Gate, &[Source])>, usize) {
    let comps = c
        .components()
        .iter()
        .zip(c.wiring())
        .map(|(comp, w)| (&comp.gate, w.as_slice()))
        .collect();
    (comps, c.input_count())
}

#[derive(Debug, Clone)]
pub struct ZombieReport {
    pub name: String,
    pub original: Option<Circuit>,
    pub original_std: Automaton,
    pub cascade: Option<Cascade>,
    /// `None` when the commutation check passed.
    pub counterexample: Option<Counterexample>,
    pub phi_original: Option<PhiReport>,
    pub phi_cascade: Option<PhiReport>,
    /// `(start, agrees)` for every start state.
    pub traces: Vec<(u32, bool)>,
    pub deepest_level: usize,
    pub chains_found: usize,
    pub chains_truncated: bool,
    /// Set when a selector was given but no architecture matched it.
    pub no_match: bool,
}

impl ZombieReport {
    pub fn is_decomposable(&self) -> bool {
        self.chains_found > 0
    }

    pub fn verified(&self) -> bool {
        self.cascade.is_some() && self.counterexample.is_none()
    }
}

fn select(
    automaton: &Automaton,
    chains: &[crate::partition::PartitionChain],
    selector: &Selector,
    name: &str,
) -> Result<Option<Cascade>> {
    for chain in chains {
        for seq in chain.labelings() {
            let cascade = synthesize(automaton, &seq, name)?;
            if selector.accepts(&cascade.circuit) {
                return Ok(Some(cascade));
            }
        }
    }
    Ok(None)
}

/// Searches, synthesizes, verifies and measures. `original` is the gate-level
/// source when there is one (Φ_G needs a circuit).
pub fn build_zombie(
    name: &str,
    original: Option<&Circuit>,
    automaton: &Automaton,
    options: &ZombieOptions,
) -> Result<ZombieReport> {
    let found = search_chains(automaton, Some(options.count_cap))?;
    let cascade_name = format!("{name}'");
    let mut no_match = false;
    let cascade = match (&options.selector, found.chains.first()) {
        (_, None) => None,
        (Selector::Canonical, Some(first)) => {
            let seq: NestedSequence = first.canonical_sequence();
            Some(synthesize(automaton, &seq, &cascade_name)?)
        }
        (selector, Some(_)) => {
            let picked = select(automaton, &found.chains, selector, &cascade_name)?;
            no_match = picked.is_none();
            picked
        }
    };

    let phi_of = |c: &Circuit| if c.is_closed() { phi_g(c).ok() } else { None };
    let phi_original = original.and_then(phi_of);

    let (counterexample, phi_cascade, traces) = match &cascade {
        None => (None, None, Vec::new()),
        Some(c) => {
            let cx = verify_isomorphism(automaton, &c.automaton, &c.isomorphism)?;
            let inputs: Vec<usize> = (0..options.trace_steps)
                .map(|t| t % automaton.symbol_count())
                .collect();
            let traces = (0..automaton.size() as u32)
                .map(|s| {
                    trace_equivalence(
                        automaton,
                        &c.automaton,
                        &c.isomorphism,
                        s,
                        options.trace_steps,
                        &inputs,
                    )
                    .map(|ok| (s, ok))
                })
                .collect::<Result<Vec<_>>>()?;
            (cx, phi_of(&c.circuit), traces)
        }
    };

    Ok(ZombieReport {
        name: name.to_string(),
        original: original.cloned(),
        original_std: automaton.clone(),
        cascade,
        counterexample,
        phi_original,
        phi_cascade,
        traces,
        deepest_level: found.deepest_level,
        chains_found: found.chains.len(),
        chains_truncated: found.truncated,
        no_match,
    })
}
