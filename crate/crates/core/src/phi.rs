//! Graph integration measure `Φ_G`.
//!
//! A directed bipartition `(A, B)` cuts the wires that run from `B` into `A`:
//! every such wire is replaced by an independent fair coin at each step, the
//! components of `B` update normally. The cost of a cut is the KL divergence
//! from the true (deterministic) next state to the cut next-state
//! distribution, averaged over the uniform distribution on all `2^n` current
//! states:
//!
//! ```text
//! φ(A,B) = 2^-n · Σ_s −log2 p_cut(f(s) | s)
//! ```
//!
//! `Φ_G` is the minimum over all directed bipartitions. It is zero exactly
//! when some cut severs only wires the receiving gates ignore, i.e. when the
//! system can be split into an upstream and a downstream part.
//!
//! All cut probabilities are dyadic rationals. Zero is decided with integer
//! arithmetic; nonzero terms are `c − log2(k)` for integers `k ≤ 2^c`.

use std::fmt;

use crate::automaton::MAX_MATRIX_BITS;
use crate::circuit::{Circuit, Source};
use crate::error::{Error, Result};
use crate::graph::DependencyGraph;
use crate::matrix::DyadicMatrix;

/// `A` receives noise on its wires from `B`; `B` is untouched.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirectedBipartition {
    pub noised: Vec<usize>,
    pub intact: Vec<usize>,
}

impl DirectedBipartition {
    pub fn new(n: usize, noised: Vec<usize>) -> Self {
        let intact = (0..n).filter(|i| !noised.contains(i)).collect();
        DirectedBipartition { noised, intact }
    }

    pub fn render(&self, circuit: &Circuit) -> String {
        let names = |set: &[usize]| {
            set.iter()
                .map(|&i| circuit.components()[i].id.as_str())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!(
            "{{{}}} <-/- {{{}}}",
            names(&self.noised),
            names(&self.intact)
        )
    }

    fn mask(&self, n: usize) -> Vec<bool> {
        let mut in_noised = vec![false; n];
        for &i in &self.noised {
            in_noised[i] = true;
        }
        in_noised
    }
}

impl fmt::Display for DirectedBipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} <-/- {:?}", self.noised, self.intact)
    }
}

/// All `2^n − 2` directed bipartitions: noised sets ordered by size, then
/// lexicographically. Empty for `n < 2`.
pub fn enumerate_directed_bipartitions(n: usize) -> Vec<DirectedBipartition> {
    if n < 2 {
        return Vec::new();
    }
    let mut sets: Vec<Vec<usize>> = (1u32..(1 << n) - 1)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    sets.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets.into_iter()
        .map(|s| DirectedBipartition::new(n, s))
        .collect()
}

/// Output counts of one noised component at one state: `counts[bit]` of the
/// `2^severed` noise draws produce `bit`.
#[derive(Debug, Clone, Copy)]
struct NoisedOutput {
    severed: u32,
    counts: [u64; 2],
}

fn noised_output(circuit: &Circuit, j: usize, in_noised: &[bool], state: u32) -> NoisedOutput {
    let wires = &circuit.wiring()[j];
    let arity = wires.len();
    let gate = &circuit.components()[j].gate;
    let mut fixed = 0usize;
    let mut free = Vec::new();
    for (p, &src) in wires.iter().enumerate() {
        let cut = matches!(src, Source::Component(i) if !in_noised[i]);
        if cut {
            free.push(arity - 1 - p);
        } else if circuit.source_value(src, state, 0) {
            fixed |= 1 << (arity - 1 - p);
        }
    }
    let mut counts = [0u64; 2];
    for draw in 0..1usize << free.len() {
        let mut index = fixed;
        for (k, &shift) in free.iter().enumerate() {
            index |= (draw >> k & 1) << shift;
        }
        counts[gate.eval_index(index) as usize] += 1;
    }
    NoisedOutput {
        severed: free.len() as u32,
        counts,
    }
}

fn require_closed(circuit: &Circuit) -> Result<()> {
    if circuit.is_closed() {
        Ok(())
    } else {
        Err(Error::ExternalInputs)
    }
}

/// Transition matrix of the circuit under the cut.
pub fn build_cut_tpm(circuit: &Circuit, cut: &DirectedBipartition) -> Result<DyadicMatrix> {
    require_closed(circuit)?;
    let n = circuit.len();
    if n > MAX_MATRIX_BITS {
        return Err(Error::TooLarge {
            what: "matrix width (bits)",
            size: n,
            max: MAX_MATRIX_BITS,
        });
    }
    let in_noised = cut.mask(n);
    let severed_total: usize = cut
        .noised
        .iter()
        .map(|&j| {
            circuit.wiring()[j]
                .iter()
                .filter(|s| matches!(s, Source::Component(i) if !in_noised[*i]))
                .count()
        })
        .sum();
    if severed_total > 63 {
        return Err(Error::TooLarge {
            what: "severed wire count",
            size: severed_total,
            max: 63,
        });
    }
    let size = 1usize << n;
    let rows = (0..size as u32)
        .map(|s| {
            let det = circuit.step_bits(s, 0);
            // distribution over next states as (state, count) pairs, built bit by bit
            let mut dist: Vec<(u32, u64)> = vec![(0, 1)];
            for j in 0..n {
                let shift = n - 1 - j;
                let options: Vec<(u32, u64)> = if in_noised[j] {
                    let out = noised_output(circuit, j, &in_noised, s);
                    [(0u32, out.counts[0]), (1u32, out.counts[1])]
                        .into_iter()
                        .filter(|&(_, c)| c > 0)
                        .collect()
                } else {
                    vec![((det >> shift) & 1, 1)]
                };
                dist = dist
                    .iter()
                    .flat_map(|&(t, c)| {
                        options
                            .iter()
                            .map(move |&(bit, k)| (t | bit << shift, c * k))
                    })
                    .collect();
            }
            let mut row = vec![0u64; size];
            for (t, c) in dist {
                row[t as usize] += c;
            }
            row
        })
        .collect();
    Ok(DyadicMatrix::new(severed_total as u32, rows))
}

/// Value of one directed bipartition.
#[derive(Debug, Clone, PartialEq)]
pub struct CutValue {
    pub cut: DirectedBipartition,
    pub phi: f64,
    /// `−log2 p_cut(f(s)|s)` for every current state `s`.
    pub per_state: Vec<f64>,
    /// Decided with integer arithmetic.
    pub exact_zero: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhiReport {
    pub values: Vec<CutValue>,
    /// Index into `values` of the first minimizing cut.
    pub minimizer: Option<usize>,
    pub phi_g: f64,
    /// A cut that leaves the dynamics unchanged, when one exists.
    pub certificate: Option<DirectedBipartition>,
}

impl PhiReport {
    pub fn is_zero(&self) -> bool {
        self.phi_g == 0.0
    }

    pub fn minimizing_cut(&self) -> Option<&CutValue> {
        self.minimizer.map(|i| &self.values[i])
    }
}

fn cut_value(circuit: &Circuit, cut: &DirectedBipartition) -> CutValue {
    let n = circuit.len();
    let in_noised = cut.mask(n);
    let mut exact_zero = true;
    let per_state: Vec<f64> = (0..1u32 << n)
        .map(|s| {
            let next = circuit.step_bits(s, 0);
            cut.noised
                .iter()
                .map(|&j| {
                    let out = noised_output(circuit, j, &in_noised, s);
                    let hit = out.counts[((next >> (n - 1 - j)) & 1) as usize];
                    if hit == 1u64 << out.severed {
                        0.0
                    } else {
                        exact_zero = false;
                        out.severed as f64 - (hit as f64).log2()
                    }
                })
                .sum()
        })
        .collect();
    let phi = if exact_zero {
        0.0
    } else {
        per_state.iter().sum::<f64>() / (1u64 << n) as f64
    };
    CutValue {
        cut: cut.clone(),
        phi,
        per_state,
        exact_zero,
    }
}

/// Evaluates every directed bipartition of a closed circuit.
pub fn phi_g(circuit: &Circuit) -> Result<PhiReport> {
    require_closed(circuit)?;
    let values: Vec<CutValue> = enumerate_directed_bipartitions(circuit.len())
        .iter()
        .map(|cut| cut_value(circuit, cut))
        .collect();
    let minimizer = values
        .iter()
        .enumerate()
        .fold(None::<(usize, f64)>, |best, (i, v)| match best {
            Some((_, b)) if b <= v.phi => best,
            _ => Some((i, v.phi)),
        })
        .map(|(i, _)| i);
    let phi_g = minimizer.map_or(0.0, |i| values[i].phi);
    let certificate = values.iter().find(|v| v.exact_zero).map(|v| v.cut.clone());
    Ok(PhiReport {
        values,
        minimizer,
        phi_g,
        certificate,
    })
}

/// Prefix cuts along a topological order of the influence graph (self-loops
/// ignored). Empty when the influence graph has a cycle or `n < 2`.
pub fn feedforward_certificate(circuit: &Circuit) -> Vec<DirectedBipartition> {
    let n = circuit.len();
    match DependencyGraph::influence(circuit).component_order() {
        Some(order) if n >= 2 => (1..n)
            .map(|k| {
                let mut upstream = order[..k].to_vec();
                upstream.sort_unstable();
                DirectedBipartition::new(n, upstream)
            })
            .collect(),
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Automaton;
    use crate::fixtures;

    #[test]
    fn bipartition_counts() {
        assert_eq!(enumerate_directed_bipartitions(1).len(), 0);
        assert_eq!(enumerate_directed_bipartitions(2).len(), 2);
        assert_eq!(enumerate_directed_bipartitions(3).len(), 6);
        assert_eq!(enumerate_directed_bipartitions(4).len(), 14);
        let three = enumerate_directed_bipartitions(3);
        assert_eq!(three[0].noised, vec![0]);
        assert_eq!(three[0].intact, vec![1, 2]);
        assert_eq!(three[3].noised, vec![0, 1]);
    }

    #[test]
    fn cascade_cut_leaves_tpm_unchanged() {
        let y = fixtures::not_copy_copy();
        let tpm = Automaton::from_circuit(&y).unwrap().tpm().unwrap();
        let cut = DirectedBipartition::new(3, vec![0]);
        assert!(build_cut_tpm(&y, &cut).unwrap().same_values(&tpm));
    }

    #[test]
    fn independent_copies_are_a_product() {
        let c = fixtures::identity(2);
        let tpm = Automaton::from_circuit(&c).unwrap().tpm().unwrap();
        for cut in enumerate_directed_bipartitions(2) {
            assert!(build_cut_tpm(&c, &cut).unwrap().same_values(&tpm));
        }
        assert!(phi_g(&c).unwrap().is_zero());
    }

    #[test]
    fn xnor_fixture_cut_rows() {
        let y = fixtures::xnor_xnor_xor();
        // Q1 reads two noised wires: XNOR of two coins is a coin.
        let m = build_cut_tpm(&y, &DirectedBipartition::new(3, vec![0])).unwrap();
        assert_eq!(m.denom_log2(), 2);
        assert_eq!(m.count(0b000, 0b010), 2);
        assert_eq!(m.count(0b000, 0b110), 2);
        // Q2 and Q3 each read one noised wire from Q1.
        let m = build_cut_tpm(&y, &DirectedBipartition::new(3, vec![1, 2])).unwrap();
        assert_eq!(m.denom_log2(), 2);
        for t in [0b100, 0b101, 0b110, 0b111] {
            assert_eq!(m.count(0b000, t), 1);
        }
    }

    #[test]
    fn signs() {
        assert!(phi_g(&fixtures::xnor_xnor_xor()).unwrap().phi_g > 0.0);
        assert!(phi_g(&fixtures::and_or()).unwrap().phi_g > 0.0);
        let cascade = phi_g(&fixtures::not_copy_copy()).unwrap();
        assert_eq!(cascade.phi_g, 0.0);
        assert_eq!(cascade.certificate.unwrap().noised, vec![0]);
        assert_eq!(phi_g(&fixtures::copy_or()).unwrap().phi_g, 0.0);
    }

    #[test]
    fn single_component_is_zero() {
        let r = phi_g(&fixtures::identity(1)).unwrap();
        assert_eq!(r.phi_g, 0.0);
        assert!(r.values.is_empty());
    }

    #[test]
    fn open_circuits_are_rejected() {
        assert!(matches!(
            phi_g(&fixtures::right_shift()),
            Err(Error::ExternalInputs)
        ));
    }

    #[test]
    fn certificate_chains() {
        let chain = feedforward_certificate(&fixtures::not_copy_copy());
        assert_eq!(
            chain,
            vec![
                DirectedBipartition::new(3, vec![0]),
                DirectedBipartition::new(3, vec![0, 1])
            ]
        );
        assert!(feedforward_certificate(&fixtures::xnor_xnor_xor()).is_empty());
        let clamped = fixtures::right_shift().clamp_inputs(&[true]).unwrap();
        assert!(!feedforward_certificate(&clamped).is_empty());
    }
}
