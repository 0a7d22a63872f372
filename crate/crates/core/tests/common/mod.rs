//! Brute-force oracles shared by the integration suites. None of these reuse
//! the search, synthesis or cut code they check.
#![allow(dead_code)]

use std::collections::BTreeSet;

use cascade_core::{Automaton, Circuit, Component, Gate, Source};
use rand::seq::SliceRandom;
use rand::Rng;

/// A chain as levels of blocks, each block sorted, blocks sorted by content.
pub type RawChain = Vec<Vec<Vec<u32>>>;

fn combinations(items: &[u32], k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut with: Vec<Vec<u32>> = combinations(&items[1..], k - 1)
        .into_iter()
        .map(|mut c| {
            c.insert(0, items[0]);
            c
        })
        .collect();
    with.extend(combinations(&items[1..], k));
    with
}

/// Every even split of every block, no preservation pruning.
fn all_refinements(blocks: &[Vec<u32>]) -> Vec<Vec<Vec<u32>>> {
    let mut out: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
    for block in blocks {
        let half = block.len() / 2;
        // halves containing the block minimum, so each split is listed once
        let splits: Vec<(Vec<u32>, Vec<u32>)> = combinations(&block[1..], half - 1)
            .into_iter()
            .map(|mut low| {
                low.insert(0, block[0]);
                let high = block.iter().copied().filter(|s| !low.contains(s)).collect();
                (low, high)
            })
            .collect();
        out = out
            .into_iter()
            .flat_map(|acc| {
                splits.iter().map(move |(lo, hi)| {
                    let mut next = acc.clone();
                    next.push(lo.clone());
                    next.push(hi.clone());
                    next
                })
            })
            .collect();
    }
    out
}

/// All chains of balanced partitions over `2^width` states.
pub fn all_balanced_chains(width: usize) -> Vec<RawChain> {
    fn go(
        width: usize,
        level: usize,
        current: Vec<Vec<u32>>,
        prefix: &mut RawChain,
        out: &mut Vec<RawChain>,
    ) {
        if level > width {
            out.push(prefix.clone());
            return;
        }
        for next in all_refinements(&current) {
            let mut sorted = next.clone();
            sorted.sort();
            prefix.push(sorted);
            go(width, level + 1, next, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(
        width,
        1,
        vec![(0..1u32 << width).collect()],
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// Direct preservation check on raw blocks.
pub fn raw_preserved(blocks: &[Vec<u32>], delta: &[Vec<u32>]) -> bool {
    let size: usize = blocks.iter().map(Vec::len).sum();
    let mut owner = vec![usize::MAX; size];
    for (i, b) in blocks.iter().enumerate() {
        for &s in b {
            owner[s as usize] = i;
        }
    }
    delta.iter().all(|f| {
        blocks.iter().all(|b| {
            let targets: BTreeSet<usize> =
                b.iter().map(|&s| owner[f[s as usize] as usize]).collect();
            targets.len() == 1
        })
    })
}

/// Preserved chains according to the brute-force enumerator.
pub fn oracle_chains(a: &Automaton) -> BTreeSet<RawChain> {
    all_balanced_chains(a.width())
        .into_iter()
        .filter(|chain| chain.iter().all(|level| raw_preserved(level, a.delta())))
        .collect()
}

/// Canonical raw form of a library chain.
pub fn raw_chain(chain: &cascade_core::PartitionChain) -> RawChain {
    chain
        .levels()
        .iter()
        .map(|p| {
            let mut blocks = p.blocks().to_vec();
            blocks.sort();
            blocks
        })
        .collect()
}

/// True when relabeling the closed map `f` by `labels` gives a cascade:
/// bit `k` of the next label is a function of the first `k` bits.
pub fn labeling_is_cascade(f: &[u32], labels: &[u32], width: usize) -> bool {
    let size = f.len();
    let mut relabeled = vec![0u32; size];
    for s in 0..size {
        relabeled[labels[s] as usize] = labels[f[s] as usize];
    }
    (1..=width).all(|k| {
        let mut seen: Vec<Option<u32>> = vec![None; 1 << k];
        (0..size as u32).all(|u| {
            let prefix = (u >> (width - k)) as usize;
            let bit = (relabeled[u as usize] >> (width - k)) & 1;
            *seen[prefix].get_or_insert(bit) == bit
        })
    })
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<u32>> {
    fn go(rest: &mut Vec<u32>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n as u32).collect(), &mut Vec::new(), &mut out);
    out
}

/// `φ(A,B)` by explicit enumeration of every joint noise draw on the cut
/// wires, evaluating gates input by input.
pub fn phi_by_enumeration(circuit: &Circuit, noised: &[usize]) -> f64 {
    let n = circuit.len();
    let bit = |state: u32, i: usize| (state >> (n - 1 - i)) & 1 == 1;
    let mut cut_wires = Vec::new();
    for &j in noised {
        for (p, src) in circuit.wiring()[j].iter().enumerate() {
            if let Source::Component(i) = *src {
                if !noised.contains(&i) {
                    cut_wires.push((j, p));
                }
            }
        }
    }
    let draws = 1u64 << cut_wires.len();
    let mut total = 0.0;
    for s in 0..1u32 << n {
        let truth = circuit.step_bits(s, 0);
        let mut hits = 0u64;
        for draw in 0..draws {
            let mut next = 0u32;
            for (j, comp) in circuit.components().iter().enumerate() {
                let inputs: Vec<bool> = circuit.wiring()[j]
                    .iter()
                    .enumerate()
                    .map(
                        |(p, src)| match cut_wires.iter().position(|&w| w == (j, p)) {
                            Some(w) => (draw >> w) & 1 == 1,
                            None => match *src {
                                Source::Component(i) => bit(s, i),
                                Source::External(_) => unreachable!("closed circuits only"),
                            },
                        },
                    )
                    .collect();
                if comp.gate.eval(&inputs) {
                    next |= 1 << (n - 1 - j);
                }
            }
            hits += (next == truth) as u64;
        }
        total += -((hits as f64) / (draws as f64)).log2();
    }
    total / (1u64 << n) as f64
}

/// Random closed circuit: each gate reads distinct sources.
pub fn random_circuit(rng: &mut impl Rng, n: usize, max_arity: usize) -> Circuit {
    let ids: Vec<String> = (1..=n).map(|i| format!("Q{i}")).collect();
    let components = (0..n)
        .map(|j| {
            let arity = rng.gen_range(0..=max_arity.min(n));
            let mut sources: Vec<usize> = (0..n).collect();
            sources.shuffle(rng);
            sources.truncate(arity);
            let table = (0..1usize << arity).map(|_| rng.gen_bool(0.5)).collect();
            let inputs: Vec<&str> = sources.iter().map(|&i| ids[i].as_str()).collect();
            Component::new(ids[j].clone(), Gate::from_table(table).unwrap(), &inputs)
        })
        .collect();
    Circuit::new("random", components, vec![]).unwrap()
}

/// A random closed cascade map on `2^width` states, conjugated by a random
/// permutation; always decomposable.
pub fn random_decomposable_map(rng: &mut impl Rng, width: usize) -> Automaton {
    let size = 1usize << width;
    let tables: Vec<Vec<bool>> = (1..=width)
        .map(|k| (0..1usize << k).map(|_| rng.gen_bool(0.5)).collect())
        .collect();
    let cascade: Vec<u32> = (0..size as u32)
        .map(|u| {
            (1..=width).fold(0u32, |acc, k| {
                let prefix = (u >> (width - k)) as usize;
                (acc << 1) | tables[k - 1][prefix] as u32
            })
        })
        .collect();
    let mut perm: Vec<u32> = (0..size as u32).collect();
    perm.shuffle(rng);
    // state s of the result behaves like label perm[s] of the cascade
    let mut inverse = vec![0u32; size];
    for (s, &p) in perm.iter().enumerate() {
        inverse[p as usize] = s as u32;
    }
    let next = (0..size)
        .map(|s| inverse[cascade[perm[s] as usize] as usize])
        .collect();
    Automaton::closed(width, next).unwrap()
}

pub fn random_map(rng: &mut impl Rng, width: usize) -> Automaton {
    let size = 1u32 << width;
    Automaton::closed(width, (0..size).map(|_| rng.gen_range(0..size)).collect()).unwrap()
}
