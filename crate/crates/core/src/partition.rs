//! Preserved partitions and nested sequences of them.
//!
//! A partition of the state set is *preserved* when, under every input
//! symbol, all states of a block move into one common block. A nested
//! sequence `P_1, ..., P_n` of preserved partitions over `2^n` states, each
//! level splitting every block of the previous level into two equal halves,
//! fixes a relabeling of the states under which coordinate `k` of the next
//! state depends only on coordinates `1..=k`: a cascade.
//!
//! The search is a depth-first backtracking over levels. Within a level the
//! candidate split is grown one state at a time (in ascending state order);
//! every "same half" decision is closed under the transition function with a
//! union-find, so non-preserved candidates are cut as soon as a half
//! overflows or two forced-apart states collide.

use std::ops::ControlFlow;

use crate::automaton::{check_bijection, Automaton};
use crate::circuit::format_label;
use crate::error::{Error, Result};

/// Largest width accepted by the search.
pub const MAX_SEARCH_BITS: usize = 10;

/// Disjoint, non-empty blocks covering `0..size`. Each block is kept sorted;
/// block order is significant (it is the block index).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<u32>>,
}

impl Partition {
    pub fn new(size: usize, blocks: Vec<Vec<u32>>) -> Result<Self> {
        let mut seen = vec![false; size];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
            for &s in block.iter() {
                let slot = seen
                    .get_mut(s as usize)
                    .ok_or_else(|| Error::InvalidPartition(format!("state {s} out of range")))?;
                if std::mem::replace(slot, true) {
                    return Err(Error::InvalidPartition(format!("state {s} in two blocks")));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|&b| !b) {
            return Err(Error::InvalidPartition(format!(
                "state {missing} not covered"
            )));
        }
        Ok(Partition { blocks })
    }

    pub fn singletons(size: usize) -> Self {
        Partition {
            blocks: (0..size as u32).map(|s| vec![s]).collect(),
        }
    }

    pub fn whole(size: usize) -> Self {
        Partition {
            blocks: vec![(0..size as u32).collect()],
        }
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Block index of every state.
    pub fn block_of(&self) -> Vec<usize> {
        let mut of = vec![0usize; self.size()];
        for (i, block) in self.blocks.iter().enumerate() {
            for &s in block {
                of[s as usize] = i;
            }
        }
        of
    }

    /// The same partition with blocks ordered by their smallest state.
    pub fn canonical(&self) -> Partition {
        let mut blocks = self.blocks.clone();
        blocks.sort_unstable_by_key(|b| b[0]);
        Partition { blocks }
    }

    /// `2^level` blocks of `2^(width - level)` states each.
    pub fn is_balanced(&self, level: usize, width: usize) -> bool {
        level <= width
            && self.blocks.len() == 1 << level
            && self.blocks.iter().all(|b| b.len() == 1 << (width - level))
    }

    pub fn render(&self, width: usize) -> String {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let states: Vec<String> = b.iter().map(|&s| format_label(s, width)).collect();
                format!("{{{}}}", states.join(","))
            })
            .collect();
        blocks.join(" ")
    }
}

/// Why a partition is not preserved: under `symbol`, states `first` and
/// `second` of block `block` move into different blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub symbol: usize,
    pub block: usize,
    pub first: u32,
    pub second: u32,
    pub first_target: usize,
    pub second_target: usize,
}

/// Returns the first violation in (symbol, block, state) order, or `None`
/// when the partition is preserved.
pub fn check_preserved(partition: &Partition, automaton: &Automaton) -> Result<Option<Violation>> {
    if partition.size() != automaton.size() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} states, automaton has {}",
            partition.size(),
            automaton.size()
        )));
    }
    let block_of = partition.block_of();
    for symbol in 0..automaton.symbol_count() {
        let f = automaton.successors(symbol);
        for (b, block) in partition.blocks().iter().enumerate() {
            let first = block[0];
            let target = block_of[f[first as usize] as usize];
            if let Some(&second) = block[1..]
                .iter()
                .find(|&&s| block_of[f[s as usize] as usize] != target)
            {
                return Ok(Some(Violation {
                    symbol,
                    block: b,
                    first,
                    second,
                    first_target: target,
                    second_target: block_of[f[second as usize] as usize],
                }));
            }
        }
    }
    Ok(None)
}

pub fn is_preserved(partition: &Partition, automaton: &Automaton) -> Result<bool> {
    Ok(check_preserved(partition, automaton)?.is_none())
}

/// An unlabeled chain `P_1 ⊐ ... ⊐ P_n`, blocks of each level ordered by
/// their smallest state.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionChain {
    width: usize,
    levels: Vec<Partition>,
}

impl PartitionChain {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn levels(&self) -> &[Partition] {
        &self.levels
    }

    /// Number of distinct labelings of this chain: two per split.
    pub fn labeling_count(&self) -> u128 {
        1u128 << ((1usize << self.width) - 1)
    }

    /// The labeling where the half holding the smallest state of its parent
    /// block gets bit 0.
    pub fn canonical_sequence(&self) -> NestedSequence {
        self.oriented(|_| false)
    }

    /// Every labeling of the chain, canonical first. Split `(level k,
    /// parent label j)` is flipped when bit `2^(k-1) - 1 + j` of the
    /// enumeration counter is set.
    pub fn labelings(&self) -> impl Iterator<Item = NestedSequence> + '_ {
        let splits = (1usize << self.width) - 1;
        assert!(splits < 64, "too many labelings to enumerate");
        (0..1u64 << splits).map(move |mask| self.oriented(|bit| (mask >> bit) & 1 == 1))
    }

    fn oriented(&self, flip: impl Fn(usize) -> bool) -> NestedSequence {
        let size = 1usize << self.width;
        let mut parents: Vec<Vec<u32>> = vec![(0..size as u32).collect()];
        let mut levels = Vec::with_capacity(self.width);
        for (k, level) in self.levels.iter().enumerate() {
            let block_of = level.block_of();
            let mut ordered = Vec::with_capacity(parents.len() * 2);
            for (j, parent) in parents.iter().enumerate() {
                let first = block_of[parent[0] as usize];
                let second = block_of[*parent
                    .iter()
                    .find(|&&s| block_of[s as usize] != first)
                    .expect("every level splits its parent")
                    as usize];
                let (lo, hi) = if flip((1usize << k) - 1 + j) {
                    (second, first)
                } else {
                    (first, second)
                };
                ordered.push(level.blocks()[lo].clone());
                ordered.push(level.blocks()[hi].clone());
            }
            levels.push(Partition {
                blocks: ordered.clone(),
            });
            parents = ordered;
        }
        NestedSequence {
            width: self.width,
            levels,
        }
    }
}

/// A labeled nested sequence. Block `j` of level `k` holds the states whose
/// label starts with the `k`-bit prefix `j`; its halves are blocks `2j` and
/// `2j+1` of level `k+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NestedSequence {
    width: usize,
    levels: Vec<Partition>,
}

impl NestedSequence {
    /// Checks the refinement structure (not preservation).
    pub fn new(width: usize, levels: Vec<Partition>) -> Result<Self> {
        if width == 0 || width > 31 {
            return Err(Error::InvalidSequence(format!("unsupported width {width}")));
        }
        if levels.len() != width {
            return Err(Error::InvalidSequence(format!(
                "{} levels for width {width}",
                levels.len()
            )));
        }
        let size = 1usize << width;
        let mut parent = Partition::whole(size);
        for (k, level) in levels.iter().enumerate() {
            if level.size() != size || !level.is_balanced(k + 1, width) {
                return Err(Error::InvalidSequence(format!(
                    "level {} is not balanced",
                    k + 1
                )));
            }
            for (j, block) in parent.blocks().iter().enumerate() {
                let mut halves: Vec<u32> = level.blocks()[2 * j]
                    .iter()
                    .chain(&level.blocks()[2 * j + 1])
                    .copied()
                    .collect();
                halves.sort_unstable();
                if &halves != block {
                    return Err(Error::InvalidSequence(format!(
                        "level {} does not split block {j} of the level above",
                        k + 1
                    )));
                }
            }
            parent = level.clone();
        }
        Ok(NestedSequence { width, levels })
    }

    /// Sequence induced by a bijective labeling `labels[state]`.
    pub fn from_labels(width: usize, labels: &[u32]) -> Result<Self> {
        let size = 1usize << width;
        check_bijection(labels, size)?;
        let levels = (1..=width)
            .map(|k| {
                let mut blocks = vec![Vec::new(); 1 << k];
                for (s, &label) in labels.iter().enumerate() {
                    blocks[(label >> (width - k)) as usize].push(s as u32);
                }
                Partition { blocks }
            })
            .collect();
        Ok(NestedSequence { width, levels })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn levels(&self) -> &[Partition] {
        &self.levels
    }

    /// Label of every state: bit `k` (from the left) is the half the state
    /// fell into at level `k`.
    pub fn labels(&self) -> Vec<u32> {
        let mut labels = vec![0u32; 1 << self.width];
        for (label, block) in self.levels[self.width - 1].blocks().iter().enumerate() {
            labels[block[0] as usize] = label as u32;
        }
        labels
    }

    pub fn chain(&self) -> PartitionChain {
        PartitionChain {
            width: self.width,
            levels: self.levels.iter().map(Partition::canonical).collect(),
        }
    }

    /// First level that is not preserved, with its violation.
    pub fn check(&self, automaton: &Automaton) -> Result<Option<(usize, Violation)>> {
        if automaton.width() != self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: automaton.width(),
            });
        }
        for (k, level) in self.levels.iter().enumerate() {
            if let Some(v) = check_preserved(level, automaton)? {
                return Ok(Some((k + 1, v)));
            }
        }
        Ok(None)
    }
}

/// State → label map of a nested sequence.
pub fn assign_labels(sequence: &NestedSequence) -> Vec<u32> {
    sequence.labels()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Stop at the first sequence (canonical labeling of the first chain).
    First,
    /// Every chain with every labeling.
    All,
}

#[derive(Debug, Clone)]
pub struct ChainSearch {
    pub chains: Vec<PartitionChain>,
    /// Deepest level for which a preserved balanced partition was found
    /// (0 when not even a bipartition exists).
    pub deepest_level: usize,
    /// True when the search stopped at the requested limit.
    pub truncated: bool,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub sequences: Vec<NestedSequence>,
    pub deepest_level: usize,
}

impl SearchOutcome {
    pub fn is_decomposable(&self) -> bool {
        !self.sequences.is_empty()
    }
}

/// Nested sequences of preserved partitions, in search order.
pub fn search_nested_sequence(automaton: &Automaton, mode: SearchMode) -> Result<SearchOutcome> {
    let limit = match mode {
        SearchMode::First => Some(1),
        SearchMode::All => None,
    };
    let found = search_chains(automaton, limit)?;
    let sequences = match mode {
        SearchMode::First => found
            .chains
            .iter()
            .map(PartitionChain::canonical_sequence)
            .collect(),
        SearchMode::All => found.chains.iter().flat_map(|c| c.labelings()).collect(),
    };
    Ok(SearchOutcome {
        sequences,
        deepest_level: found.deepest_level,
    })
}

/// Unlabeled preserved chains in lexicographic order, up to `limit` of them.
pub fn search_chains(automaton: &Automaton, limit: Option<usize>) -> Result<ChainSearch> {
    let width = automaton.width();
    if width > MAX_SEARCH_BITS {
        return Err(Error::TooLarge {
            what: "search width (bits)",
            size: width,
            max: MAX_SEARCH_BITS,
        });
    }
    let mut search = ChainSearch {
        chains: Vec::new(),
        deepest_level: 0,
        truncated: false,
    };
    let mut prefix = Vec::with_capacity(width);
    let whole = Partition::whole(automaton.size());
    let _ = descend(automaton, &whole, 1, &mut prefix, limit, &mut search);
    Ok(search)
}

fn descend(
    automaton: &Automaton,
    current: &Partition,
    level: usize,
    prefix: &mut Vec<Partition>,
    limit: Option<usize>,
    search: &mut ChainSearch,
) -> ControlFlow<()> {
    let width = automaton.width();
    if level > width {
        search.chains.push(PartitionChain {
            width,
            levels: prefix.clone(),
        });
        if limit.is_some_and(|l| search.chains.len() >= l) {
            search.truncated = true;
            return ControlFlow::Break(());
        }
        return ControlFlow::Continue(());
    }
    let splitter = Splitter::new(automaton, current, 1 << (width - level));
    splitter.enumerate(&mut |next: Partition| {
        search.deepest_level = search.deepest_level.max(level);
        prefix.push(next.clone());
        let flow = descend(automaton, &next, level + 1, prefix, limit, search);
        prefix.pop();
        flow
    })
}

/// Enumerates the preserved even splits of a preserved partition.
struct Splitter<'a> {
    automaton: &'a Automaton,
    block_of: Vec<usize>,
    block_min: Vec<u32>,
    half: u32,
}

#[derive(Clone)]
struct SplitState {
    parent: Vec<u32>,
    class_size: Vec<u32>,
    /// A state in the second half of each block, once one is chosen.
    anchor: Vec<Option<u32>>,
}

impl SplitState {
    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }
}

impl<'a> Splitter<'a> {
    fn new(automaton: &'a Automaton, current: &Partition, half: usize) -> Self {
        Splitter {
            automaton,
            block_of: current.block_of(),
            block_min: current.blocks().iter().map(|b| b[0]).collect(),
            half: half as u32,
        }
    }

    /// Merges the halves of `x` and `y` and closes the result under the
    /// transition function. Returns false when the split becomes infeasible.
    fn union(&self, st: &mut SplitState, x: u32, y: u32) -> bool {
        let mut pending = vec![(x, y)];
        while let Some((x, y)) = pending.pop() {
            let (rx, ry) = (st.find(x), st.find(y));
            if rx == ry {
                continue;
            }
            let block = self.block_of[x as usize];
            debug_assert_eq!(block, self.block_of[y as usize]);
            let merged = st.class_size[rx as usize] + st.class_size[ry as usize];
            if merged > self.half {
                return false;
            }
            let (big, small) = if st.class_size[rx as usize] >= st.class_size[ry as usize] {
                (rx, ry)
            } else {
                (ry, rx)
            };
            st.parent[small as usize] = big;
            st.class_size[big as usize] = merged;
            if let Some(a) = st.anchor[block] {
                if st.find(a) == st.find(self.block_min[block]) {
                    return false;
                }
            }
            for symbol in 0..self.automaton.symbol_count() {
                let f = self.automaton.successors(symbol);
                pending.push((f[x as usize], f[y as usize]));
            }
        }
        true
    }

    fn enumerate(&self, emit: &mut dyn FnMut(Partition) -> ControlFlow<()>) -> ControlFlow<()> {
        let size = self.block_of.len();
        let st = SplitState {
            parent: (0..size as u32).collect(),
            class_size: vec![1; size],
            anchor: vec![None; self.block_min.len()],
        };
        self.grow(0, st, emit)
    }

    fn grow(
        &self,
        t: u32,
        mut st: SplitState,
        emit: &mut dyn FnMut(Partition) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if t as usize == self.block_of.len() {
            return emit(self.finish(&mut st));
        }
        let block = self.block_of[t as usize];
        let root = st.find(t);
        let low = st.find(self.block_min[block]);
        let decided = root == low || st.anchor[block].is_some_and(|a| st.find(a) == root);
        if decided {
            return self.grow(t + 1, st, emit);
        }
        let mut with_low = st.clone();
        if self.union(&mut with_low, t, self.block_min[block]) {
            self.grow(t + 1, with_low, emit)?;
        }
        let feasible = match st.anchor[block] {
            None => {
                st.anchor[block] = Some(t);
                true
            }
            Some(a) => self.union(&mut st, t, a),
        };
        if feasible {
            self.grow(t + 1, st, emit)?;
        }
        ControlFlow::Continue(())
    }

    fn finish(&self, st: &mut SplitState) -> Partition {
        let mut blocks: Vec<Vec<u32>> = Vec::with_capacity(self.block_min.len() * 2);
        let mut index_of_root = vec![usize::MAX; self.block_of.len()];
        for s in 0..self.block_of.len() as u32 {
            let r = st.find(s) as usize;
            if index_of_root[r] == usize::MAX {
                index_of_root[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[index_of_root[r]].push(s);
        }
        debug_assert!(blocks.iter().all(|b| b.len() == self.half as usize));
        Partition { blocks }
    }
}
