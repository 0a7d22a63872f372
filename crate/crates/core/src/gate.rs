//! Truth-table gates.
//!
//! Every gate is stored as an explicit truth table. The table holds one output
//! bit per input assignment, in lexicographic order of the assignment with the
//! first input as the most significant bit. Named kinds are sugar over tables
//! and are validated against the canonical table of the kind.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest arity accepted for a lookup-table gate.
pub const MAX_ARITY: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    Copy,
    Not,
    And,
    Or,
    Xor,
    Xnor,
    Nand,
    Nor,
    ConstTrue,
    ConstFalse,
    Lut,
}

impl GateKind {
    /// Named kinds in the order used for matching.
    pub const NAMED: [GateKind; 10] = [
        GateKind::ConstFalse,
        GateKind::ConstTrue,
        GateKind::Copy,
        GateKind::Not,
        GateKind::And,
        GateKind::Or,
        GateKind::Xor,
        GateKind::Xnor,
        GateKind::Nand,
        GateKind::Nor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Copy => "COPY",
            GateKind::Not => "NOT",
            GateKind::And => "AND",
            GateKind::Or => "OR",
            GateKind::Xor => "XOR",
            GateKind::Xnor => "XNOR",
            GateKind::Nand => "NAND",
            GateKind::Nor => "NOR",
            GateKind::ConstTrue => "CONST_TRUE",
            GateKind::ConstFalse => "CONST_FALSE",
            GateKind::Lut => "LUT",
        }
    }

    /// Canonical table of a named kind; `None` for `Lut`.
    pub fn canonical_table(self) -> Option<&'static [bool]> {
        const F: bool = false;
        const T: bool = true;
        Some(match self {
            GateKind::ConstFalse => &[F],
            GateKind::ConstTrue => &[T],
            GateKind::Copy => &[F, T],
            GateKind::Not => &[T, F],
            GateKind::And => &[F, F, F, T],
            GateKind::Or => &[F, T, T, T],
            GateKind::Xor => &[F, T, T, F],
            GateKind::Xnor => &[T, F, F, T],
            GateKind::Nand => &[T, T, T, F],
            GateKind::Nor => &[T, F, F, F],
            GateKind::Lut => return None,
        })
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        Ok(match upper.as_str() {
            "COPY" => GateKind::Copy,
            "NOT" => GateKind::Not,
            "AND" => GateKind::And,
            "OR" => GateKind::Or,
            "XOR" => GateKind::Xor,
            "XNOR" => GateKind::Xnor,
            "NAND" => GateKind::Nand,
            "NOR" => GateKind::Nor,
            "CONST_TRUE" => GateKind::ConstTrue,
            "CONST_FALSE" => GateKind::ConstFalse,
            "LUT" => GateKind::Lut,
            _ => return Err(Error::UnknownGate(s.to_string())),
        })
    }
}

/// A gate: a kind plus its truth table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    kind: GateKind,
    table: Vec<bool>,
}

impl Gate {
    /// The canonical gate of a named kind.
    ///
    /// Panics on `GateKind::Lut`, which has no canonical table; use [`Gate::lut`].
    pub fn named(kind: GateKind) -> Gate {
        let table = kind
            .canonical_table()
            .expect("LUT gates need an explicit table")
            .to_vec();
        Gate { kind, table }
    }

    /// A lookup-table gate. The table length must be a power of two.
    pub fn lut(table: Vec<bool>) -> Result<Gate> {
        arity_of_len(table.len())?;
        Ok(Gate {
            kind: GateKind::Lut,
            table,
        })
    }

    /// Builds a gate of `kind` with `table`, checking the table against the
    /// kind's canonical table when the kind is named.
    pub fn with_table(kind: GateKind, table: Vec<bool>) -> Result<Gate> {
        match kind.canonical_table() {
            None => Gate::lut(table),
            Some(canon) if canon == table.as_slice() => Ok(Gate { kind, table }),
            Some(_) => Err(Error::TableMismatch {
                kind: kind.name().to_string(),
                table: bits_to_string(&table),
            }),
        }
    }

    /// Names a table: a named kind when it matches one exactly, `LUT` otherwise.
    pub fn from_table(table: Vec<bool>) -> Result<Gate> {
        arity_of_len(table.len())?;
        let kind = GateKind::NAMED
            .into_iter()
            .find(|k| k.canonical_table() == Some(table.as_slice()))
            .unwrap_or(GateKind::Lut);
        Ok(Gate { kind, table })
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn arity(&self) -> usize {
        self.table.len().trailing_zeros() as usize
    }

    /// Output for an input assignment packed with the first input as the MSB.
    pub fn eval_index(&self, index: usize) -> bool {
        self.table[index]
    }

    /// Output for an explicit list of input bits.
    pub fn eval(&self, inputs: &[bool]) -> bool {
        debug_assert_eq!(inputs.len(), self.arity());
        let index = inputs
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | b as usize);
        self.table[index]
    }

    /// True when some assignment of the other inputs makes flipping input
    /// `position` flip the output.
    pub fn depends_on(&self, position: usize) -> bool {
        let arity = self.arity();
        assert!(position < arity, "input position out of range");
        let mask = 1usize << (arity - 1 - position);
        (0..self.table.len())
            .filter(|i| i & mask == 0)
            .any(|i| self.table[i] != self.table[i | mask])
    }

    pub fn table_string(&self) -> String {
        bits_to_string(&self.table)
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GateKind::Lut => write!(f, "LUT[{}]", self.table_string()),
            kind => f.write_str(kind.name()),
        }
    }
}

fn arity_of_len(len: usize) -> Result<usize> {
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::BadTableLength(len));
    }
    let arity = len.trailing_zeros() as usize;
    if arity > MAX_ARITY {
        return Err(Error::BadTableLength(len));
    }
    Ok(arity)
}

pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Parses a string of `0`/`1` characters.
pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::BadBitString(s.to_string())),
        })
        .collect()
}
