//! Reference circuits used throughout the tests and the CLI samples.

use crate::automaton::Automaton;
use crate::circuit::{Circuit, Component};
use crate::gate::GateKind::*;

pub use crate::circuit::make_right_shift as right_shift;

/// `Q1 = AND(Q1,Q2)`, `Q2 = OR(Q1,Q2)`: two components with mutual feedback.
pub fn and_or() -> Circuit {
    Circuit::new(
        "X",
        vec![
            Component::named("Q1", And, &["Q1", "Q2"]),
            Component::named("Q2", Or, &["Q1", "Q2"]),
        ],
        vec![],
    )
    .unwrap()
}

/// Feed-forward counterpart of [`and_or`]: `Q1' = COPY(Q1')`, `Q2' = OR(Q1',Q2')`.
pub fn copy_or() -> Circuit {
    Circuit::new(
        "X'",
        vec![
            Component::named("Q1'", Copy, &["Q1'"]),
            Component::named("Q2'", Or, &["Q1'", "Q2'"]),
        ],
        vec![],
    )
    .unwrap()
}

/// `Q1 = XNOR(Q2,Q3)`, `Q2 = XNOR(Q1,Q3)`, `Q3 = XOR(Q1,Q2)`.
pub fn xnor_xnor_xor() -> Circuit {
    Circuit::new(
        "Y",
        vec![
            Component::named("Q1", Xnor, &["Q2", "Q3"]),
            Component::named("Q2", Xnor, &["Q1", "Q3"]),
            Component::named("Q3", Xor, &["Q1", "Q2"]),
        ],
        vec![],
    )
    .unwrap()
}

/// Feed-forward counterpart of [`xnor_xnor_xor`]:
/// `Q1' = NOT(Q1')`, `Q2' = COPY(Q2')`, `Q3' = COPY(Q2')`.
pub fn not_copy_copy() -> Circuit {
    Circuit::new(
        "Y'",
        vec![
            Component::named("Q1'", Not, &["Q1'"]),
            Component::named("Q2'", Copy, &["Q2'"]),
            Component::named("Q3'", Copy, &["Q2'"]),
        ],
        vec![],
    )
    .unwrap()
}

/// `width` components that each copy themselves.
pub fn identity(width: usize) -> Circuit {
    let components = (1..=width)
        .map(|i| {
            let id = format!("Q{i}");
            Component::named(id.clone(), Copy, &[id.as_str()])
        })
        .collect();
    Circuit::new(format!("identity{width}"), components, vec![]).unwrap()
}

/// Closed automaton on 8 states: `0 -> 1 -> ... -> 6 -> 0` and `7 -> 7`.
pub fn seven_cycle_plus_fixed_point() -> Automaton {
    let next = (0..8u32)
        .map(|s| if s == 7 { 7 } else { (s + 1) % 7 })
        .collect();
    Automaton::closed(3, next).unwrap()
}

/// Closed automaton on `2^width` states: `s -> s + 1 mod 2^width`.
pub fn counter(width: usize) -> Automaton {
    let size = 1u32 << width;
    Automaton::closed(width, (0..size).map(|s| (s + 1) % size).collect()).unwrap()
}
