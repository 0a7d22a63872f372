use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown gate `{0}`")]
    UnknownGate(String),
    #[error("table `{table}` is not the truth table of {kind}")]
    TableMismatch { kind: String, table: String },
    #[error("truth table length {0} is not a supported power of two")]
    BadTableLength(usize),
    #[error("`{0}` is not a bit string")]
    BadBitString(String),

    #[error("circuit has no components")]
    EmptyCircuit,
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("component `{component}` reads from unknown id `{source_id}`")]
    DanglingWire {
        component: String,
        source_id: String,
    },
    #[error(
        "component `{component}`: gate {gate} has arity {arity} but {inputs} inputs are wired"
    )]
    ArityMismatch {
        component: String,
        gate: String,
        arity: usize,
        inputs: usize,
    },
    #[error("{what} has size {size}, above the configured maximum {max}")]
    TooLarge {
        what: &'static str,
        size: usize,
        max: usize,
    },

    #[error("state has width {found}, expected {expected}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("expected {expected} external input bits, got {found}")]
    InputMismatch { expected: usize, found: usize },
    #[error("unknown input symbol `{0}`")]
    UnknownSymbol(String),
    #[error("operation needs a closed system, but the alphabet has {0} symbols")]
    NotClosed(usize),
    #[error("operation needs a circuit without external inputs")]
    ExternalInputs,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid nested sequence: {0}")]
    InvalidSequence(String),
    #[error("invalid transition table: {0}")]
    InvalidTransitions(String),
    #[error("automata differ: {0}")]
    Mismatch(String),
    #[error("map is not a bijection on {0} labels")]
    NotBijective(usize),

    #[error("{location}: {message}")]
    Document { location: String, message: String },
    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
