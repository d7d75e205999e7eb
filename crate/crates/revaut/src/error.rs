//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    // --- document parsing ---
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: duplicate symbol \"{token}\"")]
    DuplicateSymbol { line: usize, token: String },
    #[error("line {line}: undeclared symbol \"{token}\"")]
    UndeclaredSymbol { line: usize, token: String },
    #[error("line {line}: duplicate pair ({state},{input})")]
    DuplicateRow {
        line: usize,
        state: String,
        input: String,
    },
    #[error("missing pair ({state},{input})")]
    MissingRow { state: String, input: String },
    #[error("line {line}: duplicate readout entry ({question}, {state} {symbol})")]
    DuplicateReadout {
        line: usize,
        question: String,
        state: String,
        symbol: String,
    },
    #[error("missing readout entry ({question}, index {index})")]
    MissingReadout { question: String, index: usize },
    #[error("missing section \"{section}\"")]
    MissingSection { section: &'static str },

    // --- automaton dynamics ---
    #[error("unknown state \"{0}\"")]
    UnknownState(String),
    #[error("symbol \"{0}\" is not in the input alphabet")]
    NotAnInput(String),
    #[error("automaton is not reversible: {collisions} image collision group(s)")]
    NotReversible { collisions: usize },
    #[error("input and output alphabets differ in size ({inputs} vs {outputs})")]
    AlphabetSizeMismatch { inputs: usize, outputs: usize },
    #[error("input and output alphabets are not the same ordered set")]
    AlphabetsDiffer,
    #[error("step {step}: emitted output \"{symbol}\" is not a legal input")]
    FeedbackViolation { step: usize, symbol: String },
    #[error("undo requires a closed-loop trajectory")]
    UndoRequiresClosedLoop,
    #[error("empty trajectory")]
    EmptyTrajectory,

    // --- interfaces & estimation ---
    #[error("unknown question \"{0}\"")]
    UnknownQuestion(String),
    #[error("unknown answer \"{0}\"")]
    UnknownAnswer(String),
    #[error("candidate set emptied at step {step}: observations inconsistent with the model")]
    EmptyCandidates { step: usize },

    // --- distributions & flux ---
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("{name} must be non-negative, got {value}")]
    NegativeQuantity { name: &'static str, value: f64 },
    #[error("invalid surface patch: {0}")]
    InvalidPatch(String),
    #[error("sphere radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("cell {cell} holds {held} bits but sends {sent}")]
    TransferExceedsContent { cell: usize, held: u64, sent: u64 },
    #[error("cell index {index} out of range (lattice has {size} cells)")]
    CellOutOfRange { index: usize, size: usize },

    // --- permutations ---
    #[error("index {index} out of range for permutation of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("image is not a bijection: {0}")]
    NotABijection(String),

    // --- experiments ---
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
