//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by constructions, searches, and verifications.
#[derive(Debug, Error)]
pub enum Error {
    #[error("element {element} out of range for field of order {q}")]
    ElementOutOfRange { element: u32, q: u32 },

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("modulus polynomial is reducible over GF({p})")]
    ReducibleModulus { p: u32 },

    #[error("bad modulus: {0}")]
    BadModulus(String),

    #[error("division by zero in GF({q})")]
    DivisionByZero { q: u32 },

    #[error("symbol {symbol} out of range for alphabet of size {q}")]
    SymbolOutOfRange { symbol: u32, q: u32 },

    #[error("alphabet of size {q} is not supported: {reason}")]
    UnsupportedAlphabet { q: u64, reason: &'static str },

    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: u32, right: u32 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("operation requires a binary alphabet, got q = {0}")]
    BinaryOnly(u32),

    #[error("duplicate word in point set")]
    DuplicateWord,

    #[error("size budget exceeded: need {needed}, budget {budget}")]
    ResourceLimit { needed: u128, budget: u128 },

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A theorem-backed check failed. Every occurrence indicates an
    /// implementation bug, never bad user input; the CLI maps this to its
    /// dedicated exit code.
    #[error("internal verification failed: {0}")]
    VerificationFailed(String),
}

/// Errors from the point-set text format.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("empty input: missing `q n` header")]
    Empty,

    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },

    #[error("line {second}: duplicate of word at line {first}")]
    Duplicate { first: usize, second: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
