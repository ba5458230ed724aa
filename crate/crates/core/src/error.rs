//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two objects that must live on the same vertex set do not.
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    /// A vertex id outside `1..=n`.
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    /// Text input that could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A value or argument outside the operation's domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A move that would not leave the circuit an n-cycle.
    #[error("move {0} is not admissible for the current circuit")]
    NotAdmissible(String),

    /// A rotation whose chord coincides with a circuit arc.
    #[error("rotation ({a} {x}) is the identity rotation")]
    IdentityRotation { a: usize, x: usize },

    /// A degree-2 cycle component that contraction would swallow.
    #[error("degree-2 cycle component {component:?} cannot be contracted")]
    ContractionCycle { component: Vec<usize> },

    /// Structural evidence that no hamilton circuit exists.
    #[error("graph has no hamilton circuit: {0}")]
    NotHamiltonian(String),

    /// A circuit failing verification against its graph.
    #[error("circuit verification failed: {0}")]
    Verification(String),

    /// An internal consistency check failed.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
