use thiserror::Error;

use crate::designer::Violation;

/// Errors raised by netctrl operations.
///
/// Vertex numbers carried in variants are 1-based, matching every
/// user-facing format.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} is out of range 1..={n}")]
    IndexOutOfRange { vertex: usize, n: usize },
    #[error("self loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph size {n} is outside the supported range {min}..={max}")]
    SizeTooLarge { n: usize, min: usize, max: usize },
    #[error("leader set is empty")]
    EmptyLeaderSet,
    #[error("every vertex is a leader; the follower set is empty")]
    EmptyFollowerSet,
    #[error("invalid leader {0}")]
    InvalidLeader(usize),
    #[error("graph is not connected")]
    DisconnectedGraph,

    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("polynomial degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("coefficient bound too large for modular factorization")]
    CoefficientBound,
    #[error("field elements belong to different number fields")]
    ModulusMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("zero vector is not an eigenvector")]
    ZeroVector,

    #[error("controllability tests disagree: {0}")]
    InconsistentTests(String),

    #[error("vertices must be distinct, got {0} twice")]
    SameVertex(usize),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(usize),
    #[error("support set is empty or covers every vertex")]
    EmptySupport,
    #[error("expected a graph with {expected} vertices, found {found}")]
    WrongSize { expected: usize, found: usize },
    #[error("wrong topology: {0}")]
    WrongTopology(String),
    #[error("catalog membership and eigenvector oracle disagree: {0}")]
    CatalogDisagreement(String),

    #[error("invalid design ({} violation(s))", .0.len())]
    InvalidSpec(Vec<Violation>),
    #[error("a design needs at least 7 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("no valid design found after {0} attempts")]
    ExhaustedRetries(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
