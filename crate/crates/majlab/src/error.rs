//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("need at least 3 candidates, got {0}")]
    TooFewCandidates(usize),
    #[error("candidate {x} out of range for {n} candidates")]
    CandidateOutOfRange { x: usize, n: usize },
    #[error("candidates must be distinct, got {0} twice")]
    EqualCandidates(usize),
    #[error("pair {{{x}, {y}}} appears more than once")]
    DuplicatePair { x: usize, y: usize },
    #[error("candidate count mismatch: {left} vs {right}")]
    CandidateCountMismatch { left: usize, right: usize },
    #[error("mapping of length {0} is not a bijection")]
    NotBijective(usize),
    #[error("{0} candidates exceeds the configured cap {1} (override with MAJLAB_MAX_N)")]
    CapExceeded(usize, usize),
    #[error("weight entry outside [-1, 1]")]
    WeightOutOfRange,
    #[error("weights must be nonnegative")]
    NegativeWeight,
    #[error("weights must sum to 1")]
    WeightSumNotOne,
    #[error("coefficients must sum to 1")]
    CoefficientSumNotOne,
    #[error("multiplicity must be positive")]
    NonpositiveMultiplicity,
    #[error("linear system is not square: {rows} rows, {cols} columns")]
    NotSquare { rows: usize, cols: usize },
    #[error("linear program row {row} has {got} coefficients, expected {expected}")]
    RaggedRow { row: usize, got: usize, expected: usize },
    #[error("no directed cycle in the decision graph")]
    NoDirectedCycle,
    #[error("pair {{{x}, {y}}} is undecided")]
    UndecidedPair { x: usize, y: usize },
    #[error("cycle must have at least 3 distinct vertices")]
    DegenerateCycle,
    #[error("class has no generators")]
    EmptyClass,
    #[error("target is not in the majority closure: {0}")]
    NotInClosure(String),
    #[error("class is not suitable for this construction: {0}")]
    WrongCategory(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
