use thiserror::Error;

/// Errors produced by the core algorithms.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid letter {letter:?} at position {position}")]
    InvalidLetter { letter: char, position: usize },
    #[error("generator {0} is not assigned")]
    UnassignedGenerator(usize),
    #[error("modulus mismatch between matrices")]
    ModulusMismatch,
    #[error("matrix does not have determinant 1")]
    NotUnimodular,
    #[error("modulus must be at least 2")]
    BadModulus,
    #[error("negative length {0}")]
    NegativeLength(f64),
    #[error("trace {0} has absolute value at most 2: no closed geodesic")]
    NotHyperbolic(f64),
    #[error("trace triple ({0}, {1}, {2}) is not a valid cusped structure")]
    InvalidTriple(f64, f64, f64),
    #[error("trace cutoff {0} is below the systole trace 3")]
    CutoffBelowSystole(f64),
    #[error("length cutoff must be positive")]
    NonPositiveLength,
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("word is trivial")]
    TrivialWord,
    #[error("word is a proper power")]
    ProperPower,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("character sum is not integral: {0}")]
    NonIntegral(String),
    #[error("permutation is odd")]
    OddPermutation,
    #[error("permutation is not an n-cycle")]
    NotFullCycle,
    #[error("invalid cover specification: {0}")]
    InvalidCoverSpec(String),
    #[error("truncation degree must be at least 1")]
    BadDegree,
    #[error("word has depth {actual}, expected {expected}")]
    DepthMismatch { expected: usize, actual: String },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{p} is not a quadratic non-residue mod {q}")]
    ResidueCondition { p: u64, q: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
