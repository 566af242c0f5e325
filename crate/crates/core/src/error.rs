use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported root system: {0}")]
    Unsupported(String),

    #[error("root system mismatch: expected {expected}, found {found}")]
    Mismatch { expected: String, found: String },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("Weyl orbit of {weight} has {size} elements, exceeding the cap of {cap}")]
    OrbitCap { weight: String, size: String, cap: usize },

    #[error("not in the weight lattice: {0}")]
    NotInLattice(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("invalid embedding {name}: {reason}")]
    Embedding { name: String, reason: String },

    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unknown pair {0}")]
    UnknownPair(String),

    #[error("negative coefficient {coeff} at {weight} in {context}")]
    NegativeCoefficient {
        weight: String,
        coeff: String,
        context: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
