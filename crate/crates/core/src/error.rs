use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("unknown root system family {0:?}")]
    UnknownFamily(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("simple root {0} is not minuscule")]
    NotMinuscule(usize),
    #[error("permutation does not preserve the Cartan integers")]
    NotDiagramAutomorphism,
    #[error("invalid balanced root: {0}")]
    InvalidBalancedRoot(String),
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("degenerate polytope: {0}")]
    Degenerate(String),
    #[error("{0}")]
    NotInside(String),
    #[error("face lattice exceeds the cap of {cap} faces")]
    FaceCapExceeded { cap: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
