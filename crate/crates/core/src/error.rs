use thiserror::Error;

use crate::report::LawReport;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Indices out of range or table shapes that do not match the declared sizes.
    #[error("malformed structure: {0}")]
    Structure(String),

    #[error("arrows {g} and {f} are not composable (target of {f} is not the source of {g})")]
    NotComposable { g: usize, f: usize },

    #[error("mismatched categories: {0}")]
    Mismatch(String),

    #[error("typing mismatch: {0}")]
    Typing(String),

    #[error("search space of {candidates} candidates exceeds the cap of {cap}")]
    TooLarge { candidates: u128, cap: u128 },

    #[error("law check failed:\n{0}")]
    Laws(LawReport),

    #[error("invalid fixture: {0}")]
    Fixture(String),

    #[error("required structure absent: {0}")]
    StructureAbsent(String),

    #[error("not an adjoint equivalence: {0}")]
    NotAdjointEquivalence(String),

    #[error("hom family rejected at arrow {arrow}: {description}")]
    NotNatural { arrow: usize, description: String },

    #[error("not a bijection: {0}")]
    NotBijective(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
