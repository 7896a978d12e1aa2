use thiserror::Error;

/// Errors raised while building or combining finite-model objects.
///
/// Check failures are never reported through this type; they are residuals
/// in a [`crate::coherence::CheckResult`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("algebra mismatch: expected {expected}, found {found}")]
    AlgebraMismatch { expected: String, found: String },

    #[error("module mismatch: {0}")]
    ModuleMismatch(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("state is not faithful: atom {atom} has weight {weight}")]
    NotFaithful { atom: String, weight: f64 },

    /// A map fails to respect the grading it is supposed to commute with.
    /// `defect` is the Frobenius norm of the forbidden entries.
    #[error("map is not equivariant (off-block defect {defect:.3e})")]
    NotEquivariant { defect: f64 },

    #[error("malformed fibre-product data: {0}")]
    MalformedSquare(String),

    #[error("expected an identity homomorphism: {0}")]
    NotIdentity(String),

    #[error("expected an isomorphism: {0}")]
    NotIsomorphism(String),

    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("representation bundle is not of constant rank (ranks {ranks:?})")]
    NotConstantRank { ranks: Vec<usize> },

    #[error("representation has a zero fiber over object {object}")]
    ZeroFiber { object: String },

    #[error("fiber rank varies along the orbit of object {object}")]
    RankVariesAlongOrbit { object: String },

    #[error("non-finite matrix entry")]
    NonFinite,
}

pub type Result<T> = std::result::Result<T, Error>;
