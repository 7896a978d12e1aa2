//! Dense complex matrices and the shared tolerance policy.

mod matrix;
mod random;
mod tolerance;

pub use matrix::{direct_sum, kron, unitarity_residual, ComplexMatrix};
pub use random::{
    complex_gaussian, derive_seed, random_matrix, random_unitary, random_unitary_with, seeded_rng, SeededRng,
};
pub use tolerance::{approx_eq, Tolerance};
