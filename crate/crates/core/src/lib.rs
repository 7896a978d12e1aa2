//! Numerical model of the induction / restriction / fusion formalism for
//! finite commutative von Neumann algebras, with randomized coherence checks.
//!
//! Every numerical type is generic over a [`Real`] field; the aliases at the
//! crate root fix it to `f64`, with `*32` variants for `f32`.

pub mod coherence;
pub mod cvna;
pub mod error;
pub mod functors;
pub mod groupoid;
pub mod hmod;
pub mod linalg;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Real, Scalar};

pub type Matrix = linalg::ComplexMatrix<f64>;
pub type Matrix32 = linalg::ComplexMatrix<f32>;
pub type Element = cvna::AlgebraElement<f64>;
pub type Element32 = cvna::AlgebraElement<f32>;
pub type StateF64 = cvna::State<f64>;
pub type CondExpF64 = cvna::CondExp<f64>;
pub type Representation = groupoid::GRepresentation<f64>;
pub type Representation32 = groupoid::GRepresentation<f32>;
