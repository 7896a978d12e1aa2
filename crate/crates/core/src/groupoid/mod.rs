//! Finite groupoids, their unitary representations, the regular
//! representation obtained from two base changes, and the isomorphism by
//! which the regular representation absorbs a representation of constant
//! rank.

pub mod corpus;
mod fell;
mod finite;
mod rep;

pub use fell::{
    decompose_by_rank, fell_check, fell_iso, fell_iso_with, intertwiner_residual, rank_partition, FellResiduals,
    RankPart,
};
pub use finite::{FiniteGroupoid, Nerve};
pub use rep::{pullback_rep, regular_rep, regular_rep_with, tensor_reps, GRepresentation};
