//! Modules over finite commutative algebras, fusion, the `L²` isomorphism of
//! fibre products, and conjugation.

mod bimodule;
mod duality;
mod fusion;
mod lambda;
mod module;

pub use bimodule::{Bimodule, BimoduleMap};
pub use duality::{dagger, dual_map, dual_module, nu_iso, phi_iso, r_iso};
pub use fusion::{associator, fuse, fuse_maps, fusion_inner_product, symmetry, unitor_l, unitor_r};
pub use lambda::{
    l2_fusion, l2_fusion_basis, l2_of_iso, l2_product, lambda_iso, span_image, span_vector, FusionVector,
};
pub use module::{Module, ModuleMap};

/// The standard form `L²A`.
pub fn l2(a: &crate::cvna::Algebra) -> Module {
    Module::l2(a)
}
