//! Restriction, induction and fusion as functors on modules, with their
//! structure isomorphisms: compositors, monoidality of induction, projection,
//! base change and compatibility with conjugation.

mod duality;
mod formalism;
mod induce;
mod natural;
mod restrict;

pub use duality::{xi_iso, zeta_iso};
pub use formalism::{base_change_bimodules, projection_bimodules, Formalism, Mutation};
pub use induce::{
    ind_compositor, ind_identitor, ind_mult_from_unitors, ind_mult_iso, ind_unit_iso, induce, induce_map,
    induction_bimodule,
};
pub use natural::{extend_by_generator, NaturalIso, EQUIVARIANCE_SLACK};
pub use restrict::{res_compositor, res_identitor, restrict, restrict_map};

use crate::cvna::{FibreSquare, Hom};
use crate::error::Result;
use crate::hmod::{Module, ModuleMap};
use crate::scalar::Real;

/// `res_f M ⊠_B N -> res_f(M ⊠_A ind_f N)` with unmodified structure maps.
pub fn projection_iso<T: Real>(f: &Hom, m: &Module, n: &Module) -> Result<ModuleMap<T>> {
    Formalism::standard().projection_iso(f, m, n)
}

/// `ind_f res_g M -> res_ḡ ind_f̄ M` with unmodified structure maps.
pub fn base_change_iso<T: Real>(sq: &FibreSquare, m: &Module) -> Result<ModuleMap<T>> {
    Formalism::standard().base_change_iso(sq, m)
}
