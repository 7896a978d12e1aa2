//! The conjugation functor `𝔻` and its structure maps.
//!
//! A conjugate module is identified with the original through the real
//! standard basis, so `𝔻M` has the same fibers as `M` and `𝔻h` is the
//! blockwise transpose. The structure maps `φ`, `r`, `ν` become identities.

use crate::cvna::Algebra;
use crate::error::Result;
use crate::hmod::fusion::fuse;
use crate::hmod::module::{Module, ModuleMap};
use crate::scalar::Real;

pub fn dual_module(m: &Module) -> Module {
    m.clone()
}

/// `𝔻h: 𝔻N -> 𝔻M` for `h: M -> N`.
pub fn dual_map<T: Real>(h: &ModuleMap<T>) -> ModuleMap<T> {
    let blocks = h.blocks().iter().map(|b| b.transpose()).collect();
    ModuleMap::new(&dual_module(h.target()), &dual_module(h.source()), blocks)
        .expect("transposed blocks fit the swapped modules")
}

pub fn dagger<T: Real>(h: &ModuleMap<T>) -> ModuleMap<T> {
    h.dagger()
}

/// `φ_M: M -> 𝔻𝔻M`.
pub fn phi_iso<T: Real>(m: &Module) -> ModuleMap<T> {
    ModuleMap::identity(m)
}

/// `r: L²A -> 𝔻L²A`.
pub fn r_iso<T: Real>(a: &Algebra) -> ModuleMap<T> {
    ModuleMap::identity(&Module::l2(a))
}

/// `ν: 𝔻M ⊠ 𝔻N -> 𝔻(M ⊠ N)`.
pub fn nu_iso<T: Real>(m: &Module, n: &Module) -> Result<ModuleMap<T>> {
    Ok(ModuleMap::identity(&fuse(&dual_module(m), &dual_module(n))?))
}
