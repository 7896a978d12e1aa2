use crate::cvna::Hom;
use crate::error::Result;
use crate::functors::induce::induce;
use crate::functors::restrict::restrict;
use crate::hmod::{dual_module, Module, ModuleMap};
use crate::scalar::Real;

/// `ξ: res_f 𝔻M -> 𝔻 res_f M`.
pub fn xi_iso<T: Real>(f: &Hom, m: &Module) -> Result<ModuleMap<T>> {
    let source = restrict(f, &dual_module(m))?;
    let target = dual_module(&restrict(f, m)?);
    ModuleMap::from_index_map(&source, &target, |_, k| k)
}

/// `ζ: ind_f 𝔻N -> 𝔻 ind_f N`.
pub fn zeta_iso<T: Real>(f: &Hom, n: &Module) -> Result<ModuleMap<T>> {
    let source = induce(f, &dual_module(n))?;
    let target = dual_module(&induce(f, n)?);
    ModuleMap::from_index_map(&source, &target, |_, k| k)
}
