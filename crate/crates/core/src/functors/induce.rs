use crate::cvna::{check_algebra, Hom};
use crate::error::Result;
use crate::hmod::{fuse, unitor_r, Bimodule, BimoduleMap, Module, ModuleMap};
use crate::scalar::Real;

/// `ind_f N = L²A ⊠_B N` for `f: B -> A`: fiber `i` is `N_{spec(i)}`.
pub fn induce(f: &Hom, n: &Module) -> Result<Module> {
    check_algebra(f.source(), n.algebra())?;
    Module::new(f.target(), f.spec_map().iter().map(|&j| n.dim(j)).collect())
}

pub fn induce_map<T: Real>(f: &Hom, h: &ModuleMap<T>) -> Result<ModuleMap<T>> {
    let source = induce(f, h.source())?;
    let target = induce(f, h.target())?;
    let blocks = f.spec_map().iter().map(|&j| h.block(j).clone()).collect();
    ModuleMap::new(&source, &target, blocks)
}

/// `L²A` as an `A`-`B` bimodule, so that `ind_f N = X ⊠_B N`.
pub fn induction_bimodule(f: &Hom) -> Bimodule {
    Bimodule::new(f.target(), f.source(), f.spec_map().iter().map(|&j| vec![j]).collect())
        .expect("spec map values are atoms of the source")
}

/// `ind_id N -> N`.
pub fn ind_identitor<T: Real>(n: &Module) -> Result<ModuleMap<T>> {
    let id = Hom::identity(n.algebra());
    ModuleMap::from_index_map(&induce(&id, n)?, n, |_, k| k)
}

/// `ind_f ind_g N -> ind_{f∘g} N` for `g: C -> B`, `f: B -> A`.
pub fn ind_compositor<T: Real>(f: &Hom, g: &Hom, n: &Module) -> Result<ModuleMap<T>> {
    let fg = Hom::compose(f, g)?;
    ModuleMap::from_index_map(&induce(f, &induce(g, n)?)?, &induce(&fg, n)?, |_, k| k)
}

/// `ind_f L²B -> L²A`.
pub fn ind_unit_iso<T: Real>(f: &Hom) -> Result<ModuleMap<T>> {
    ModuleMap::from_index_map(&induce(f, &Module::l2(f.source()))?, &Module::l2(f.target()), |_, k| k)
}

/// `ind_f(M ⊠ N) -> ind_f M ⊠ ind_f N`.
pub fn ind_mult_iso<T: Real>(f: &Hom, m: &Module, n: &Module) -> Result<ModuleMap<T>> {
    let source = induce(f, &fuse(m, n)?)?;
    let target = fuse(&induce(f, m)?, &induce(f, n)?)?;
    ModuleMap::from_index_map(&source, &target, |_, k| k)
}

/// The same map assembled from unitors at the generator,
/// `ind(L²B ⊠ L²B) -> ind L²B -> L²A -> L²A ⊠ L²A -> ind L²B ⊠ ind L²B`,
/// then extended to `M ⊠ N` along the induction bimodule.
pub fn ind_mult_from_unitors<T: Real>(f: &Hom, m: &Module, n: &Module) -> Result<ModuleMap<T>> {
    let l2b = Module::l2(f.source());
    let l2a = Module::l2(f.target());
    let iu = ind_unit_iso::<T>(f)?;
    let steps = [
        induce_map(f, &unitor_r::<T>(&l2b)?)?,
        iu.clone(),
        unitor_r::<T>(&l2a)?.dagger(),
        crate::hmod::fuse_maps(&iu.dagger(), &iu.dagger())?,
    ];
    let generator = ModuleMap::chain(&steps.iter().collect::<Vec<_>>())?;
    let x = induction_bimodule(f);
    let eta = BimoduleMap::from_module_map(&x, &x, &generator, 0.0)?;
    let extended = eta.extend(&fuse(m, n)?)?;
    ModuleMap::new(
        &induce(f, &fuse(m, n)?)?,
        &fuse(&induce(f, m)?, &induce(f, n)?)?,
        extended.blocks().to_vec(),
    )
}
