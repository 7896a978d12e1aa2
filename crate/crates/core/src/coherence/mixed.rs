//! Compatibility of projection with base change, and of the two projection
//! isomorphisms attached to a fibre product square.

use crate::coherence::instances::{describe, random_algebra, random_hom, random_module, random_square};
use crate::coherence::report::{CheckResult, Family, Level, SuiteConfig};
use crate::coherence::trial::Trial;
use crate::cvna::FibreSquare;
use crate::error::Result;
use crate::functors::{
    ind_compositor, ind_mult_iso, induce, induce_map, res_compositor, restrict, restrict_map, Formalism,
};
use crate::hmod::{fuse, fuse_maps, symmetry, Module, ModuleMap};

type Map = ModuleMap<f64>;
type Sides = Result<(Map, Map)>;

fn id(m: &Module) -> Map {
    ModuleMap::identity(m)
}

/// Projection along `g` followed by base change, against base change followed
/// by projection along `ḡ`. Both run `ind_f(res_g M ⊠ N) ->
/// res_ḡ(ind_f̄ M ⊠ ind_{ḡ∘f} N)` for `M` over `B`, `N` over `C`.
pub fn item9(fx: &Formalism, sq: &FibreSquare, m: &Module, n: &Module) -> Sides {
    let (f, g, gbar, fbar) = (sq.f(), sq.g(), sq.gbar(), sq.fbar());
    let ind_g_n = induce(g, n)?;
    let ind_fbar_m = induce(fbar, m)?;
    let lhs = Map::chain(&[
        &induce_map(f, &fx.projection_iso(g, m, n)?)?,
        &fx.base_change_iso(sq, &fuse(m, &ind_g_n)?)?,
        &restrict_map(gbar, &ind_mult_iso(fbar, m, &ind_g_n)?)?,
        &restrict_map(gbar, &fuse_maps(&id(&ind_fbar_m), &ind_compositor(fbar, g, n)?)?)?,
    ])?;
    let ind_f_n = induce(f, n)?;
    let rhs = Map::chain(&[
        &ind_mult_iso(f, &restrict(g, m)?, n)?,
        &fuse_maps(&fx.base_change_iso(sq, m)?, &id(&ind_f_n))?,
        &fx.projection_iso(gbar, &ind_fbar_m, &ind_f_n)?,
        &restrict_map(gbar, &fuse_maps(&id(&ind_fbar_m), &ind_compositor(gbar, f, n)?)?)?,
    ])?;
    Ok((lhs, rhs))
}

/// Both ways from `res_f M ⊠ res_g N` to `res_{ḡ∘f}(ind_ḡ M ⊠ ind_f̄ N)` for
/// `M` over `A`, `N` over `B`: through projection along `g` and base change
/// of the transposed square, or through projection along `f` and base change
/// of the square itself.
pub fn item10(fx: &Formalism, sq: &FibreSquare, m: &Module, n: &Module) -> Sides {
    let (f, g, gbar, fbar) = (sq.f(), sq.g(), sq.gbar(), sq.fbar());
    let sq_t = sq.transposed();
    let res_f_m = restrict(f, m)?;
    let res_g_n = restrict(g, n)?;
    let ind_gbar_m = induce(gbar, m)?;
    let ind_fbar_n = induce(fbar, n)?;
    let top_inner = induce(g, &res_f_m)?;

    let top1 = Map::chain(&[
        &symmetry(&res_f_m, &res_g_n)?,
        &fx.projection_iso(g, n, &res_f_m)?,
        &restrict_map(g, &symmetry(n, &top_inner)?)?,
    ])?;
    let top2 = restrict_map(g, &fuse_maps(&fx.base_change_iso(&sq_t, m)?, &id(n))?)?;
    let right1 = restrict_map(g, &fx.projection_iso(fbar, &ind_gbar_m, n)?)?;
    let right2 = res_compositor(fbar, g, &fuse(&ind_gbar_m, &ind_fbar_n)?)?;
    let lhs = Map::chain(&[&top1, &top2, &right1, &right2])?;

    let res_gbar_ind_n = restrict(gbar, &ind_fbar_n)?;
    let left1 = fx.projection_iso(f, m, &res_g_n)?;
    let left2 = restrict_map(f, &fuse_maps(&id(m), &fx.base_change_iso(sq, n)?)?)?;
    let bottom1 = restrict_map(
        f,
        &Map::chain(&[
            &symmetry(m, &res_gbar_ind_n)?,
            &fx.projection_iso(gbar, &ind_fbar_n, m)?,
            &restrict_map(gbar, &symmetry(&ind_fbar_n, &ind_gbar_m)?)?,
        ])?,
    )?;
    let bottom2 = res_compositor(gbar, f, &fuse(&ind_gbar_m, &ind_fbar_n)?)?;
    let rhs = Map::chain(&[&left1, &left2, &bottom1, &bottom2])?;
    Ok((lhs, rhs))
}

fn random_square_over(t: &mut Trial, na: usize) -> FibreSquare {
    let c = random_algebra(&mut t.rng, na);
    loop {
        let f = random_hom(&mut t.rng, &c, na);
        let g = random_hom(&mut t.rng, &c, na);
        if let Ok(sq) = random_square(&mut t.rng, &f, &g) {
            return sq;
        }
    }
}

pub(crate) fn run_trial(fx: &Formalism, cfg: &SuiteConfig, index: usize) -> Vec<CheckResult> {
    let mut t = Trial::new(Family::Mixed, cfg, index);
    let (na, nd) = (cfg.max_atoms, cfg.max_fiber_dim);

    let sq = random_square_over(&mut t, na);
    let m = random_module(&mut t.rng, sq.b(), nd);
    let n = random_module(&mut t.rng, sq.c(), nd);
    t.set_dims(describe(&[("M", &m), ("N", &n)]));
    let (l2b, l2c) = (Module::l2(sq.b()), Module::l2(sq.c()));
    let g = t.diagram("def2.3-item9", Level::Generator, item9(fx, &sq, &l2b, &l2c));
    let e = t.diagram("def2.3-item9", Level::Extended, item9(fx, &sq, &m, &n));
    t.consistency("item9", g, e);

    let sq = random_square_over(&mut t, na);
    let m = random_module(&mut t.rng, sq.a(), nd);
    let n = random_module(&mut t.rng, sq.b(), nd);
    t.set_dims(describe(&[("M", &m), ("N", &n)]));
    let (l2a, l2b) = (Module::l2(sq.a()), Module::l2(sq.b()));
    let g = t.diagram("def2.3-item10", Level::Generator, item10(fx, &sq, &l2a, &l2b));
    let e = t.diagram("def2.3-item10", Level::Extended, item10(fx, &sq, &m, &n));
    t.consistency("item10", g, e);
    t.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cvna::{fibre_product, Algebra, Hom};

    #[test]
    fn trivial_algebras_are_exact() {
        let c = Algebra::scalars();
        let e = Hom::identity(&c);
        let sq = fibre_product(&e, &e).unwrap();
        let l2 = Module::l2(&c);
        let fx = Formalism::standard();
        for (l, r) in [item9(&fx, &sq, &l2, &l2).unwrap(), item10(&fx, &sq, &l2, &l2).unwrap()] {
            assert_eq!(l.distance(&r).unwrap(), 0.0);
        }
    }
}
