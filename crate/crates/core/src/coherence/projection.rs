//! Compatibility of the projection isomorphism with identities, composition,
//! units and fusion.

use crate::coherence::instances::{describe, random_algebra, random_hom, random_map, random_module};
use crate::coherence::report::{CheckResult, Family, Level, SuiteConfig};
use crate::coherence::trial::Trial;
use crate::cvna::Hom;
use crate::error::Result;
use crate::functors::{
    ind_compositor, ind_identitor, ind_mult_iso, ind_unit_iso, induce, res_compositor, res_identitor, restrict,
    restrict_map, Formalism,
};
use crate::hmod::{fuse, fuse_maps, unitor_r, Module, ModuleMap};

type Map = ModuleMap<f64>;
type Sides = Result<(Map, Map)>;

fn id(m: &Module) -> Map {
    ModuleMap::identity(m)
}

/// `f = id`: projection followed by the identitors equals the identitors.
pub fn item1(fx: &Formalism, m: &Module, n: &Module) -> Sides {
    let e = Hom::identity(m.algebra());
    let lhs = restrict_map(&e, &fuse_maps(&id(m), &ind_identitor(n)?)?)?.compose(&fx.projection_iso(&e, m, n)?)?;
    let rhs = res_identitor::<f64>(&fuse(m, n)?)?
        .dagger()
        .compose(&fuse_maps(&res_identitor(m)?, &id(n))?)?;
    Ok((lhs, rhs))
}

/// Projection along `w = u ∘ v` against projection along `v` then `u`.
/// `M` lives over the target of `u`, `N` over the source of `v`.
pub fn item2(fx: &Formalism, u: &Hom, v: &Hom, m: &Module, n: &Module) -> Sides {
    let w = Hom::compose(u, v)?;
    let res_u_m = restrict(u, m)?;
    let ind_v_n = induce(v, n)?;
    let inner = fuse(m, &induce(u, &ind_v_n)?)?;
    let lhs = Map::chain(&[
        &fx.projection_iso(v, &res_u_m, n)?,
        &restrict_map(v, &fx.projection_iso(u, m, &ind_v_n)?)?,
        &res_compositor(u, v, &inner)?,
        &restrict_map(&w, &fuse_maps(&id(m), &ind_compositor(u, v, n)?)?)?,
    ])?;
    let rhs = fx
        .projection_iso(&w, m, n)?
        .compose(&fuse_maps(&res_compositor(u, v, m)?, &id(n))?)?;
    Ok((lhs, rhs))
}

/// Projection at the unit against the unitors.
pub fn item3(fx: &Formalism, u: &Hom, m: &Module) -> Sides {
    let l2b = Module::l2(u.source());
    let lhs = restrict_map(u, &fuse_maps(&id(m), &ind_unit_iso(u)?)?)?.compose(&fx.projection_iso(u, m, &l2b)?)?;
    let rhs = restrict_map(u, &unitor_r::<f64>(m)?.dagger())?.compose(&unitor_r(&restrict(u, m)?)?)?;
    Ok((lhs, rhs))
}

/// Projection against fusion: `(res M ⊠ N) ⊠ P -> res((M ⊠ ind N) ⊠ ind P)`
/// in two ways.
pub fn item4(fx: &Formalism, f: &Hom, m: &Module, n: &Module, p: &Module) -> Sides {
    let res_m = restrict(f, m)?;
    let (ind_n, ind_p) = (induce(f, n)?, induce(f, p)?);
    let lhs = fx
        .projection_iso(f, &fuse(m, &ind_n)?, p)?
        .compose(&fuse_maps(&fx.projection_iso(f, m, n)?, &id(p))?)?;
    let rhs = Map::chain(&[
        &fx.associator(&res_m, n, p)?,
        &fx.projection_iso(f, m, &fuse(n, p)?)?,
        &restrict_map(f, &fuse_maps(&id(m), &ind_mult_iso(f, n, p)?)?)?,
        &restrict_map(f, &fx.associator::<f64>(m, &ind_n, &ind_p)?.dagger())?,
    ])?;
    Ok((lhs, rhs))
}

pub(crate) fn run_trial(fx: &Formalism, cfg: &SuiteConfig, index: usize) -> Vec<CheckResult> {
    let mut t = Trial::new(Family::Projection, cfg, index);
    let (na, nd) = (cfg.max_atoms, cfg.max_fiber_dim);

    // Item 1.
    let a = random_algebra(&mut t.rng, na);
    let m = random_module(&mut t.rng, &a, nd);
    let n = random_module(&mut t.rng, &a, nd);
    t.set_dims(describe(&[("M", &m), ("N", &n)]));
    let g = t.diagram("def2.3-item1", Level::Generator, item1(fx, &m, &Module::l2(&a)));
    let e = t.diagram("def2.3-item1", Level::Extended, item1(fx, &m, &n));
    t.consistency("item1", g, e);

    // Item 2: C -v-> B -u-> A.
    let c = random_algebra(&mut t.rng, na);
    let v = random_hom(&mut t.rng, &c, na);
    let u = random_hom(&mut t.rng, v.target(), na);
    let m = random_module(&mut t.rng, u.target(), nd);
    let n = random_module(&mut t.rng, &c, nd);
    t.set_dims(describe(&[("M", &m), ("N", &n)]));
    let g = t.diagram("def2.3-item2", Level::Generator, item2(fx, &u, &v, &m, &Module::l2(&c)));
    let e = t.diagram("def2.3-item2", Level::Extended, item2(fx, &u, &v, &m, &n));
    t.consistency("item2", g, e);

    // Item 3.
    let b = random_algebra(&mut t.rng, na);
    let u = random_hom(&mut t.rng, &b, na);
    let m = random_module(&mut t.rng, u.target(), nd);
    t.set_dims(describe(&[("M", &m)]));
    let g = t.diagram("def2.3-item3", Level::Generator, item3(fx, &u, &Module::l2(u.target())));
    let e = t.diagram("def2.3-item3", Level::Extended, item3(fx, &u, &m));
    t.consistency("item3", g, e);

    // Item 4.
    let b = random_algebra(&mut t.rng, na);
    let f = random_hom(&mut t.rng, &b, na);
    let m = random_module(&mut t.rng, f.target(), nd);
    let n = random_module(&mut t.rng, &b, nd);
    let p = random_module(&mut t.rng, &b, nd);
    let l2b = Module::l2(&b);
    t.set_dims(describe(&[("M", &m), ("N", &n), ("P", &p)]));
    let g = t.diagram("def2.3-item4", Level::Generator, item4(fx, &f, &m, &l2b, &l2b));
    let e = t.diagram("def2.3-item4", Level::Extended, item4(fx, &f, &m, &n, &p));
    t.consistency("item4", g, e);

    // Naturality and unitarity of the projection isomorphism.
    let n2 = random_module(&mut t.rng, &b, nd);
    let m2 = random_module(&mut t.rng, f.target(), nd);
    t.unitary("projection-unitarity", Level::Extended, fx.projection_iso(&f, &m, &n));
    let in_second = fx.projection_in_second::<f64>(&f, &m);
    let in_first = fx.projection_in_first::<f64>(&f, &n);
    for _ in 0..3 {
        let h = random_map(&mut t.rng, &n, &n2);
        t.record(
            "projection-naturality",
            Level::Extended,
            h.and_then(|h| in_second.naturality_residual(&h)),
        );
        let k = random_map(&mut t.rng, &m, &m2);
        t.record(
            "projection-naturality",
            Level::Extended,
            k.and_then(|k| in_first.naturality_residual(&k)),
        );
    }
    t.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cvna::Algebra;

    #[test]
    fn all_identity_instance_is_exact() {
        let a = Algebra::scalars();
        let l2 = Module::l2(&a);
        let fx = Formalism::standard();
        let e = Hom::identity(&a);
        let (l, r) = item1(&fx, &l2, &l2).unwrap();
        assert_eq!(l.distance(&r).unwrap(), 0.0);
        let (l, r) = item4(&fx, &e, &l2, &l2, &l2).unwrap();
        assert_eq!(l.distance(&r).unwrap(), 0.0);
    }
}
