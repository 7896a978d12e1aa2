//! Conjugation and the dagger structure: the involutivity equations for `φ`,
//! `r`, `ν`, `ξ`, `ζ`, compatibility of conjugation with projection and base
//! change, and the dagger functor conditions.

use num_complex::Complex;
use rand::Rng;

use crate::coherence::instances::{
    describe, random_algebra, random_hom, random_map, random_module, random_square_over,
};
use crate::coherence::report::{CheckResult, Family, Level, SuiteConfig};
use crate::coherence::trial::Trial;
use crate::cvna::{FibreSquare, Hom};
use crate::error::Result;
use crate::functors::{
    ind_mult_iso, ind_unit_iso, induce, induce_map, restrict, restrict_map, xi_iso, zeta_iso, Formalism,
};
use crate::hmod::{
    associator, dual_module, fuse, fuse_maps, nu_iso, phi_iso, r_iso, symmetry, unitor_l, unitor_r, Module, ModuleMap,
};
use crate::linalg::complex_gaussian;

type Map = ModuleMap<f64>;
type Sides = Result<(Map, Map)>;

fn id(m: &Module) -> Map {
    Map::identity(m)
}

/// `𝔻(φ_M) ∘ φ_{𝔻M} = id_{𝔻M}`.
pub fn phi_dual(fx: &Formalism, m: &Module) -> Sides {
    let dm = dual_module(m);
    let lhs = fx.dual_map(&phi_iso::<f64>(m)).compose(&phi_iso(&dm))?;
    Ok((lhs, id(&dm)))
}

/// `𝔻(r) ∘ φ_𝕀 = r`.
pub fn phi_unit(fx: &Formalism, m: &Module) -> Sides {
    let a = m.algebra();
    let r = r_iso::<f64>(a);
    let lhs = fx.dual_map(&r).compose(&phi_iso(&Module::l2(a)))?;
    Ok((lhs, r))
}

/// `𝔻(ν_{M,N}) ∘ φ_{M⊠N} = ν_{𝔻M,𝔻N} ∘ (φ_M ⊠ φ_N)`.
pub fn phi_tensor(fx: &Formalism, m: &Module, n: &Module) -> Sides {
    let lhs = fx.dual_map(&nu_iso::<f64>(m, n)?).compose(&phi_iso(&fuse(m, n)?))?;
    let rhs = nu_iso(&dual_module(m), &dual_module(n))?.compose(&fuse_maps(&phi_iso(m), &phi_iso(n))?)?;
    Ok((lhs, rhs))
}

/// `ξ_{𝔻M} ∘ res(φ_M) = 𝔻(ξ_M) ∘ φ_{res M}`.
pub fn xi_dual(fx: &Formalism, f: &Hom, m: &Module) -> Sides {
    let dm = dual_module(m);
    let lhs = xi_iso::<f64>(f, &dm)?.compose(&restrict_map(f, &phi_iso(m))?)?;
    let rhs = fx.dual_map(&xi_iso::<f64>(f, m)?).compose(&phi_iso(&restrict(f, m)?))?;
    Ok((lhs, rhs))
}

/// `ζ_{𝔻N} ∘ ind(φ_N) = 𝔻(ζ_N) ∘ φ_{ind N}`.
pub fn zeta_dual(fx: &Formalism, f: &Hom, n: &Module) -> Sides {
    let dn = dual_module(n);
    let lhs = zeta_iso::<f64>(f, &dn)?.compose(&induce_map(f, &phi_iso(n))?)?;
    let rhs = fx.dual_map(&zeta_iso::<f64>(f, n)?).compose(&phi_iso(&induce(f, n)?))?;
    Ok((lhs, rhs))
}

/// `ζ_𝕀 ∘ ind(r) = 𝔻(i) ∘ r ∘ i` with `i: ind L²B -> L²A`.
pub fn zeta_unit(fx: &Formalism, f: &Hom) -> Sides {
    let l2b = Module::l2(f.source());
    let i = ind_unit_iso::<f64>(f)?;
    let lhs = zeta_iso::<f64>(f, &l2b)?.compose(&induce_map(f, &r_iso(f.source()))?)?;
    let rhs = Map::chain(&[&i, &r_iso(f.target()), &fx.dual_map(&i)])?;
    Ok((lhs, rhs))
}

/// `ζ_{M⊠N} ∘ ind(ν) = 𝔻(μ_{M,N}) ∘ ν ∘ (ζ_M ⊠ ζ_N) ∘ μ_{𝔻M,𝔻N}`.
pub fn zeta_tensor(fx: &Formalism, f: &Hom, m: &Module, n: &Module) -> Sides {
    let (dm, dn) = (dual_module(m), dual_module(n));
    let lhs = zeta_iso::<f64>(f, &fuse(m, n)?)?.compose(&induce_map(f, &nu_iso(m, n)?)?)?;
    let rhs = Map::chain(&[
        &ind_mult_iso(f, &dm, &dn)?,
        &fuse_maps(&zeta_iso(f, m)?, &zeta_iso(f, n)?)?,
        &nu_iso(&induce(f, m)?, &induce(f, n)?)?,
        &fx.dual_map(&ind_mult_iso::<f64>(f, m, n)?),
    ])?;
    Ok((lhs, rhs))
}

/// Conjugation against projection, from `res(𝔻M) ⊠ 𝔻N` to `𝔻(res M ⊠ N)`.
pub fn dual_projection(fx: &Formalism, f: &Hom, m: &Module, n: &Module) -> Sides {
    let (dm, dn) = (dual_module(m), dual_module(n));
    let ind_n = induce(f, n)?;
    let lhs = Map::chain(&[
        &fx.projection_iso(f, &dm, &dn)?,
        &restrict_map(f, &fuse_maps(&id(&dm), &zeta_iso(f, n)?)?)?,
        &restrict_map(f, &nu_iso(m, &ind_n)?)?,
        &xi_iso(f, &fuse(m, &ind_n)?)?,
        &fx.dual_map(&fx.projection_iso::<f64>(f, m, n)?),
    ])?;
    let rhs = nu_iso(&restrict(f, m)?, n)?.compose(&fuse_maps(&xi_iso(f, m)?, &id(&dn))?)?;
    Ok((lhs, rhs))
}

/// Conjugation against base change, from `ind_f res_g 𝔻M` to
/// `𝔻(ind_f res_g M)`.
pub fn dual_base_change(fx: &Formalism, sq: &FibreSquare, m: &Module) -> Sides {
    let dm = dual_module(m);
    let ind_fbar_m = induce(sq.fbar(), m)?;
    let lhs = Map::chain(&[
        &fx.base_change_iso(sq, &dm)?,
        &restrict_map(sq.gbar(), &zeta_iso(sq.fbar(), m)?)?,
        &xi_iso(sq.gbar(), &ind_fbar_m)?,
        &fx.dual_map(&fx.base_change_iso::<f64>(sq, m)?),
    ])?;
    let rhs = zeta_iso(sq.f(), &restrict(sq.g(), m)?)?.compose(&induce_map(sq.f(), &xi_iso(sq.g(), m)?)?)?;
    Ok((lhs, rhs))
}

fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> Complex<f64> {
    complex_gaussian(rng)
}

pub(crate) fn run_trial(fx: &Formalism, cfg: &SuiteConfig, index: usize) -> Vec<CheckResult> {
    let mut t = Trial::new(Family::Involutive, cfg, index);
    let (na, nd) = (cfg.max_atoms, cfg.max_fiber_dim);

    let b = random_algebra(&mut t.rng, na);
    let f = random_hom(&mut t.rng, &b, na);
    let a = f.target().clone();
    let m = random_module(&mut t.rng, &a, nd);
    let m2 = random_module(&mut t.rng, &a, nd);
    let n = random_module(&mut t.rng, &b, nd);
    let n2 = random_module(&mut t.rng, &b, nd);
    t.set_dims(describe(&[("M", &m), ("N", &n)]));

    t.diagram("def2.6-phi-dual", Level::Extended, phi_dual(fx, &m));
    t.diagram("def2.6-phi-unit", Level::Extended, phi_unit(fx, &m));
    t.diagram("def2.6-phi-tensor", Level::Extended, phi_tensor(fx, &m, &m2));
    t.diagram("def2.6-xi-dual", Level::Extended, xi_dual(fx, &f, &m));
    t.diagram("def2.6-zeta-dual", Level::Extended, zeta_dual(fx, &f, &n));
    t.diagram("def2.6-zeta-unit", Level::Generator, zeta_unit(fx, &f));
    t.diagram("def2.6-zeta-tensor", Level::Extended, zeta_tensor(fx, &f, &n, &n2));
    t.diagram("def2.6-projection", Level::Extended, dual_projection(fx, &f, &m, &n));
    let l2a = Module::l2(&a);
    let l2b = Module::l2(&b);
    t.diagram(
        "def2.6-projection",
        Level::Generator,
        dual_projection(fx, &f, &l2a, &l2b),
    );

    let c = random_algebra(&mut t.rng, na);
    let sq = random_square_over(&mut t.rng, &c, na).expect("retries until nonempty");
    let mb = random_module(&mut t.rng, sq.b(), nd);
    t.diagram("def2.6-base-change", Level::Extended, dual_base_change(fx, &sq, &mb));
    let ma = random_module(&mut t.rng, sq.a(), nd);
    t.diagram(
        "def2.6-base-change",
        Level::Extended,
        dual_base_change(fx, &sq.transposed(), &ma),
    );
    t.diagram(
        "def2.6-base-change",
        Level::Generator,
        dual_base_change(fx, &sq, &Module::l2(sq.b())),
    );

    // Conjugation is a linear contravariant involution commuting with the dagger.
    t.set_dims(describe(&[("M", &m), ("M'", &m2)]));
    let maps = random_map(&mut t.rng, &m, &m2).and_then(|h| Ok((h, random_map(&mut t.rng, &m2, &m)?)));
    let z = random_scalar(&mut t.rng);
    match maps {
        Ok((h, k)) => {
            let dual = |x: &Map| fx.dual_map(x);
            t.diagram("dual-linear", Level::Direct, Ok((dual(&h.scale(z)), dual(&h).scale(z))));
            t.diagram("def2.7-dual-functor", Level::Direct, Ok((dual(&dual(&h)), h.clone())));
            t.diagram(
                "def2.7-dual-functor",
                Level::Direct,
                k.compose(&h)
                    .and_then(|kh| Ok((dual(&kh), dual(&h).compose(&dual(&k))?))),
            );
            t.diagram("dagger-dual", Level::Direct, Ok((dual(&h.dagger()), dual(&h).dagger())));
            t.diagram(
                "antilinear",
                Level::Direct,
                Ok((h.scale(z).dagger(), h.dagger().scale(z.conj()))),
            );
            t.diagram("dagger-involution", Level::Direct, Ok((h.dagger().dagger(), h.clone())));
            t.diagram(
                "dagger-composition",
                Level::Direct,
                k.compose(&h)
                    .and_then(|kh| Ok((kh.dagger(), h.dagger().compose(&k.dagger())?))),
            );
            t.diagram(
                "dagger-res",
                Level::Direct,
                restrict_map(&f, &h).and_then(|r| Ok((restrict_map(&f, &h.dagger())?, r.dagger()))),
            );
            t.diagram(
                "dagger-fusion",
                Level::Direct,
                fuse_maps(&h, &k).and_then(|x| Ok((fuse_maps(&h.dagger(), &k.dagger())?, x.dagger()))),
            );
        }
        Err(e) => {
            t.record("dual-linear", Level::Direct, Err(e));
        }
    }
    let g = random_map(&mut t.rng, &n, &n2);
    t.diagram(
        "dagger-ind",
        Level::Direct,
        g.and_then(|g| Ok((induce_map(&f, &g.dagger())?, induce_map(&f, &g)?.dagger()))),
    );

    // Every structure isomorphism met in this trial is unitary.
    let isos: Vec<Result<Map>> = vec![
        xi_iso(&f, &m),
        zeta_iso(&f, &n),
        Ok(phi_iso(&m)),
        Ok(r_iso(&a)),
        nu_iso(&m, &m2),
        ind_unit_iso(&f),
        ind_mult_iso(&f, &n, &n2),
        unitor_r(&m),
        unitor_l(&m),
        associator(&m, &m2, &m),
        symmetry(&m, &m2),
        fx.projection_iso(&f, &m, &n),
        fx.base_change_iso(&sq, &mb),
    ];
    for iso in isos {
        t.unitary("unitarity", Level::Extended, iso);
    }
    t.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cvna::{fibre_product, Algebra};

    #[test]
    fn identity_instance_is_exact() {
        let a = Algebra::standard(2);
        let e = Hom::identity(&a);
        let m = Module::new(&a, vec![2, 1]).unwrap();
        let fx = Formalism::standard();
        let sq = fibre_product(&e, &e).unwrap();
        for (l, r) in [
            phi_dual(&fx, &m).unwrap(),
            phi_tensor(&fx, &m, &m).unwrap(),
            zeta_unit(&fx, &e).unwrap(),
            zeta_tensor(&fx, &e, &m, &m).unwrap(),
            dual_projection(&fx, &e, &m, &m).unwrap(),
            dual_base_change(&fx, &sq, &m).unwrap(),
        ] {
            assert_eq!(l.distance(&r).unwrap(), 0.0);
        }
    }
}
