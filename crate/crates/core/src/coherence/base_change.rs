//! Compatibility of base change with identities and with horizontal and
//! vertical gluing of fibre product squares.

use rand::Rng;

use crate::coherence::instances::{describe, random_algebra, random_hom, random_map, random_module, random_square};
use crate::coherence::report::{CheckResult, Family, Level, SuiteConfig};
use crate::coherence::trial::Trial;
use crate::cvna::{fibre_unitor, fibre_unitor_left, Algebra, FibreSquare, Hom};
use crate::error::Result;
use crate::functors::{
    ind_compositor, ind_identitor, induce, induce_map, res_compositor, res_identitor, restrict, restrict_map, Formalism,
};
use crate::hmod::{Module, ModuleMap};

type Map = ModuleMap<f64>;
type Sides = Result<(Map, Map)>;

/// `g = id`: base change followed by the identification
/// `res_ḡ ind_f̄ M ≅ ind_u ind_f̄ M -> ind_f M` equals `ind_f` of the identitor.
pub fn item5(fx: &Formalism, sq: &FibreSquare, m: &Module) -> Sides {
    let u = fibre_unitor(sq)?;
    let ind_fbar_m = induce(sq.fbar(), m)?;
    let via_u = ModuleMap::from_index_map(&restrict(sq.gbar(), &ind_fbar_m)?, &induce(&u, &ind_fbar_m)?, |_, k| k)?;
    let vertical = ind_compositor(&u, sq.fbar(), m)?.compose(&via_u)?;
    let lhs = vertical.compose(&fx.base_change_iso(sq, m)?)?;
    let rhs = induce_map(sq.f(), &res_identitor(m)?)?;
    Ok((lhs, rhs))
}

/// `f = id`: base change followed by `res_ḡ ind_f̄ M ≅ res_ḡ res_v M -> res_g M`
/// equals the induction identitor.
pub fn item6(fx: &Formalism, sq: &FibreSquare, m: &Module) -> Sides {
    let v = fibre_unitor_left(sq)?;
    let ind_fbar_m = induce(sq.fbar(), m)?;
    let via_v = ModuleMap::from_index_map(&ind_fbar_m, &restrict(&v, m)?, |_, k| k)?;
    let vertical = res_compositor(&v, sq.gbar(), m)?.compose(&restrict_map(sq.gbar(), &via_v)?)?;
    let lhs = vertical.compose(&fx.base_change_iso(sq, m)?)?;
    let rhs = ind_identitor(&restrict(sq.g(), m)?)?;
    Ok((lhs, rhs))
}

/// Horizontal gluing: `second` sits over `first.gbar()`.
pub fn item7(fx: &Formalism, first: &FibreSquare, second: &FibreSquare, m: &Module) -> Sides {
    let glued = FibreSquare::glue_horizontal(first, second)?;
    let ind_fbar1_m = induce(first.fbar(), m)?;
    let lhs = Map::chain(&[
        &induce_map(second.f(), &fx.base_change_iso(first, m)?)?,
        &fx.base_change_iso(second, &ind_fbar1_m)?,
        &restrict_map(second.gbar(), &ind_compositor(second.fbar(), first.fbar(), m)?)?,
    ])?;
    let rhs =
        fx.base_change_iso(&glued, m)?
            .compose(&ind_compositor(second.f(), first.f(), &restrict(first.g(), m)?)?)?;
    Ok((lhs, rhs))
}

/// Vertical gluing: `second` sits over `first.fbar()`.
pub fn item8(fx: &Formalism, first: &FibreSquare, second: &FibreSquare, m: &Module) -> Sides {
    let glued = FibreSquare::glue_vertical(first, second)?;
    let lhs = Map::chain(&[
        &fx.base_change_iso(first, &restrict(second.g(), m)?)?,
        &restrict_map(first.gbar(), &fx.base_change_iso(second, m)?)?,
        &res_compositor(second.gbar(), first.gbar(), &induce(second.fbar(), m)?)?,
    ])?;
    let rhs = fx
        .base_change_iso(&glued, m)?
        .compose(&induce_map(first.f(), &res_compositor(second.g(), first.g(), m)?)?)?;
    Ok((lhs, rhs))
}

/// A random square with the given legs, retrying the legs until the product
/// is nonempty.
fn square_with<R: Rng + ?Sized>(
    rng: &mut R,
    mut f: impl FnMut(&mut R) -> Hom,
    mut g: impl FnMut(&mut R) -> Hom,
) -> FibreSquare {
    loop {
        let (ff, gg) = (f(rng), g(rng));
        if let Ok(sq) = random_square(rng, &ff, &gg) {
            return sq;
        }
    }
}

pub(crate) fn run_trial(fx: &Formalism, cfg: &SuiteConfig, index: usize) -> Vec<CheckResult> {
    let mut t = Trial::new(Family::BaseChange, cfg, index);
    let (na, nd) = (cfg.max_atoms, cfg.max_fiber_dim);

    // Item 5: g = id.
    let c = random_algebra(&mut t.rng, na);
    let sq = square_with(&mut t.rng, |r| random_hom(r, &c, na), |_| Hom::identity(&c));
    let m = random_module(&mut t.rng, &c, nd);
    t.set_dims(describe(&[("M", &m)]));
    let g = t.diagram("def2.3-item5", Level::Generator, item5(fx, &sq, &Module::l2(&c)));
    let e = t.diagram("def2.3-item5", Level::Extended, item5(fx, &sq, &m));
    t.consistency("item5", g, e);

    // Item 6: f = id.
    let c = random_algebra(&mut t.rng, na);
    let sq = square_with(&mut t.rng, |_| Hom::identity(&c), |r| random_hom(r, &c, na));
    let m = random_module(&mut t.rng, sq.b(), nd);
    t.set_dims(describe(&[("M", &m)]));
    let g = t.diagram("def2.3-item6", Level::Generator, item6(fx, &sq, &Module::l2(sq.b())));
    let e = t.diagram("def2.3-item6", Level::Extended, item6(fx, &sq, &m));
    t.consistency("item6", g, e);

    // Item 7: horizontal gluing.
    let c = random_algebra(&mut t.rng, na);
    let first = random_square_pair_base(&mut t.rng, &c, na);
    let gbar1 = first.gbar().clone();
    let a1 = first.a().clone();
    let second = square_with(&mut t.rng, |r| random_hom(r, &a1, na), |_| gbar1.clone());
    let m = random_module(&mut t.rng, first.b(), nd);
    t.set_dims(describe(&[("M", &m)]));
    let g = t.diagram(
        "def2.3-item7",
        Level::Generator,
        item7(fx, &first, &second, &Module::l2(first.b())),
    );
    let e = t.diagram("def2.3-item7", Level::Extended, item7(fx, &first, &second, &m));
    t.consistency("item7", g, e);

    // Item 8: vertical gluing.
    let c = random_algebra(&mut t.rng, na);
    let first = random_square_pair_base(&mut t.rng, &c, na);
    let fbar1 = first.fbar().clone();
    let b1 = first.b().clone();
    let second = square_with(&mut t.rng, |_| fbar1.clone(), |r| random_hom(r, &b1, na));
    let m = random_module(&mut t.rng, second.b(), nd);
    t.set_dims(describe(&[("M", &m)]));
    let g = t.diagram(
        "def2.3-item8",
        Level::Generator,
        item8(fx, &first, &second, &Module::l2(second.b())),
    );
    let e = t.diagram("def2.3-item8", Level::Extended, item8(fx, &first, &second, &m));
    t.consistency("item8", g, e);

    // Naturality and unitarity of base change.
    let m2 = random_module(&mut t.rng, second.b(), nd);
    t.unitary(
        "base-change-unitarity",
        Level::Extended,
        fx.base_change_iso(&second, &m),
    );
    t.unitary(
        "base-change-unitarity",
        Level::Extended,
        fx.base_change_iso(&first, &Module::l2(first.b())),
    );
    let nat = fx.base_change_natural::<f64>(&second);
    for _ in 0..3 {
        let h = random_map(&mut t.rng, &m, &m2);
        t.record(
            "base-change-naturality",
            Level::Extended,
            h.and_then(|h| nat.naturality_residual(&h)),
        );
    }
    t.finish()
}

fn random_square_pair_base<R: Rng + ?Sized>(rng: &mut R, c: &Algebra, na: usize) -> FibreSquare {
    square_with(rng, |r| random_hom(r, c, na), |r| random_hom(r, c, na))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cvna::fibre_product;

    #[test]
    fn identity_square_is_exact() {
        let c = Algebra::standard(2);
        let sq = fibre_product(&Hom::identity(&c), &Hom::identity(&c)).unwrap();
        let m = Module::new(&c, vec![2, 1]).unwrap();
        let fx = Formalism::standard();
        for (l, r) in [item5(&fx, &sq, &m).unwrap(), item6(&fx, &sq, &m).unwrap()] {
            assert_eq!(l.distance(&r).unwrap(), 0.0);
        }
    }
}
