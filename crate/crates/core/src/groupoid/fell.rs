use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::functors::{induce_map, restrict_map, Formalism};
use crate::groupoid::rep::{pullback_rep, regular_rep_with, tensor_reps};
use crate::groupoid::{FiniteGroupoid, GRepresentation};
use crate::hmod::{symmetry, unitor_l, Module, ModuleMap};
use crate::scalar::Real;

/// The absorbing isomorphism `u: H_triv ⊠ t_!𝕀 -> H ⊠ t_!𝕀` for a
/// representation `H` of constant rank, assembled as
/// `H ⊠ res_t L² -> res_t L² ⊠ H -> res_t(L² ⊠ ind_t H) -> res_t ind_t H`,
/// then `res_t α`, then the inverse of the first three steps.
pub fn fell_iso<T: Real>(rep: &GRepresentation<T>) -> Result<ModuleMap<T>> {
    fell_iso_with(&Formalism::standard(), rep)
}

pub fn fell_iso_with<T: Real>(fx: &Formalism, rep: &GRepresentation<T>) -> Result<ModuleMap<T>> {
    if rep.rank().is_none() {
        return Err(Error::NotConstantRank {
            ranks: rep.bundle().dims().to_vec(),
        });
    }
    let g = rep.groupoid();
    let n = g.nerve()?;
    let h = rep.bundle();
    let l2 = Module::l2(g.arrows());
    let regular = crate::functors::restrict(&n.t, &l2)?;
    let ind_t_h = crate::functors::induce(&n.t, h)?;
    let project = ModuleMap::chain(&[
        &symmetry::<T>(h, &regular)?,
        &fx.projection_iso::<T>(&n.t, &l2, h)?,
        &restrict_map(&n.t, &unitor_l::<T>(&ind_t_h)?)?,
    ])?;
    // With constant rank, ind_s H and ind_t H are the same module.
    let arrow = g.first_non_identity().unwrap_or(0);
    let alpha = fx.action(rep.action(), arrow);
    let alpha = ModuleMap::new(&ind_t_h, &ind_t_h, alpha.blocks().to_vec())?;
    ModuleMap::chain(&[&project, &restrict_map(&n.t, &alpha)?, &project.dagger()])
}

/// `‖β ∘ s□u − t□u ∘ γ‖` for `u` from the bundle of `from` (action `γ`) to the
/// bundle of `to` (action `β`).
pub fn intertwiner_residual<T: Real>(
    u: &ModuleMap<T>,
    from: &GRepresentation<T>,
    to: &GRepresentation<T>,
) -> Result<T> {
    let n = from.groupoid().nerve()?;
    let lhs = to.action().compose(&induce_map(&n.s, u)?)?;
    let rhs = induce_map(&n.t, u)?.compose(from.action())?;
    lhs.distance(&rhs)
}

/// Residuals of one absorption instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FellResiduals {
    pub unitarity: f64,
    pub intertwiner: f64,
}

/// Builds `u` for `rep` and measures it against `H_triv ⊠ t_!𝕀` and
/// `H ⊠ t_!𝕀`, the regular representation coming from `fx` as well.
pub fn fell_check(fx: &Formalism, rep: &GRepresentation<f64>) -> Result<FellResiduals> {
    let g = rep.groupoid();
    let d = rep.rank().ok_or_else(|| Error::NotConstantRank {
        ranks: rep.bundle().dims().to_vec(),
    })?;
    let regular = regular_rep_with::<f64>(fx, g)?;
    let trivial = pullback_rep::<f64>(g, d, None, 0.0)?;
    let from = tensor_reps(&trivial, &regular)?;
    let to = tensor_reps(rep, &regular)?;
    let u = fell_iso_with(fx, rep)?;
    Ok(FellResiduals {
        unitarity: u.unitarity_residual()?,
        intertwiner: intertwiner_residual(&u, &from, &to)?,
    })
}

/// Objects grouped by fiber rank, ascending in rank.
///
/// Fails on a zero fiber or on an arrow joining fibers of different rank.
pub fn rank_partition(g: &FiniteGroupoid, bundle: &Module) -> Result<Vec<(usize, Vec<usize>)>> {
    if bundle.algebra() != g.objects() {
        return Err(Error::InvalidRepresentation(
            "the bundle lives over a different object set".into(),
        ));
    }
    if let Some(x) = (0..g.objects().len()).find(|&x| bundle.dim(x) == 0) {
        return Err(Error::ZeroFiber {
            object: g.objects().label(x).to_string(),
        });
    }
    if let Some(a) = (0..g.arrows().len()).find(|&a| bundle.dim(g.source(a)) != bundle.dim(g.target(a))) {
        return Err(Error::RankVariesAlongOrbit {
            object: g.objects().label(g.source(a)).to_string(),
        });
    }
    let mut parts: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..g.objects().len() {
        parts.entry(bundle.dim(x)).or_default().push(x);
    }
    Ok(parts.into_iter().collect())
}

/// One constant-rank piece of a representation.
#[derive(Debug, Clone)]
pub struct RankPart<T: Real> {
    pub rank: usize,
    pub objects: Vec<usize>,
    pub rep: GRepresentation<T>,
}

/// Splits a representation over the full subgroupoids on which its rank is
/// constant.
pub fn decompose_by_rank<T: Real>(rep: &GRepresentation<T>) -> Result<Vec<RankPart<T>>> {
    rank_partition(rep.groupoid(), rep.bundle())?
        .into_iter()
        .map(|(rank, objects)| {
            Ok(RankPart {
                rank,
                rep: rep.restrict_to(&objects)?,
                objects,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::corpus::cyclic;
    use crate::linalg::ComplexMatrix;

    #[test]
    fn sign_rep_is_absorbed() {
        let g = cyclic(2).unwrap();
        let minus = ComplexMatrix::from_real_rows(&[&[-1.0]]);
        let sign = pullback_rep::<f64>(&g, 1, Some(vec![ComplexMatrix::identity(1), minus]), 1e-12).unwrap();
        let r = fell_check(&Formalism::standard(), &sign).unwrap();
        assert!(r.unitarity < 1e-14 && r.intertwiner < 1e-14);
    }

    #[test]
    fn trivial_action_gives_a_permutation() {
        let g = cyclic(3).unwrap();
        let triv = pullback_rep::<f64>(&g, 2, None, 0.0).unwrap();
        let u = fell_iso(&triv).unwrap();
        assert_eq!(u.distance(&ModuleMap::identity(u.source())).unwrap(), 0.0);
    }
}
