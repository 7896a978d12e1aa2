use num_complex::Complex;

use crate::cvna::Algebra;
use crate::error::{Error, Result};
use crate::functors::{ind_mult_iso, ind_unit_iso, induce, induce_map, restrict, restrict_map, Formalism};
use crate::groupoid::FiniteGroupoid;
use crate::hmod::{fuse, fuse_maps, Module, ModuleMap};
use crate::linalg::ComplexMatrix;
use crate::scalar::Real;

/// A unitary representation: a bundle `H` over the objects and an action
/// `ind_s H -> ind_t H` whose block at an arrow `g` is `α_g: H_{s(g)} -> H_{t(g)}`.
#[derive(Debug, Clone)]
pub struct GRepresentation<T: Real> {
    groupoid: FiniteGroupoid,
    bundle: Module,
    action: ModuleMap<T>,
}

impl<T: Real> GRepresentation<T> {
    /// Checks shapes only; see [`GRepresentation::validate`].
    pub fn from_action(groupoid: &FiniteGroupoid, bundle: Module, action: ModuleMap<T>) -> Result<Self> {
        if bundle.algebra() != groupoid.objects() {
            return Err(Error::InvalidRepresentation(
                "the bundle lives over a different object set".into(),
            ));
        }
        let nerve = groupoid.nerve()?;
        let (src, tgt) = (induce(&nerve.s, &bundle)?, induce(&nerve.t, &bundle)?);
        if action.source() != &src || action.target() != &tgt {
            return Err(Error::InvalidRepresentation(
                "the action must map the fiber at the source of each arrow to the fiber at its target".into(),
            ));
        }
        Ok(Self {
            groupoid: groupoid.clone(),
            bundle,
            action,
        })
    }

    /// One block per arrow, validated to `tol`.
    pub fn from_blocks(
        groupoid: &FiniteGroupoid,
        dims: Vec<usize>,
        blocks: Vec<ComplexMatrix<T>>,
        tol: f64,
    ) -> Result<Self> {
        let bundle = Module::new(groupoid.objects(), dims)?;
        let nerve = groupoid.nerve()?;
        let action = ModuleMap::new(&induce(&nerve.s, &bundle)?, &induce(&nerve.t, &bundle)?, blocks)
            .map_err(|e| Error::InvalidRepresentation(e.to_string()))?;
        let rep = Self::from_action(groupoid, bundle, action)?;
        rep.validate(tol)?;
        Ok(rep)
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn bundle(&self) -> &Module {
        &self.bundle
    }

    pub fn action(&self) -> &ModuleMap<T> {
        &self.action
    }

    pub fn alpha(&self, arrow: usize) -> &ComplexMatrix<T> {
        self.action.block(arrow)
    }

    /// The common fiber dimension, if the bundle has constant rank.
    pub fn rank(&self) -> Option<usize> {
        let d = self.bundle.dims();
        d.iter().all(|&x| x == d[0]).then_some(d[0])
    }

    /// `‖m□α − q□α ∘ p□α‖` over the composable pairs.
    pub fn cocycle_residual(&self) -> Result<T> {
        cocycle_residual(&self.groupoid, &self.action)
    }

    /// Largest distance of `α` at an identity arrow from the identity.
    pub fn identity_residual(&self) -> Result<T> {
        (0..self.groupoid.objects().len())
            .map(|x| {
                let b = self.alpha(self.groupoid.identity(x));
                b.distance(&ComplexMatrix::identity(b.rows()))
            })
            .try_fold(T::zero(), |acc, r| Ok(acc.max(r?)))
    }

    pub fn unitarity_residual(&self) -> Result<T> {
        self.action.unitarity_residual()
    }

    /// Fails with [`Error::InvalidRepresentation`] unless the action is
    /// unitary, unital and multiplicative to within `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        if !self.action.blocks().iter().all(ComplexMatrix::is_finite) {
            return Err(Error::NonFinite);
        }
        let checks = [
            ("unitarity", self.unitarity_residual()?),
            ("identity", self.identity_residual()?),
            ("cocycle", self.cocycle_residual()?),
        ];
        for (name, r) in checks {
            if r.as_f64() > tol {
                return Err(Error::InvalidRepresentation(format!(
                    "{name} residual {:.3e} exceeds {tol:.1e}",
                    r.as_f64()
                )));
            }
        }
        Ok(())
    }

    /// Traces `tr α_g` at the arrows with equal source and target; `None`
    /// elsewhere.
    pub fn character(&self) -> Vec<Option<Complex<T>>> {
        let g = &self.groupoid;
        (0..g.arrows().len())
            .map(|a| (g.source(a) == g.target(a)).then(|| self.alpha(a).trace()))
            .collect()
    }

    /// The restriction to a full subgroupoid on `objects`.
    pub fn restrict_to(&self, objects: &[usize]) -> Result<GRepresentation<T>> {
        let (sub, arrows) = self.groupoid.full_subgroupoid(objects)?;
        let dims = sub
            .objects()
            .labels()
            .iter()
            .map(|l| {
                self.bundle
                    .dim(self.groupoid.objects().index_of(l).expect("inherited label"))
            })
            .collect();
        let bundle = Module::new(sub.objects(), dims)?;
        let nerve = sub.nerve()?;
        let action = ModuleMap::new(
            &induce(&nerve.s, &bundle)?,
            &induce(&nerve.t, &bundle)?,
            arrows.iter().map(|&a| self.alpha(a).clone()).collect(),
        )?;
        GRepresentation::from_action(&sub, bundle, action)
    }
}

pub(crate) fn cocycle_residual<T: Real>(g: &FiniteGroupoid, action: &ModuleMap<T>) -> Result<T> {
    let n = g.nerve()?;
    let lhs = induce_map(&n.m, action)?;
    let rhs = induce_map(&n.q, action)?.compose(&induce_map(&n.p, action)?)?;
    lhs.distance(&rhs)
}

/// The regular representation on `res_t L²(G1)`, whose action is the composite
/// of the two base change isomorphisms of the nerve,
/// `ind_s res_t L² -> res_q ind_p L² -> res_q L²(G2) -> res_q ind_m L² -> ind_t res_t L²`.
pub fn regular_rep<T: Real>(g: &FiniteGroupoid) -> Result<GRepresentation<T>> {
    regular_rep_with(&Formalism::standard(), g)
}

/// [`regular_rep`] built from the structure maps of `fx`; only shapes are
/// checked, so a corrupted formalism can produce an invalid action.
pub fn regular_rep_with<T: Real>(fx: &Formalism, g: &FiniteGroupoid) -> Result<GRepresentation<T>> {
    let n = g.nerve()?;
    let l2 = Module::l2(g.arrows());
    let bundle = restrict(&n.t, &l2)?;
    let first = fx.base_change_iso::<T>(&n.source_square()?, &l2)?;
    let second = fx.base_change_iso::<T>(&n.target_square()?, &l2)?;
    let through_g2 = ind_unit_iso::<T>(&n.m)?.dagger().compose(&ind_unit_iso::<T>(&n.p)?)?;
    let middle = restrict_map(&n.q, &through_g2)?;
    let action = ModuleMap::chain(&[&first, &middle, &second.dagger()])?;
    GRepresentation::from_action(g, bundle, action)
}

/// The constant bundle `π0□V` with `dim V = v_dim`, acted on by `alphas` (one
/// per arrow) or trivially.
pub fn pullback_rep<T: Real>(
    g: &FiniteGroupoid,
    v_dim: usize,
    alphas: Option<Vec<ComplexMatrix<T>>>,
    tol: f64,
) -> Result<GRepresentation<T>> {
    let n = g.nerve()?;
    let v = Module::new(&Algebra::scalars(), vec![v_dim])?;
    let bundle = induce(&n.pi0, &v)?;
    let blocks = alphas.unwrap_or_else(|| vec![ComplexMatrix::identity(v_dim); g.arrows().len()]);
    GRepresentation::from_blocks(g, bundle.dims().to_vec(), blocks, tol)
}

/// `(H1 ⊠ H2, ind_mult⁻¹ ∘ (α1 ⊠ α2) ∘ ind_mult)`: fiberwise Kronecker products.
pub fn tensor_reps<T: Real>(r1: &GRepresentation<T>, r2: &GRepresentation<T>) -> Result<GRepresentation<T>> {
    if r1.groupoid != r2.groupoid {
        return Err(Error::InvalidRepresentation(
            "cannot tensor representations of different groupoids".into(),
        ));
    }
    let g = &r1.groupoid;
    let n = g.nerve()?;
    let (h1, h2) = (&r1.bundle, &r2.bundle);
    let action = ModuleMap::chain(&[
        &ind_mult_iso::<T>(&n.s, h1, h2)?,
        &fuse_maps(&r1.action, &r2.action)?,
        &ind_mult_iso::<T>(&n.t, h1, h2)?.dagger(),
    ])?;
    GRepresentation::from_action(g, fuse(h1, h2)?, action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::corpus::{cyclic, pair};

    #[test]
    fn regular_rep_of_z3_permutes_by_rotation() {
        let g = cyclic(3).unwrap();
        let r = regular_rep::<f64>(&g).unwrap();
        r.validate(1e-12).unwrap();
        // α_{r1} sends e_j to e_{1+j}.
        let a = r.alpha(1);
        for j in 0..3 {
            assert_eq!(a[((j + 1) % 3, j)].re, 1.0);
        }
    }

    #[test]
    fn pair_groupoid_regular_fibers() {
        let g = pair(3).unwrap();
        let r = regular_rep::<f64>(&g).unwrap();
        assert_eq!(r.bundle().dims(), &[3, 3, 3]);
        assert_eq!(r.cocycle_residual().unwrap(), 0.0);
    }

    #[test]
    fn sign_representation() {
        let g = cyclic(2).unwrap();
        let minus = ComplexMatrix::from_real_rows(&[&[-1.0]]);
        let sign = pullback_rep::<f64>(&g, 1, Some(vec![ComplexMatrix::identity(1), minus.clone()]), 1e-12).unwrap();
        assert_eq!(sign.character()[1].unwrap().re, -1.0);
        let bad = pullback_rep::<f64>(&g, 1, Some(vec![minus.clone(), minus]), 1e-12);
        assert!(matches!(bad, Err(Error::InvalidRepresentation(_))));
    }
}
