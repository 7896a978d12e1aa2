use std::sync::Arc;

use crate::error::Result;
use crate::hmod::{Bimodule, BimoduleMap, Module, ModuleMap};
use crate::scalar::Real;

type ComponentFn<T> = dyn Fn(&Module) -> Result<ModuleMap<T>> + Send + Sync;
type FunctorFn<T> = dyn Fn(&ModuleMap<T>) -> Result<ModuleMap<T>> + Send + Sync;

/// A natural isomorphism `F => G` between functors on modules over one
/// algebra, given by its components together with both functors on maps.
#[derive(Clone)]
pub struct NaturalIso<T: Real> {
    description: String,
    component: Arc<ComponentFn<T>>,
    source_functor: Arc<FunctorFn<T>>,
    target_functor: Arc<FunctorFn<T>>,
}

impl<T: Real> std::fmt::Debug for NaturalIso<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "NaturalIso({})", self.description)
    }
}

impl<T: Real> NaturalIso<T> {
    pub fn new(
        description: impl Into<String>,
        component: impl Fn(&Module) -> Result<ModuleMap<T>> + Send + Sync + 'static,
        source_functor: impl Fn(&ModuleMap<T>) -> Result<ModuleMap<T>> + Send + Sync + 'static,
        target_functor: impl Fn(&ModuleMap<T>) -> Result<ModuleMap<T>> + Send + Sync + 'static,
    ) -> Self {
        Self {
            description: description.into(),
            component: Arc::new(component),
            source_functor: Arc::new(source_functor),
            target_functor: Arc::new(target_functor),
        }
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn component_at(&self, m: &Module) -> Result<ModuleMap<T>> {
        (self.component)(m)
    }

    /// `‖G(h) ∘ η_M - η_N ∘ F(h)‖` for `h: M -> N`.
    pub fn naturality_residual(&self, h: &ModuleMap<T>) -> Result<T> {
        let lhs = (self.target_functor)(h)?.compose(&self.component_at(h.source())?)?;
        let rhs = self.component_at(h.target())?.compose(&(self.source_functor)(h)?)?;
        lhs.distance(&rhs)
    }

    pub fn unitarity_residual(&self, m: &Module) -> Result<T> {
        self.component_at(m)?.unitarity_residual()
    }
}

/// The component at `M` of the natural transformation `X ⊠ - => Y ⊠ -`
/// determined by its value `eta0: X -> Y` at the generator.
///
/// Fails with [`crate::Error::NotEquivariant`] when `eta0` does not commute
/// with the right action.
pub fn extend_by_generator<T: Real>(
    x: &Bimodule,
    y: &Bimodule,
    eta0: &ModuleMap<T>,
    m: &Module,
) -> Result<ModuleMap<T>> {
    BimoduleMap::from_module_map(x, y, eta0, EQUIVARIANCE_SLACK)?.extend(m)
}

/// Off-pattern weight tolerated when a generator component is tested for
/// equivariance. Structure maps here are exact permutations, so this only
/// absorbs rounding.
pub const EQUIVARIANCE_SLACK: f64 = 1e-9;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cvna::Algebra;

    #[test]
    fn identity_generator_extends_to_identity() {
        let a = Algebra::standard(2);
        let x = Bimodule::new(&a, &a, vec![vec![0], vec![1]]).unwrap();
        let m = Module::new(&a, vec![3, 2]).unwrap();
        let id = ModuleMap::<f64>::identity(&x.left_module());
        assert_eq!(extend_by_generator(&x, &x, &id, &m).unwrap(), ModuleMap::identity(&m));
    }
}
