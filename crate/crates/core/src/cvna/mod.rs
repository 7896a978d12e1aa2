//! Finite commutative von Neumann algebras, conditional expectations and
//! fibre products.

mod algebra;
mod condexp;
mod fibre;

pub(crate) use algebra::check_algebra;
pub use algebra::{Algebra, AlgebraElement, Hom, State};
pub use condexp::{
    apply_ce, ce_from_positive_map, ce_identity_check, mu_independence_check, sqrt_ce, sqrt_ce_via_state, CondExp,
};
pub use fibre::{
    fibre_associator, fibre_product, fibre_product_map, fibre_unitor, fibre_unitor_left, tensor_ce, FibreAssociator,
    FibreSquare, WDiagram,
};
