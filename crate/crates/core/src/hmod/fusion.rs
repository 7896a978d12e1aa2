use num_complex::Complex;

use crate::cvna::check_algebra;
use crate::error::{Error, Result};
use crate::hmod::module::{Module, ModuleMap};
use crate::linalg::ComplexMatrix;
use crate::scalar::Real;

/// `M ⊠ N`: fiber `i` is `M_i ⊗ N_i`, basis vector `(k, l)` at index `k·n_i + l`.
pub fn fuse(m: &Module, n: &Module) -> Result<Module> {
    check_algebra(m.algebra(), n.algebra())?;
    Module::new(m.algebra(), m.dims().iter().zip(n.dims()).map(|(a, b)| a * b).collect())
}

pub fn fuse_maps<T: Real>(h: &ModuleMap<T>, k: &ModuleMap<T>) -> Result<ModuleMap<T>> {
    let source = fuse(h.source(), k.source())?;
    let target = fuse(h.target(), k.target())?;
    let blocks = h.blocks().iter().zip(k.blocks()).map(|(a, b)| a.kron(b)).collect();
    ModuleMap::new(&source, &target, blocks)
}

/// `M ⊠ L²A -> M`.
pub fn unitor_r<T: Real>(m: &Module) -> Result<ModuleMap<T>> {
    let source = fuse(m, &Module::l2(m.algebra()))?;
    ModuleMap::from_index_map(&source, m, |_, k| k)
}

/// `L²A ⊠ M -> M`.
pub fn unitor_l<T: Real>(m: &Module) -> Result<ModuleMap<T>> {
    let source = fuse(&Module::l2(m.algebra()), m)?;
    ModuleMap::from_index_map(&source, m, |_, k| k)
}

/// `(M ⊠ N) ⊠ P -> M ⊠ (N ⊠ P)`, sending `((k, l), q)` to `(k, (l, q))`.
pub fn associator<T: Real>(m: &Module, n: &Module, p: &Module) -> Result<ModuleMap<T>> {
    let source = fuse(&fuse(m, n)?, p)?;
    let target = fuse(m, &fuse(n, p)?)?;
    ModuleMap::from_index_map(&source, &target, |i, idx| {
        let (dn, dp) = (n.dim(i), p.dim(i));
        let (kl, q) = (idx / dp, idx % dp);
        let (k, l) = (kl / dn, kl % dn);
        k * (dn * dp) + l * dp + q
    })
}

/// `M ⊠ N -> N ⊠ M`, swapping the tensor factors in every fiber.
pub fn symmetry<T: Real>(m: &Module, n: &Module) -> Result<ModuleMap<T>> {
    let source = fuse(m, n)?;
    let target = fuse(n, m)?;
    ModuleMap::from_index_map(&source, &target, |i, idx| {
        let (k, l) = (idx / n.dim(i), idx % n.dim(i));
        l * m.dim(i) + k
    })
}

/// Inner product of the elementary tensors `m₁ ⊗ n₁` and `m₂ ⊗ n₂` in one
/// fiber, computed as `⟨(a₂* a₁) n₁, n₂⟩` where `aₖ: L²A -> M` picks out `mₖ`.
/// Linear in the first argument.
pub fn fusion_inner_product<T: Real>(
    m1: &[Complex<T>],
    n1: &[Complex<T>],
    m2: &[Complex<T>],
    n2: &[Complex<T>],
) -> Result<Complex<T>> {
    let a1 = ComplexMatrix::column(m1);
    let a2 = ComplexMatrix::column(m2);
    let scalar = a2.adjoint().try_mul(&a1)?[(0, 0)];
    if n1.len() != n2.len() {
        return Err(Error::Dimension(format!(
            "vectors of length {} and {}",
            n1.len(),
            n2.len()
        )));
    }
    Ok(n1.iter().zip(n2).map(|(x, y)| scalar * x * y.conj()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cvna::Algebra;
    use crate::linalg::random_unitary;

    fn module(dims: &[usize]) -> Module {
        Module::new(&Algebra::standard(dims.len()), dims.to_vec()).unwrap()
    }

    #[test]
    fn fiberwise_products() {
        let f = fuse(&module(&[2, 3]), &module(&[4, 5])).unwrap();
        assert_eq!(f.dims(), &[8, 15]);
        let m = module(&[2, 0, 1]);
        assert_eq!(fuse(&m, &Module::l2(m.algebra())).unwrap(), m);
        assert!(fuse(&module(&[1]), &module(&[1, 1])).is_err());
    }

    #[test]
    fn associator_is_identity_under_row_major_order() {
        let m = module(&[2]);
        let n = module(&[3]);
        let p = module(&[4]);
        let a = associator::<f64>(&m, &n, &p).unwrap();
        assert_eq!(a.block(0), &ComplexMatrix::identity(24));
    }

    #[test]
    fn symmetry_is_an_involution() {
        let m = module(&[2, 3]);
        let n = module(&[3, 1]);
        let s = symmetry::<f64>(&m, &n).unwrap();
        let back = symmetry::<f64>(&n, &m).unwrap();
        assert_eq!(back.compose(&s).unwrap(), ModuleMap::identity(s.source()));
        assert_ne!(s.block(0), &ComplexMatrix::identity(6));
    }

    #[test]
    fn mixed_product_and_dagger() {
        let m = module(&[2, 2]);
        let u = |s| ModuleMap::new(&m, &m, vec![random_unitary::<f64>(2, s), random_unitary(2, s + 1)]).unwrap();
        let (h, h2, k, k2) = (u(1), u(3), u(5), u(7));
        let lhs = fuse_maps(&h.compose(&h2).unwrap(), &k.compose(&k2).unwrap()).unwrap();
        let rhs = fuse_maps(&h, &k)
            .unwrap()
            .compose(&fuse_maps(&h2, &k2).unwrap())
            .unwrap();
        assert!(lhs.distance(&rhs).unwrap() < 1e-12);
        let d = fuse_maps(&h, &k).unwrap().dagger();
        assert!(d.distance(&fuse_maps(&h.dagger(), &k.dagger()).unwrap()).unwrap() < 1e-14);
    }

    #[test]
    fn inner_product_matches_kronecker_model() {
        use crate::linalg::{complex_gaussian, seeded_rng};
        let mut rng = seeded_rng(4, 0);
        let mut v = |n: usize| (0..n).map(|_| complex_gaussian::<f64, _>(&mut rng)).collect::<Vec<_>>();
        let (m1, n1, m2, n2) = (v(3), v(2), v(3), v(2));
        let x = ComplexMatrix::column(&m1).kron(&ComplexMatrix::column(&n1));
        let y = ComplexMatrix::column(&m2).kron(&ComplexMatrix::column(&n2));
        let direct = y.adjoint().try_mul(&x).unwrap()[(0, 0)];
        let ip = fusion_inner_product(&m1, &n1, &m2, &n2).unwrap();
        assert!((ip - direct).norm() < 1e-12);
    }

    #[test]
    fn symmetry_swaps_kronecker_factors() {
        let m = module(&[2]);
        let n = module(&[3]);
        let h = ModuleMap::new(&m, &m, vec![random_unitary::<f64>(2, 9)]).unwrap();
        let k = ModuleMap::new(&n, &n, vec![random_unitary::<f64>(3, 10)]).unwrap();
        let s = symmetry::<f64>(&m, &n).unwrap();
        let lhs = s.compose(&fuse_maps(&h, &k).unwrap()).unwrap();
        let rhs = fuse_maps(&k, &h).unwrap().compose(&s).unwrap();
        assert!(lhs.distance(&rhs).unwrap() < 1e-13);
    }
}
