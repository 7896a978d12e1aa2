use num_complex::Complex;

use crate::cvna::{check_algebra, tensor_ce, CondExp, FibreSquare, Hom, State};
use crate::error::{Error, Result};
use crate::hmod::module::{Module, ModuleMap};
use crate::linalg::ComplexMatrix;
use crate::scalar::{creal, Real};

/// `L²A ⊠_C L²B` as a `C`-module: fiber `c` has basis `(i, j)` with
/// `i ∈ f⁻¹(c)`, `j ∈ g⁻¹(c)`, `i` major.
pub fn l2_fusion(sq: &FibreSquare) -> Module {
    let (fa, fb) = (sq.f().fibers(), sq.g().fibers());
    let dims = fa.iter().zip(&fb).map(|(x, y)| x.len() * y.len()).collect();
    Module::new(sq.c(), dims).expect("one fiber per atom of C")
}

/// `L²(A ∗_C B)` as a `C`-module: fiber `c` lists the product atoms over `c`
/// in the square's pair order.
pub fn l2_product(sq: &FibreSquare) -> Module {
    let dims = sq.base_hom().fibers().iter().map(Vec::len).collect();
    Module::new(sq.c(), dims).expect("one fiber per atom of C")
}

/// A vector of `L²A ⊠_C L²B`, coordinates in the layout of [`l2_fusion`].
#[derive(Debug, Clone, PartialEq)]
pub struct FusionVector<T: Real> {
    space: Module,
    coords: Vec<Complex<T>>,
}

impl<T: Real> FusionVector<T> {
    pub fn new(space: &Module, coords: Vec<Complex<T>>) -> Result<Self> {
        if coords.len() != space.total_dim() {
            return Err(Error::Dimension(format!(
                "{} coordinates for a space of dimension {}",
                coords.len(),
                space.total_dim()
            )));
        }
        Ok(Self {
            space: space.clone(),
            coords,
        })
    }

    pub fn space(&self) -> &Module {
        &self.space
    }

    pub fn coords(&self) -> &[Complex<T>] {
        &self.coords
    }

    pub fn norm_sqr(&self) -> T {
        self.coords.iter().map(|z| z.norm_sqr()).sum()
    }
}

fn check_legs<T: Real>(phi: &CondExp<T>, mu: &State<T>, psi: &CondExp<T>, sq: &FibreSquare) -> Result<()> {
    if phi.hom() != sq.f() || psi.hom() != sq.g() {
        return Err(Error::MalformedSquare(
            "conditional expectations must live over the legs of the square".into(),
        ));
    }
    check_algebra(sq.c(), mu.algebra())
}

/// `√φ ⊠_μ √ψ`: coordinate `(i, j)` over `c` is `√(φ_i μ_c ψ_j)`.
pub fn span_vector<T: Real>(
    phi: &CondExp<T>,
    mu: &State<T>,
    psi: &CondExp<T>,
    sq: &FibreSquare,
) -> Result<FusionVector<T>> {
    check_legs(phi, mu, psi, sq)?;
    let (fa, fb) = (sq.f().fibers(), sq.g().fibers());
    let mut coords = Vec::new();
    for c in 0..sq.c().len() {
        for &i in &fa[c] {
            for &j in &fb[c] {
                coords.push(creal((phi.weights()[i] * mu.weights()[c] * psi.weights()[j]).sqrt()));
            }
        }
    }
    FusionVector::new(&l2_fusion(sq), coords)
}

/// `√(μ(φ ⊗ ψ))` in `L²(A ∗_C B)`, laid out as [`l2_product`].
pub fn span_image<T: Real>(
    phi: &CondExp<T>,
    mu: &State<T>,
    psi: &CondExp<T>,
    sq: &FibreSquare,
) -> Result<Vec<Complex<T>>> {
    check_legs(phi, mu, psi, sq)?;
    let state = tensor_ce(phi, psi, sq)?.pull_state(mu)?;
    Ok(sq
        .base_hom()
        .fibers()
        .iter()
        .flatten()
        .map(|&p| creal(state.weights()[p].sqrt()))
        .collect())
}

/// The unitary `L²A ⊠_C L²B -> L²(A ∗_C B)` of `C`-modules determined by
/// `√φ ⊠_μ √ψ ↦ √(μ(φ ⊗ ψ))`.
///
/// Each column is the image of a basis vector, which is itself the spanning
/// vector of the indicator weights at `i` and `j` with `μ = 1`.
pub fn lambda_iso<T: Real>(sq: &FibreSquare) -> Result<ModuleMap<T>> {
    let source = l2_fusion(sq);
    let target = l2_product(sq);
    let mu = State::new(sq.c(), vec![T::one(); sq.c().len()])?;
    let indicator = |hom: &Hom, k: usize| {
        let w = (0..hom.target().len())
            .map(|x| if x == k { T::one() } else { T::zero() })
            .collect();
        CondExp::new(hom, w)
    };
    let mut full = ComplexMatrix::zeros(target.total_dim(), source.total_dim());
    let (fa, fb) = (sq.f().fibers(), sq.g().fibers());
    let mut col = 0;
    for c in 0..sq.c().len() {
        for &i in &fa[c] {
            for &j in &fb[c] {
                let image = span_image(&indicator(sq.f(), i)?, &mu, &indicator(sq.g(), j)?, sq)?;
                for (row, z) in image.into_iter().enumerate() {
                    full[(row, col)] = z;
                }
                col += 1;
            }
        }
    }
    ModuleMap::from_matrix(&source, &target, &full, 0.0)
}

/// `L²(u)` for an algebra isomorphism `u: P -> A`, as a map of `C`-modules
/// `L²P -> L²A` along `h: C -> P` and `u ∘ h`.
pub fn l2_of_iso<T: Real>(u: &Hom, h: &Hom) -> Result<ModuleMap<T>> {
    let inv = u.inverse()?;
    let uh = Hom::compose(u, h)?;
    let source = Module::new(h.source(), h.fibers().iter().map(Vec::len).collect())?;
    let target = Module::new(h.source(), uh.fibers().iter().map(Vec::len).collect())?;
    let (src_fibers, tgt_fibers) = (h.fibers(), uh.fibers());
    ModuleMap::from_index_map(&source, &target, |c, k| {
        let p = src_fibers[c][k];
        let i = inv.spec(p);
        tgt_fibers[c]
            .iter()
            .position(|&x| x == i)
            .expect("u maps fibers to fibers")
    })
}

/// Basis labels of [`l2_fusion`]: `(c, i, j)` in order.
pub fn l2_fusion_basis(sq: &FibreSquare) -> Vec<(usize, usize, usize)> {
    let (fa, fb) = (sq.f().fibers(), sq.g().fibers());
    let mut out = Vec::new();
    for c in 0..sq.c().len() {
        for &i in &fa[c] {
            for &j in &fb[c] {
                out.push((c, i, j));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cvna::{fibre_product, Algebra};

    fn constant(n: usize) -> Hom {
        Hom::from_scalars(&Algebra::standard(n))
    }

    #[test]
    fn trivial_square_gives_one_by_one_identity() {
        let sq = fibre_product(&constant(1), &constant(1)).unwrap();
        let l = lambda_iso::<f64>(&sq).unwrap();
        assert_eq!(l.to_matrix(), ComplexMatrix::identity(1));
    }

    #[test]
    fn all_pairs_over_a_point() {
        let sq = fibre_product(&constant(2), &constant(3)).unwrap();
        let l = lambda_iso::<f64>(&sq).unwrap();
        assert_eq!(l.to_matrix(), ComplexMatrix::identity(6));
    }

    #[test]
    fn span_vector_coordinates() {
        let sq = fibre_product(&constant(1), &constant(1)).unwrap();
        let phi = CondExp::new(sq.f(), vec![3.0]).unwrap();
        let psi = CondExp::new(sq.g(), vec![5.0]).unwrap();
        let mu = State::new(sq.c(), vec![2.0]).unwrap();
        let v = span_vector(&phi, &mu, &psi, &sq).unwrap();
        assert!((v.coords()[0].re - 30f64.sqrt()).abs() < 1e-15);
        assert!((v.norm_sqr() - 30.0).abs() < 1e-12);
    }

    #[test]
    fn lex_order_is_identity_and_shuffles_permute() {
        let c = Algebra::standard(2);
        let a = Algebra::standard(3);
        let b = Algebra::standard(2);
        let f = Hom::new(&c, &a, vec![1, 0, 1]).unwrap();
        let g = Hom::new(&c, &b, vec![1, 1]).unwrap();
        let sq = fibre_product(&f, &g).unwrap();
        let l = lambda_iso::<f64>(&sq).unwrap();
        assert_eq!(l, ModuleMap::identity(&l2_fusion(&sq)));
        let mut pairs = sq.pairs().to_vec();
        pairs.reverse();
        let shuffled = FibreSquare::with_pairs(&f, &g, sq.product(), pairs).unwrap();
        let l = lambda_iso::<f64>(&shuffled).unwrap();
        assert!(l.unitarity_residual().unwrap() < 1e-15);
        assert_ne!(l.block(1), &ComplexMatrix::identity(4));
        assert_eq!(l.source(), &l2_fusion(&shuffled));
        assert_eq!(l.target(), &l2_product(&shuffled));
    }
}
