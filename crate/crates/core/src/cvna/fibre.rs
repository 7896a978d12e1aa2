use std::collections::HashMap;
use std::sync::Arc;

use crate::cvna::algebra::{check_algebra, Algebra, Hom};
use crate::cvna::condexp::CondExp;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// The square `A -> A ∗_C B <- B` over `A <- C -> B`.
///
/// Atoms of the product are the matched pairs `(i, j)` with
/// `f.spec(i) == g.spec(j)`. [`fibre_product`] lists them lexicographically;
/// [`FibreSquare::with_pairs`] accepts any listing, which is how transposed
/// and glued squares keep a shared product algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct FibreSquare {
    f: Hom,
    g: Hom,
    product: Algebra,
    pairs: Arc<[(usize, usize)]>,
    gbar: Hom,
    fbar: Hom,
}

/// The standard fibre product square of `f: C -> A` and `g: C -> B`.
pub fn fibre_product(f: &Hom, g: &Hom) -> Result<FibreSquare> {
    check_algebra(f.source(), g.source())
        .map_err(|_| Error::MalformedSquare("the two legs of a fibre product must share their source".into()))?;
    let mut pairs = Vec::new();
    for i in 0..f.target().len() {
        for j in 0..g.target().len() {
            if f.spec(i) == g.spec(j) {
                pairs.push((i, j));
            }
        }
    }
    if pairs.is_empty() {
        return Err(Error::MalformedSquare(
            "the legs have disjoint images, so the fibre product is the zero algebra".into(),
        ));
    }
    let product = pair_algebra(f.target(), g.target(), &pairs);
    FibreSquare::assemble(f, g, product, pairs)
}

fn pair_algebra(a: &Algebra, b: &Algebra, pairs: &[(usize, usize)]) -> Algebra {
    Algebra::new(pairs.iter().map(|&(i, j)| format!("({},{})", a.label(i), b.label(j))))
        .unwrap_or_else(|_| Algebra::standard(pairs.len()))
}

impl FibreSquare {
    /// Square whose product atoms are listed in the given order.
    pub fn with_pairs(f: &Hom, g: &Hom, product: &Algebra, pairs: Vec<(usize, usize)>) -> Result<Self> {
        check_algebra(f.source(), g.source())
            .map_err(|_| Error::MalformedSquare("the two legs of a fibre product must share their source".into()))?;
        if product.len() != pairs.len() {
            return Err(Error::MalformedSquare(format!(
                "{} product atoms for {} pairs",
                product.len(),
                pairs.len()
            )));
        }
        let expected = fibre_product(f, g)?;
        let mut listed = pairs.clone();
        listed.sort_unstable();
        if listed != expected.pairs() {
            return Err(Error::MalformedSquare(
                "product atoms must be exactly the matched pairs, each once".into(),
            ));
        }
        Self::assemble(f, g, product.clone(), pairs)
    }

    fn assemble(f: &Hom, g: &Hom, product: Algebra, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let gbar = Hom::new(f.target(), &product, pairs.iter().map(|p| p.0).collect())?;
        let fbar = Hom::new(g.target(), &product, pairs.iter().map(|p| p.1).collect())?;
        Ok(Self {
            f: f.clone(),
            g: g.clone(),
            product,
            pairs: pairs.into(),
            gbar,
            fbar,
        })
    }

    pub fn c(&self) -> &Algebra {
        self.f.source()
    }

    pub fn a(&self) -> &Algebra {
        self.f.target()
    }

    pub fn b(&self) -> &Algebra {
        self.g.target()
    }

    pub fn f(&self) -> &Hom {
        &self.f
    }

    pub fn g(&self) -> &Hom {
        &self.g
    }

    pub fn product(&self) -> &Algebra {
        &self.product
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// `A -> A ∗_C B`, dual to `(i, j) ↦ i`.
    pub fn gbar(&self) -> &Hom {
        &self.gbar
    }

    /// `B -> A ∗_C B`, dual to `(i, j) ↦ j`.
    pub fn fbar(&self) -> &Hom {
        &self.fbar
    }

    /// The diagonal `C -> A ∗_C B`.
    pub fn base_hom(&self) -> Hom {
        Hom::compose(&self.gbar, &self.f).expect("square legs compose")
    }

    /// Position of the pair `(i, j)` among the product atoms.
    pub fn pair_index(&self, i: usize, j: usize) -> Option<usize> {
        self.pairs.iter().position(|&p| p == (i, j))
    }

    /// Both composites `C -> A ∗_C B` agree.
    pub fn commutes(&self) -> bool {
        Hom::compose(&self.gbar, &self.f).ok() == Hom::compose(&self.fbar, &self.g).ok()
    }

    /// The same product with the roles of the two legs exchanged.
    pub fn transposed(&self) -> FibreSquare {
        FibreSquare {
            f: self.g.clone(),
            g: self.f.clone(),
            product: self.product.clone(),
            pairs: self.pairs.iter().map(|&(i, j)| (j, i)).collect(),
            gbar: self.fbar.clone(),
            fbar: self.gbar.clone(),
        }
    }

    /// Horizontal gluing: `second` sits over `first.gbar()` and extends `f`.
    /// The composite keeps the product algebra of `second`.
    pub fn glue_horizontal(first: &FibreSquare, second: &FibreSquare) -> Result<FibreSquare> {
        if second.g != first.gbar {
            return Err(Error::MalformedSquare(
                "horizontal gluing needs the second square's vertical leg to be the first square's gbar".into(),
            ));
        }
        let f = Hom::compose(&second.f, &first.f)?;
        let pairs = second.pairs.iter().map(|&(a2, p1)| (a2, first.pairs[p1].1)).collect();
        FibreSquare::with_pairs(&f, &first.g, &second.product, pairs)
    }

    /// Vertical gluing: `second` sits over `first.fbar()` and extends `g`.
    /// The composite keeps the product algebra of `second`.
    pub fn glue_vertical(first: &FibreSquare, second: &FibreSquare) -> Result<FibreSquare> {
        if second.f != first.fbar {
            return Err(Error::MalformedSquare(
                "vertical gluing needs the second square's horizontal leg to be the first square's fbar".into(),
            ));
        }
        let g = Hom::compose(&second.g, &first.g)?;
        let pairs = second.pairs.iter().map(|&(p1, b2)| (first.pairs[p1].0, b2)).collect();
        FibreSquare::with_pairs(&first.f, &g, &second.product, pairs)
    }
}

/// The conditional expectation `φ ⊗ ψ` from the product down to `C`.
pub fn tensor_ce<T: Real>(phi: &CondExp<T>, psi: &CondExp<T>, sq: &FibreSquare) -> Result<CondExp<T>> {
    if phi.hom() != sq.f() || psi.hom() != sq.g() {
        return Err(Error::MalformedSquare(
            "conditional expectations must live over the legs of the square".into(),
        ));
    }
    let w = sq
        .pairs()
        .iter()
        .map(|&(i, j)| phi.weights()[i] * psi.weights()[j])
        .collect();
    CondExp::new(&sq.base_hom(), w)
}

/// The isomorphism `A ∗_C C -> A` for a square whose `g` is an identity,
/// returned as a homomorphism from the product to `A`.
pub fn fibre_unitor(sq: &FibreSquare) -> Result<Hom> {
    if !sq.g().is_identity() {
        return Err(Error::NotIdentity("the unitor needs g to be an identity".into()));
    }
    let lookup = pair_lookup(sq);
    let spec = (0..sq.a().len()).map(|i| lookup[&(i, sq.f().spec(i))]).collect();
    Hom::new(sq.product(), sq.a(), spec)
}

/// The isomorphism `C ∗_C B -> B` for a square whose `f` is an identity.
pub fn fibre_unitor_left(sq: &FibreSquare) -> Result<Hom> {
    if !sq.f().is_identity() {
        return Err(Error::NotIdentity("the left unitor needs f to be an identity".into()));
    }
    let lookup = pair_lookup(sq);
    let spec = (0..sq.b().len()).map(|j| lookup[&(sq.g().spec(j), j)]).collect();
    Hom::new(sq.product(), sq.b(), spec)
}

fn pair_lookup(sq: &FibreSquare) -> HashMap<(usize, usize), usize> {
    sq.pairs().iter().enumerate().map(|(p, &ij)| (ij, p)).collect()
}

/// The homomorphism `src.product() -> tgt.product()` induced by maps of the
/// corners `alpha: src.a() -> tgt.a()` and `beta: src.b() -> tgt.b()`, dual to
/// `(i, j) ↦ (alpha(i), beta(j))` on atoms.
pub fn fibre_product_map(src: &FibreSquare, tgt: &FibreSquare, alpha: &Hom, beta: &Hom) -> Result<Hom> {
    check_algebra(alpha.source(), src.a())?;
    check_algebra(alpha.target(), tgt.a())?;
    check_algebra(beta.source(), src.b())?;
    check_algebra(beta.target(), tgt.b())?;
    let lookup = pair_lookup(src);
    let spec =
        tgt.pairs()
            .iter()
            .map(|&(i, j)| {
                lookup.get(&(alpha.spec(i), beta.spec(j))).copied().ok_or_else(|| {
                    Error::MalformedSquare(format!("atom ({i},{j}) has no preimage in the source product"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
    Hom::new(src.product(), tgt.product(), spec)
}

/// The diagram `B1 <- A1 -> B2 <- A2 -> B3`.
#[derive(Debug, Clone, PartialEq)]
pub struct WDiagram {
    pub l1: Hom,
    pub r1: Hom,
    pub l2: Hom,
    pub r2: Hom,
}

impl WDiagram {
    pub fn new(l1: Hom, r1: Hom, l2: Hom, r2: Hom) -> Result<Self> {
        if l1.source() != r1.source() || l2.source() != r2.source() || r1.target() != l2.target() {
            return Err(Error::MalformedSquare(
                "homomorphisms do not form a W-shaped diagram".into(),
            ));
        }
        Ok(Self { l1, r1, l2, r2 })
    }
}

/// The four squares building `(B1 ∗ B2) ∗ B3` and `B1 ∗ (B2 ∗ B3)` together
/// with the isomorphism between them.
#[derive(Debug, Clone)]
pub struct FibreAssociator {
    /// `B1 ∗_{A1} B2`.
    pub left_inner: FibreSquare,
    /// `(B1 ∗_{A1} B2) ∗_{A2} B3`.
    pub left_outer: FibreSquare,
    /// `B2 ∗_{A2} B3`.
    pub right_inner: FibreSquare,
    /// `B1 ∗_{A1} (B2 ∗_{A2} B3)`.
    pub right_outer: FibreSquare,
    /// Homomorphism from the left-bracketed product to the right-bracketed one,
    /// dual to `((i, j), k) ↦ (i, (j, k))`.
    pub iso: Hom,
}

impl FibreAssociator {
    /// Inclusions of `B1`, `B2`, `B3` into the left-bracketed product.
    pub fn left_legs(&self) -> Result<[Hom; 3]> {
        let (li, lo) = (&self.left_inner, &self.left_outer);
        Ok([
            Hom::compose(lo.gbar(), li.gbar())?,
            Hom::compose(lo.gbar(), li.fbar())?,
            lo.fbar().clone(),
        ])
    }

    /// Inclusions of `B1`, `B2`, `B3` into the right-bracketed product.
    pub fn right_legs(&self) -> Result<[Hom; 3]> {
        let (ri, ro) = (&self.right_inner, &self.right_outer);
        Ok([
            ro.gbar().clone(),
            Hom::compose(ro.fbar(), ri.gbar())?,
            Hom::compose(ro.fbar(), ri.fbar())?,
        ])
    }

    /// The isomorphism intertwines the three leg inclusions.
    pub fn commutes_with_legs(&self) -> Result<bool> {
        let l = self.left_legs()?;
        let r = self.right_legs()?;
        for (x, y) in l.iter().zip(&r) {
            if Hom::compose(&self.iso, x)? != *y {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn fibre_associator(w: &WDiagram) -> Result<FibreAssociator> {
    let left_inner = fibre_product(&w.l1, &w.r1)?;
    let left_outer = fibre_product(&Hom::compose(left_inner.fbar(), &w.l2)?, &w.r2)?;
    let right_inner = fibre_product(&w.l2, &w.r2)?;
    let right_outer = fibre_product(&w.l1, &Hom::compose(right_inner.gbar(), &w.r1)?)?;
    let left_lookup = pair_lookup(&left_outer);
    let inner_lookup = pair_lookup(&left_inner);
    let spec = right_outer
        .pairs()
        .iter()
        .map(|&(i, q)| {
            let (j, k) = right_inner.pairs()[q];
            left_lookup[&(inner_lookup[&(i, j)], k)]
        })
        .collect();
    let iso = Hom::new(left_outer.product(), right_outer.product(), spec)?;
    Ok(FibreAssociator {
        left_inner,
        left_outer,
        right_inner,
        right_outer,
        iso,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant(n: usize) -> Hom {
        Hom::from_scalars(&Algebra::standard(n))
    }

    #[test]
    fn product_over_a_point_has_all_pairs() {
        let sq = fibre_product(&constant(2), &constant(3)).unwrap();
        assert_eq!(sq.product().len(), 6);
        assert!(sq.commutes());
    }

    #[test]
    fn identity_leg_gives_unitor() {
        let c = Algebra::standard(2);
        let a = Algebra::standard(3);
        let f = Hom::new(&c, &a, vec![0, 1, 1]).unwrap();
        let sq = fibre_product(&f, &Hom::identity(&c)).unwrap();
        assert_eq!(sq.product().len(), 3);
        let u = fibre_unitor(&sq).unwrap();
        assert!(u.is_iso());
        // u ∘ gbar is the identity of A
        assert!(Hom::compose(&u, sq.gbar()).unwrap().is_identity());
        assert!(fibre_unitor(&fibre_product(&f, &f).unwrap()).is_err());
    }

    #[test]
    fn identity_legs_give_diagonal() {
        let c = Algebra::standard(2);
        let sq = fibre_product(&Hom::identity(&c), &Hom::identity(&c)).unwrap();
        assert_eq!(sq.pairs(), &[(0, 0), (1, 1)]);
    }

    #[test]
    fn pair_count_matches_fiber_products() {
        let c = Algebra::standard(3);
        let f = Hom::new(&c, &Algebra::standard(4), vec![0, 2, 2, 1]).unwrap();
        let g = Hom::new(&c, &Algebra::standard(5), vec![2, 2, 0, 1, 2]).unwrap();
        let sq = fibre_product(&f, &g).unwrap();
        let expected: usize = (0..3).map(|k| f.fiber(k).len() * g.fiber(k).len()).sum();
        assert_eq!(sq.product().len(), expected);
    }

    #[test]
    fn transposed_swaps_legs() {
        let f = Hom::new(&Algebra::standard(2), &Algebra::standard(3), vec![0, 1, 1]).unwrap();
        let g = Hom::new(&Algebra::standard(2), &Algebra::standard(2), vec![1, 1]).unwrap();
        let sq = fibre_product(&f, &g).unwrap();
        let t = sq.transposed();
        assert!(t.commutes());
        assert_eq!(t.f(), sq.g());
        assert_eq!(t.transposed(), sq);
    }

    #[test]
    fn with_pairs_rejects_wrong_sets() {
        let f = constant(2);
        let a = Algebra::standard(2);
        assert!(FibreSquare::with_pairs(&f, &f, &Algebra::standard(4), vec![(0, 0), (0, 1), (1, 0), (1, 1)]).is_ok());
        assert!(FibreSquare::with_pairs(&f, &f, &Algebra::standard(4), vec![(0, 0), (0, 0), (1, 0), (1, 1)]).is_err());
        assert!(FibreSquare::with_pairs(&f, &f, &a, vec![(0, 0), (1, 1)]).is_err());
    }

    #[test]
    fn gluing_keeps_legs() {
        let c = Algebra::standard(2);
        let a1 = Algebra::standard(3);
        let f1 = Hom::new(&c, &a1, vec![0, 1, 1]).unwrap();
        let g = Hom::new(&c, &Algebra::standard(2), vec![1, 1]).unwrap();
        let sq1 = fibre_product(&f1, &g).unwrap();
        let f2 = Hom::new(&a1, &Algebra::standard(4), vec![2, 0, 1, 2]).unwrap();
        let sq2 = fibre_product(&f2, sq1.gbar()).unwrap();
        let h = FibreSquare::glue_horizontal(&sq1, &sq2).unwrap();
        assert_eq!(h.fbar(), &Hom::compose(sq2.fbar(), sq1.fbar()).unwrap());
        assert_eq!(h.gbar(), sq2.gbar());

        let g2 = Hom::new(sq1.b(), &Algebra::standard(3), vec![0, 1, 1]).unwrap();
        let sq3 = fibre_product(sq1.fbar(), &g2).unwrap();
        let v = FibreSquare::glue_vertical(&sq1, &sq3).unwrap();
        assert_eq!(v.gbar(), &Hom::compose(sq3.gbar(), sq1.gbar()).unwrap());
        assert_eq!(v.fbar(), sq3.fbar());
    }

    #[test]
    fn tensor_ce_multiplies_weights() {
        let sq = fibre_product(&constant(1), &constant(1)).unwrap();
        let phi = CondExp::new(sq.f(), vec![3.0]).unwrap();
        let psi = CondExp::new(sq.g(), vec![5.0]).unwrap();
        assert_eq!(tensor_ce(&phi, &psi, &sq).unwrap().weights(), &[15.0]);
    }

    #[test]
    fn associator_on_points_of_size_two() {
        let b = Algebra::standard(2);
        let w = WDiagram::new(
            Hom::from_scalars(&b),
            Hom::from_scalars(&b),
            Hom::from_scalars(&b),
            Hom::from_scalars(&b),
        )
        .unwrap();
        let assoc = fibre_associator(&w).unwrap();
        assert_eq!(assoc.iso.source().len(), 8);
        assert!(assoc.iso.is_iso());
        assert!(assoc.commutes_with_legs().unwrap());
    }
}
