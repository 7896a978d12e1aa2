use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::cvna::{FibreSquare, Hom};
use crate::error::{Error, Result};
use crate::functors::induce::{ind_unit_iso, induce, induce_map};
use crate::functors::natural::{extend_by_generator, NaturalIso, EQUIVARIANCE_SLACK};
use crate::functors::restrict::{restrict, restrict_map};
use crate::hmod::{self, fuse, fuse_maps, unitor_r, Bimodule, Module, ModuleMap};
use crate::scalar::Real;

/// A deliberate corruption of one structure map, used to show that the checks
/// depending on it can fail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mutation {
    /// Swap two basis vectors in the first fiber of the fusion associator
    /// that has at least two.
    CorruptAssociator,
    /// Swap two columns of the `L²` fibre product isomorphism.
    MisorderLambda,
    /// Conjugation sends a map to its adjoint instead of its transpose.
    DropConjugation,
    /// Multiply one arrow of the groupoid action by a phase.
    PhaseCocycle,
    /// Multiply the `L²` fibre product isomorphism at the first product atom
    /// by `e^{iθ}`.
    LambdaPhase(f64),
}

impl Mutation {
    pub const NAMES: [&'static str; 5] = [
        "corrupt-associator",
        "misorder-lambda",
        "drop-conjugation",
        "phase-cocycle",
        "lambda-phase",
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Mutation::CorruptAssociator => Self::NAMES[0],
            Mutation::MisorderLambda => Self::NAMES[1],
            Mutation::DropConjugation => Self::NAMES[2],
            Mutation::PhaseCocycle => Self::NAMES[3],
            Mutation::LambdaPhase(_) => Self::NAMES[4],
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mutation::LambdaPhase(theta) => write!(f, "{}={theta}", self.name()),
            _ => f.write_str(self.name()),
        }
    }
}

impl FromStr for Mutation {
    type Err = String;

    /// Accepts the names in [`Mutation::NAMES`]; `lambda-phase` takes an
    /// optional angle as `lambda-phase=0.3` (default 0.5).
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (name, arg) = match s.split_once('=') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let m = match name {
            "corrupt-associator" => Mutation::CorruptAssociator,
            "misorder-lambda" => Mutation::MisorderLambda,
            "drop-conjugation" => Mutation::DropConjugation,
            "phase-cocycle" => Mutation::PhaseCocycle,
            "lambda-phase" => {
                let theta = match arg {
                    Some(a) => a.parse().map_err(|_| format!("bad angle {a:?}"))?,
                    None => 0.5,
                };
                return Ok(Mutation::LambdaPhase(theta));
            }
            _ => {
                return Err(format!(
                    "unknown mutation {s:?}; expected one of {}",
                    Self::NAMES.join(", ")
                ))
            }
        };
        if arg.is_some() {
            return Err(format!("mutation {name} takes no argument"));
        }
        Ok(m)
    }
}

/// The structure maps of the formalism, optionally with one of them corrupted.
///
/// Everything that depends on the associator, the `L²` fibre product
/// isomorphism or conjugation goes through these methods, so a mutation
/// propagates to every composite built from them.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Formalism {
    mutation: Option<Mutation>,
}

impl Formalism {
    pub fn standard() -> Self {
        Self { mutation: None }
    }

    pub fn mutated(mutation: Mutation) -> Self {
        Self {
            mutation: Some(mutation),
        }
    }

    pub fn mutation(&self) -> Option<Mutation> {
        self.mutation
    }

    pub fn associator<T: Real>(&self, m: &Module, n: &Module, p: &Module) -> Result<ModuleMap<T>> {
        let a = hmod::associator(m, n, p)?;
        if self.mutation != Some(Mutation::CorruptAssociator) {
            return Ok(a);
        }
        let mut blocks = a.blocks().to_vec();
        if let Some(b) = blocks.iter_mut().find(|b| b.cols() >= 2) {
            b.swap_columns(0, 1);
        }
        ModuleMap::new(a.source(), a.target(), blocks)
    }

    /// The `L²` fibre product isomorphism of `sq`, see [`hmod::lambda_iso`].
    pub fn lambda<T: Real>(&self, sq: &FibreSquare) -> Result<ModuleMap<T>> {
        let l = hmod::lambda_iso(sq)?;
        let mut blocks = l.blocks().to_vec();
        match self.mutation {
            Some(Mutation::MisorderLambda) => {
                if let Some(b) = blocks.iter_mut().find(|b| b.cols() >= 2) {
                    b.swap_columns(0, 1);
                }
            }
            Some(Mutation::LambdaPhase(theta)) => {
                // Product atom 0 is the first basis vector of its fiber.
                let c = sq.base_hom().spec(0);
                let phase = Complex::from_polar(T::one(), T::lit(theta));
                let b = &mut blocks[c];
                for col in 0..b.cols() {
                    b[(0, col)] = b[(0, col)] * phase;
                }
            }
            _ => return Ok(l),
        }
        ModuleMap::new(l.source(), l.target(), blocks)
    }

    /// A groupoid action `ind_s H -> ind_t H` as consumed by constructions
    /// built from it. `PhaseCocycle` multiplies the block of `arrow` by
    /// `e^{i/2}`.
    pub fn action<T: Real>(&self, alpha: &ModuleMap<T>, arrow: usize) -> ModuleMap<T> {
        if self.mutation != Some(Mutation::PhaseCocycle) || arrow >= alpha.blocks().len() {
            return alpha.clone();
        }
        let mut blocks = alpha.blocks().to_vec();
        blocks[arrow] = blocks[arrow].scale(Complex::from_polar(T::one(), T::lit(0.5)));
        ModuleMap::new(alpha.source(), alpha.target(), blocks).expect("same shapes")
    }

    /// Conjugation on maps: the blockwise transpose.
    pub fn dual_map<T: Real>(&self, h: &ModuleMap<T>) -> ModuleMap<T> {
        if self.mutation == Some(Mutation::DropConjugation) {
            return h.dagger();
        }
        hmod::dual_map(h)
    }

    /// The projection isomorphism at the generator in its second argument,
    /// `res_f M ⊠ L²B -> res_f M -> res_f(M ⊠ L²A) -> res_f(M ⊠ ind_f L²B)`.
    pub fn projection_generator<T: Real>(&self, f: &Hom, m: &Module) -> Result<ModuleMap<T>> {
        let res_m = restrict(f, m)?;
        let l2a = Module::l2(f.target());
        let iu_inv = ind_unit_iso::<T>(f)?.dagger();
        let steps = [
            unitor_r::<T>(&res_m)?,
            restrict_map(f, &unitor_r::<T>(m)?.dagger())?,
            restrict_map(f, &fuse_maps(&ModuleMap::identity(m), &iu_inv)?)?,
        ];
        debug_assert_eq!(steps[1].target().dims(), restrict(f, &fuse(m, &l2a)?)?.dims());
        ModuleMap::chain(&[&steps[0], &steps[1], &steps[2]])
    }

    /// `res_f M ⊠_B N -> res_f(M ⊠_A ind_f N)` for `M` over `A`, `N` over `B`.
    pub fn projection_iso<T: Real>(&self, f: &Hom, m: &Module, n: &Module) -> Result<ModuleMap<T>> {
        let generator = self.projection_generator::<T>(f, m)?;
        let x = diagonal_bimodule(&restrict(f, m)?);
        let y = diagonal_bimodule(generator.target());
        let ext = extend_by_generator(&x, &y, &generator, n)?;
        ModuleMap::new(
            &fuse(&restrict(f, m)?, n)?,
            &restrict(f, &fuse(m, &induce(f, n)?)?)?,
            ext.blocks().to_vec(),
        )
    }

    /// Base change at the generator,
    /// `ind_f res_g L²B -> res_ḡ L²(A ∗_C B) -> res_ḡ ind_f̄ L²B`, where the first
    /// step regrades the `L²` fibre product isomorphism from `C` to `A`.
    pub fn base_change_generator<T: Real>(&self, sq: &FibreSquare) -> Result<ModuleMap<T>> {
        let lam = self.lambda::<T>(sq)?;
        let (f, g, gbar, fbar) = (sq.f(), sq.g(), sq.gbar(), sq.fbar());
        let (fa, fb) = (f.fibers(), g.fibers());
        let base_fibers = sq.base_hom().fibers();
        let gbar_fibers = gbar.fibers();
        let rank = |list: &[usize], x: usize| list.iter().position(|&y| y == x).expect("member of fiber");

        let mut defect = T::zero();
        for c in 0..sq.c().len() {
            let b = lam.block(c);
            for (ri, &i) in fa[c].iter().enumerate() {
                for jr in 0..fb[c].len() {
                    for (row, &p) in base_fibers[c].iter().enumerate() {
                        if sq.pairs()[p].0 != i {
                            defect = defect + b[(row, ri * fb[c].len() + jr)].norm_sqr();
                        }
                    }
                }
            }
        }
        let defect = defect.sqrt().as_f64();
        if defect > EQUIVARIANCE_SLACK {
            return Err(Error::NotEquivariant { defect });
        }

        let source = induce(f, &restrict(g, &Module::l2(sq.b()))?)?;
        let l2p = Module::l2(sq.product());
        let mid = restrict(gbar, &l2p)?;
        let blocks = (0..sq.a().len())
            .map(|i| {
                let c = f.spec(i);
                let ri = rank(&fa[c], i);
                let nb = fb[c].len();
                let b = lam.block(c);
                crate::linalg::ComplexMatrix::from_fn(mid.dim(i), source.dim(i), |r, jr| {
                    b[(rank(&base_fibers[c], gbar_fibers[i][r]), ri * nb + jr)]
                })
            })
            .collect();
        let regraded = ModuleMap::new(&source, &mid, blocks)?;
        let back = restrict_map(gbar, &ind_unit_iso::<T>(fbar)?.dagger())?;
        back.compose(&regraded)
    }

    /// `ind_f res_g M -> res_ḡ ind_f̄ M` for `M` over `B`.
    pub fn base_change_iso<T: Real>(&self, sq: &FibreSquare, m: &Module) -> Result<ModuleMap<T>> {
        let generator = self.base_change_generator::<T>(sq)?;
        let (x, y) = base_change_bimodules(sq);
        let ext = extend_by_generator(&x, &y, &generator, m)?;
        ModuleMap::new(
            &induce(sq.f(), &restrict(sq.g(), m)?)?,
            &restrict(sq.gbar(), &induce(sq.fbar(), m)?)?,
            ext.blocks().to_vec(),
        )
    }

    /// Projection as a natural isomorphism in `N`, for fixed `f` and `M`.
    pub fn projection_in_second<T: Real>(&self, f: &Hom, m: &Module) -> NaturalIso<T> {
        let (fx, f1, m1) = (*self, f.clone(), m.clone());
        let (f2, m2) = (f.clone(), m.clone());
        let (f3, m3) = (f.clone(), m.clone());
        NaturalIso::new(
            "projection in the second argument",
            move |n| fx.projection_iso(&f1, &m1, n),
            move |h| fuse_maps(&ModuleMap::identity(&restrict(&f2, &m2)?), h),
            move |h| restrict_map(&f3, &fuse_maps(&ModuleMap::identity(&m3), &induce_map(&f3, h)?)?),
        )
    }

    /// Projection as a natural isomorphism in `M`, for fixed `f` and `N`.
    pub fn projection_in_first<T: Real>(&self, f: &Hom, n: &Module) -> NaturalIso<T> {
        let (fx, f1, n1) = (*self, f.clone(), n.clone());
        let (f2, n2) = (f.clone(), n.clone());
        let (f3, n3) = (f.clone(), n.clone());
        NaturalIso::new(
            "projection in the first argument",
            move |m| fx.projection_iso(&f1, m, &n1),
            move |h| fuse_maps(&restrict_map(&f2, h)?, &ModuleMap::identity(&n2)),
            move |h| restrict_map(&f3, &fuse_maps(h, &ModuleMap::identity(&induce(&f3, &n3)?))?),
        )
    }

    /// Base change as a natural isomorphism.
    pub fn base_change_natural<T: Real>(&self, sq: &FibreSquare) -> NaturalIso<T> {
        let (fx, s1, s2, s3) = (*self, sq.clone(), sq.clone(), sq.clone());
        NaturalIso::new(
            "base change",
            move |m| fx.base_change_iso(&s1, m),
            move |h| induce_map(s2.f(), &restrict_map(s2.g(), h)?),
            move |h| restrict_map(s3.gbar(), &induce_map(s3.fbar(), h)?),
        )
    }
}

/// A module over `B` viewed as a `B`-`B` bimodule with every vector in
/// fiber `j` carrying right label `j`.
fn diagonal_bimodule(m: &Module) -> Bimodule {
    let labels = (0..m.algebra().len()).map(|j| vec![j; m.dim(j)]).collect();
    Bimodule::new(m.algebra(), m.algebra(), labels).expect("labels are atoms")
}

/// `ind_f res_g L²B` and `res_ḡ ind_f̄ L²B` as `A`-`B` bimodules.
pub fn base_change_bimodules(sq: &FibreSquare) -> (Bimodule, Bimodule) {
    let fb = sq.g().fibers();
    let x_labels = sq.f().spec_map().iter().map(|&c| fb[c].clone()).collect();
    let y_labels = sq
        .gbar()
        .fibers()
        .iter()
        .map(|ps| ps.iter().map(|&p| sq.pairs()[p].1).collect())
        .collect();
    (
        Bimodule::new(sq.a(), sq.b(), x_labels).expect("labels are atoms of B"),
        Bimodule::new(sq.a(), sq.b(), y_labels).expect("labels are atoms of B"),
    )
}

/// `res_f M ⊠ L²B` and `res_f(M ⊠ ind_f L²B)` as `B`-`B` bimodules.
pub fn projection_bimodules(f: &Hom, m: &Module) -> Result<(Bimodule, Bimodule)> {
    let r = restrict(f, m)?;
    Ok((diagonal_bimodule(&r), diagonal_bimodule(&r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cvna::{fibre_product, Algebra};

    #[test]
    fn mutation_names_roundtrip() {
        for name in Mutation::NAMES {
            let m: Mutation = name.parse().unwrap();
            assert_eq!(m.name(), name);
        }
        assert_eq!(
            "lambda-phase=0.25".parse::<Mutation>().unwrap(),
            Mutation::LambdaPhase(0.25)
        );
        assert!("nonsense".parse::<Mutation>().is_err());
    }

    #[test]
    fn projection_dimensions_and_permutation() {
        let b = Algebra::standard(1);
        let a = Algebra::standard(2);
        let f = Hom::new(&b, &a, vec![0, 0]).unwrap();
        let m = Module::new(&a, vec![2, 3]).unwrap();
        let n = Module::new(&b, vec![4]).unwrap();
        let p = Formalism::standard().projection_iso::<f64>(&f, &m, &n).unwrap();
        assert_eq!(p.source().dims(), &[20]);
        assert_eq!(p.target().dims(), &[20]);
        assert!(p.unitarity_residual().unwrap() < 1e-15);
    }

    #[test]
    fn base_change_unitary_on_shuffled_square() {
        let c = Algebra::standard(2);
        let a = Algebra::standard(3);
        let b = Algebra::standard(3);
        let f = Hom::new(&c, &a, vec![1, 0, 1]).unwrap();
        let g = Hom::new(&c, &b, vec![1, 1, 0]).unwrap();
        let sq = fibre_product(&f, &g).unwrap();
        let mut pairs = sq.pairs().to_vec();
        pairs.reverse();
        let sq = FibreSquare::with_pairs(&f, &g, sq.product(), pairs).unwrap();
        let m = Module::new(&b, vec![2, 1, 3]).unwrap();
        let bc = Formalism::standard().base_change_iso::<f64>(&sq, &m).unwrap();
        assert!(bc.unitarity_residual().unwrap() < 1e-15);
        let misordered = Formalism::mutated(Mutation::MisorderLambda).base_change_iso::<f64>(&sq, &m);
        assert!(matches!(misordered, Err(Error::NotEquivariant { .. })));
    }
}
