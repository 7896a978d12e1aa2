//! Random instances for the check suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cvna::{fibre_product, Algebra, CondExp, FibreSquare, Hom, State};
use crate::error::Result;
use crate::hmod::{Module, ModuleMap};
use crate::linalg::random_matrix;

pub fn random_algebra<R: Rng + ?Sized>(rng: &mut R, max_atoms: usize) -> Algebra {
    Algebra::standard(rng.random_range(1..=max_atoms.max(1)))
}

/// A homomorphism `source -> target` with a uniformly random spectral map.
pub fn random_hom_between<R: Rng + ?Sized>(rng: &mut R, source: &Algebra, target: &Algebra) -> Hom {
    let spec = (0..target.len()).map(|_| rng.random_range(0..source.len())).collect();
    Hom::new(source, target, spec).expect("values in range")
}

/// A homomorphism out of `source` into a fresh algebra.
pub fn random_hom<R: Rng + ?Sized>(rng: &mut R, source: &Algebra, max_atoms: usize) -> Hom {
    let target = random_algebra(rng, max_atoms);
    random_hom_between(rng, source, &target)
}

/// Fiber dimensions in `1..=max_dim`, with an occasional empty fiber.
pub fn random_module<R: Rng + ?Sized>(rng: &mut R, a: &Algebra, max_dim: usize) -> Module {
    let dims = (0..a.len())
        .map(|_| {
            if rng.random_bool(0.1) {
                0
            } else {
                rng.random_range(1..=max_dim.max(1))
            }
        })
        .collect();
    Module::new(a, dims).expect("one fiber per atom")
}

/// A map with independent complex Gaussian blocks.
pub fn random_map<R: Rng + ?Sized>(rng: &mut R, m: &Module, n: &Module) -> Result<ModuleMap<f64>> {
    let blocks = (0..m.algebra().len())
        .map(|i| random_matrix(n.dim(i), m.dim(i), rng))
        .collect();
    ModuleMap::new(m, n, blocks)
}

/// The fibre product of `f` and `g`, with product atoms listed either
/// lexicographically or in a random order.
pub fn random_square<R: Rng + ?Sized>(rng: &mut R, f: &Hom, g: &Hom) -> Result<FibreSquare> {
    let lex = fibre_product(f, g)?;
    if rng.random_bool(0.5) {
        return Ok(lex);
    }
    let mut pairs = lex.pairs().to_vec();
    pairs.shuffle(rng);
    shuffled_square(f, g, pairs)
}

/// The fibre product of `f` and `g` with its product atoms in the given order.
pub fn shuffled_square(f: &Hom, g: &Hom, pairs: Vec<(usize, usize)>) -> Result<FibreSquare> {
    FibreSquare::with_pairs(f, g, &Algebra::standard(pairs.len().max(1)), pairs)
}

/// A square over random legs out of `c`; retries until the product is
/// nonempty.
pub fn random_square_over<R: Rng + ?Sized>(rng: &mut R, c: &Algebra, max_atoms: usize) -> Result<FibreSquare> {
    loop {
        let f = random_hom(rng, c, max_atoms);
        let g = random_hom(rng, c, max_atoms);
        if let Ok(sq) = random_square(rng, &f, &g) {
            return Ok(sq);
        }
    }
}

/// Weights in `[0.1, 3)`, or with `allow_zero` an occasional zero.
pub fn random_weights<R: Rng + ?Sized>(rng: &mut R, n: usize, allow_zero: bool) -> Vec<f64> {
    (0..n)
        .map(|_| {
            if allow_zero && rng.random_bool(0.15) {
                0.0
            } else {
                rng.random_range(0.1..3.0)
            }
        })
        .collect()
}

pub fn random_ce<R: Rng + ?Sized>(rng: &mut R, hom: &Hom, allow_zero: bool) -> CondExp<f64> {
    CondExp::new(hom, random_weights(rng, hom.target().len(), allow_zero)).expect("valid weights")
}

pub fn random_state<R: Rng + ?Sized>(rng: &mut R, a: &Algebra, faithful: bool) -> State<f64> {
    State::new(a, random_weights(rng, a.len(), !faithful)).expect("valid weights")
}

/// Short description of a list of modules for reports.
pub fn describe(modules: &[(&str, &Module)]) -> String {
    modules
        .iter()
        .map(|(name, m)| format!("{name}={:?}", m.dims()))
        .collect::<Vec<_>>()
        .join(" ")
}
