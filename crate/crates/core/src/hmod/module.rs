use std::sync::Arc;

use num_complex::Complex;

use crate::cvna::{check_algebra, Algebra};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::scalar::{cone, Real};

/// A Hilbert space graded by the atoms of an algebra; basis ordered by atom,
/// then by index within the fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Module {
    algebra: Algebra,
    dims: Arc<[usize]>,
}

impl Module {
    pub fn new(algebra: &Algebra, dims: Vec<usize>) -> Result<Self> {
        if dims.len() != algebra.len() {
            return Err(Error::Dimension(format!(
                "{} fiber dimensions for an algebra with {} atoms",
                dims.len(),
                algebra.len()
            )));
        }
        Ok(Self {
            algebra: algebra.clone(),
            dims: dims.into(),
        })
    }

    /// The standard form: one-dimensional fiber at every atom.
    pub fn l2(algebra: &Algebra) -> Self {
        Self {
            algebra: algebra.clone(),
            dims: vec![1; algebra.len()].into(),
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, atom: usize) -> usize {
        self.dims[atom]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Position of the first basis vector of each fiber in the full basis.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.dims
            .iter()
            .map(|&d| {
                let o = acc;
                acc += d;
                o
            })
            .collect()
    }

    pub(crate) fn check_same(&self, other: &Module, what: &str) -> Result<()> {
        if self != other {
            return Err(Error::ModuleMismatch(format!(
                "{what}: dims {:?} vs {:?}{}",
                self.dims,
                other.dims,
                if self.algebra == other.algebra {
                    ""
                } else {
                    " over different algebras"
                }
            )));
        }
        Ok(())
    }
}

/// A bounded map of graded spaces: one block per atom.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleMap<T: Real> {
    source: Module,
    target: Module,
    blocks: Vec<ComplexMatrix<T>>,
}

impl<T: Real> ModuleMap<T> {
    pub fn new(source: &Module, target: &Module, blocks: Vec<ComplexMatrix<T>>) -> Result<Self> {
        check_algebra(source.algebra(), target.algebra())?;
        if blocks.len() != source.algebra().len() {
            return Err(Error::Dimension(format!(
                "{} blocks for {} atoms",
                blocks.len(),
                source.algebra().len()
            )));
        }
        for (i, b) in blocks.iter().enumerate() {
            if b.shape() != (target.dim(i), source.dim(i)) {
                return Err(Error::Dimension(format!(
                    "block {i} is {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    target.dim(i),
                    source.dim(i)
                )));
            }
            if !b.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            blocks,
        })
    }

    pub fn identity(m: &Module) -> Self {
        Self {
            source: m.clone(),
            target: m.clone(),
            blocks: m.dims().iter().map(|&d| ComplexMatrix::identity(d)).collect(),
        }
    }

    pub fn zero(source: &Module, target: &Module) -> Result<Self> {
        let blocks = source
            .dims()
            .iter()
            .zip(target.dims())
            .map(|(&s, &t)| ComplexMatrix::zeros(t, s))
            .collect();
        Self::new(source, target, blocks)
    }

    /// Partial permutation: basis vector `k` of fiber `i` goes to basis vector
    /// `image(i, k)` of the target fiber `i`.
    pub fn from_index_map(
        source: &Module,
        target: &Module,
        mut image: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self> {
        check_algebra(source.algebra(), target.algebra())?;
        let mut blocks = Vec::with_capacity(source.algebra().len());
        for i in 0..source.algebra().len() {
            let mut b = ComplexMatrix::zeros(target.dim(i), source.dim(i));
            for k in 0..source.dim(i) {
                let t = image(i, k);
                if t >= target.dim(i) {
                    return Err(Error::Dimension(format!("index {t} outside fiber {i}")));
                }
                b[(t, k)] = cone();
            }
            blocks.push(b);
        }
        Self::new(source, target, blocks)
    }

    /// Splits a full matrix into blocks; entries coupling different atoms are
    /// reported as an equivariance defect when their norm exceeds `slack`.
    pub fn from_matrix(source: &Module, target: &Module, m: &ComplexMatrix<T>, slack: f64) -> Result<Self> {
        if m.shape() != (target.total_dim(), source.total_dim()) {
            return Err(Error::Dimension(format!(
                "matrix is {}x{}, modules need {}x{}",
                m.rows(),
                m.cols(),
                target.total_dim(),
                source.total_dim()
            )));
        }
        let (so, to) = (source.offsets(), target.offsets());
        let mut off = T::zero();
        for i in 0..target.algebra().len() {
            for j in 0..source.algebra().len() {
                if i == j {
                    continue;
                }
                for r in 0..target.dim(i) {
                    for c in 0..source.dim(j) {
                        off = off + m[(to[i] + r, so[j] + c)].norm_sqr();
                    }
                }
            }
        }
        let defect = off.sqrt().as_f64();
        if defect > slack {
            return Err(Error::NotEquivariant { defect });
        }
        let blocks = (0..source.algebra().len())
            .map(|i| m.block(to[i], so[i], target.dim(i), source.dim(i)))
            .collect();
        Self::new(source, target, blocks)
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn algebra(&self) -> &Algebra {
        self.source.algebra()
    }

    pub fn blocks(&self) -> &[ComplexMatrix<T>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &ComplexMatrix<T> {
        &self.blocks[i]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap<T>) -> Result<ModuleMap<T>> {
        other.target.check_same(&self.source, "composition")?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.try_mul(b))
            .collect::<Result<_>>()?;
        Ok(Self {
            source: other.source.clone(),
            target: self.target.clone(),
            blocks,
        })
    }

    /// Composes a path of maps given in the order they are applied.
    pub fn chain(steps: &[&ModuleMap<T>]) -> Result<ModuleMap<T>> {
        let (first, rest) = steps
            .split_first()
            .ok_or_else(|| Error::Dimension("empty chain of maps".into()))?;
        rest.iter().try_fold((*first).clone(), |acc, next| next.compose(&acc))
    }

    /// Blockwise conjugate transpose.
    pub fn dagger(&self) -> ModuleMap<T> {
        Self {
            source: self.target.clone(),
            target: self.source.clone(),
            blocks: self.blocks.iter().map(ComplexMatrix::adjoint).collect(),
        }
    }

    pub fn scale(&self, s: Complex<T>) -> ModuleMap<T> {
        Self {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().map(|b| b.scale(s)).collect(),
        }
    }

    pub fn try_add(&self, other: &ModuleMap<T>) -> Result<ModuleMap<T>> {
        self.zip_blocks(other, |a, b| a.try_add(b))
    }

    pub fn try_sub(&self, other: &ModuleMap<T>) -> Result<ModuleMap<T>> {
        self.zip_blocks(other, |a, b| a.try_sub(b))
    }

    fn zip_blocks(
        &self,
        other: &ModuleMap<T>,
        f: impl Fn(&ComplexMatrix<T>, &ComplexMatrix<T>) -> Result<ComplexMatrix<T>>,
    ) -> Result<ModuleMap<T>> {
        self.source.check_same(&other.source, "source")?;
        self.target.check_same(&other.target, "target")?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| f(a, b))
            .collect::<Result<_>>()?;
        Ok(Self {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks,
        })
    }

    /// Frobenius distance; an error when the maps are not parallel.
    pub fn distance(&self, other: &ModuleMap<T>) -> Result<T> {
        Ok(self.try_sub(other)?.frobenius_norm())
    }

    pub fn frobenius_norm(&self) -> T {
        self.blocks
            .iter()
            .map(|b| {
                let n = b.frobenius_norm();
                n * n
            })
            .sum::<T>()
            .sqrt()
    }

    /// Frobenius norm of `h* h - 1` over all blocks.
    pub fn unitarity_residual(&self) -> Result<T> {
        self.source
            .check_same(&self.target, "unitarity needs equal fiber dimensions")?;
        let mut acc = T::zero();
        for b in &self.blocks {
            let r = b.unitarity_residual()?;
            acc = acc + r * r;
        }
        Ok(acc.sqrt())
    }

    /// Block-diagonal matrix on the full basis.
    pub fn to_matrix(&self) -> ComplexMatrix<T> {
        ComplexMatrix::direct_sum(&self.blocks)
    }

    pub fn apply(&self, v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        self.to_matrix().mul_vec(v)
    }
}
