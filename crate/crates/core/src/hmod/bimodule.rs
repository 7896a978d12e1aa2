//! Bimodules whose right action is diagonal in the chosen basis.
//!
//! Every structure isomorphism between composites of restriction, induction
//! and fusion with a fixed module is of the form `X ⊠_B M` for such a
//! bimodule `X`. A map of left modules is a bimodule map exactly when it only
//! links basis vectors carrying the same right label; it then extends to
//! `X ⊠_B M -> Y ⊠_B M` for every `B`-module `M`.

use crate::cvna::{check_algebra, Algebra};
use crate::error::{Error, Result};
use crate::hmod::module::{Module, ModuleMap};
use crate::linalg::ComplexMatrix;
use crate::scalar::Real;

/// An `A`-`B` bimodule: for each atom of `A`, the right label (an atom of
/// `B`) of each basis vector of that fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bimodule {
    left: Algebra,
    right: Algebra,
    labels: Vec<Vec<usize>>,
}

impl Bimodule {
    pub fn new(left: &Algebra, right: &Algebra, labels: Vec<Vec<usize>>) -> Result<Self> {
        if labels.len() != left.len() {
            return Err(Error::Dimension(format!(
                "{} label lists for {} left atoms",
                labels.len(),
                left.len()
            )));
        }
        if labels.iter().flatten().any(|&b| b >= right.len()) {
            return Err(Error::Dimension("right label out of range".into()));
        }
        Ok(Self {
            left: left.clone(),
            right: right.clone(),
            labels,
        })
    }

    pub fn left(&self) -> &Algebra {
        &self.left
    }

    pub fn right(&self) -> &Algebra {
        &self.right
    }

    pub fn labels(&self, atom: usize) -> &[usize] {
        &self.labels[atom]
    }

    /// The underlying left module.
    pub fn left_module(&self) -> Module {
        Module::new(&self.left, self.labels.iter().map(Vec::len).collect()).expect("one fiber per atom")
    }

    /// `X ⊠_B M`: fiber `i` concatenates `M_{label(x)}` over the basis `x` of `X_i`.
    pub fn tensor(&self, m: &Module) -> Result<Module> {
        check_algebra(&self.right, m.algebra())?;
        Module::new(
            &self.left,
            self.labels
                .iter()
                .map(|ls| ls.iter().map(|&b| m.dim(b)).sum())
                .collect(),
        )
    }
}

/// A map of left modules `X -> Y` that commutes with the right action.
#[derive(Debug, Clone, PartialEq)]
pub struct BimoduleMap<T: Real> {
    source: Bimodule,
    target: Bimodule,
    map: ModuleMap<T>,
}

impl<T: Real> BimoduleMap<T> {
    /// Fails with [`Error::NotEquivariant`] when `h` links differently labelled
    /// basis vectors with total weight above `slack`.
    pub fn from_module_map(x: &Bimodule, y: &Bimodule, h: &ModuleMap<T>, slack: f64) -> Result<Self> {
        check_algebra(x.right(), y.right())?;
        h.source().check_same(&x.left_module(), "bimodule map source")?;
        h.target().check_same(&y.left_module(), "bimodule map target")?;
        let mut defect = T::zero();
        for i in 0..x.left().len() {
            let b = h.block(i);
            for (r, &lr) in y.labels(i).iter().enumerate() {
                for (c, &lc) in x.labels(i).iter().enumerate() {
                    if lr != lc {
                        defect = defect + b[(r, c)].norm_sqr();
                    }
                }
            }
        }
        let defect = defect.sqrt().as_f64();
        if defect > slack {
            return Err(Error::NotEquivariant { defect });
        }
        Ok(Self {
            source: x.clone(),
            target: y.clone(),
            map: h.clone(),
        })
    }

    pub fn module_map(&self) -> &ModuleMap<T> {
        &self.map
    }

    /// `η ⊠_B M: X ⊠_B M -> Y ⊠_B M`; block `(y, x)` is `η[y, x]` times the
    /// identity of `M_{label}` when the labels agree.
    pub fn extend(&self, m: &Module) -> Result<ModuleMap<T>> {
        let source = self.source.tensor(m)?;
        let target = self.target.tensor(m)?;
        let mut blocks = Vec::with_capacity(self.source.left().len());
        for i in 0..self.source.left().len() {
            let eta = self.map.block(i);
            let (xl, yl) = (self.source.labels(i), self.target.labels(i));
            let mut block = ComplexMatrix::zeros(target.dim(i), source.dim(i));
            let mut row = 0;
            for (r, &lr) in yl.iter().enumerate() {
                let mut col = 0;
                for (c, &lc) in xl.iter().enumerate() {
                    if lr == lc {
                        for k in 0..m.dim(lr) {
                            block[(row + k, col + k)] = eta[(r, c)];
                        }
                    }
                    col += m.dim(lc);
                }
                row += m.dim(lr);
            }
            blocks.push(block);
        }
        ModuleMap::new(&source, &target, blocks)
    }
}
