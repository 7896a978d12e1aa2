//! Maps between `L²` fusions over several different base algebras.
//!
//! Every space in the fibre product lemmas has a basis indexed by tuples of
//! leaf atoms `(b1, b2, ...)`. A [`KeyedMap`] carries the leaf tuple of each
//! basis vector, and composition matches the target of one map to the source
//! of the next by tuple. The canonical identifications between bracketings are
//! therefore implicit, and only the `L²` isomorphisms themselves carry
//! numerical content.

use std::collections::HashMap;

use crate::cvna::FibreSquare;
use crate::error::{Error, Result};
use crate::functors::Formalism;
use crate::linalg::ComplexMatrix;

pub(crate) type Key = Vec<usize>;
type Matrix = ComplexMatrix<f64>;

#[derive(Debug, Clone)]
pub(crate) struct KeyedMap {
    source: Vec<Key>,
    target: Vec<Key>,
    matrix: Matrix,
}

/// Permutation matrix sending the basis `from` to the basis `to`, matched by
/// key.
fn alignment(from: &[Key], to: &[Key]) -> Result<Matrix> {
    if from.len() != to.len() {
        return Err(Error::Dimension(format!("{} keys against {}", from.len(), to.len())));
    }
    let index: HashMap<&Key, usize> = to.iter().enumerate().map(|(k, key)| (key, k)).collect();
    let mut p = Matrix::zeros(to.len(), from.len());
    for (col, key) in from.iter().enumerate() {
        let row = index
            .get(key)
            .ok_or_else(|| Error::ModuleMismatch(format!("basis key {key:?} missing on the other side")))?;
        p[(*row, col)] = num_complex::Complex::new(1.0, 0.0);
    }
    Ok(p)
}

impl KeyedMap {
    pub fn new(source: Vec<Key>, target: Vec<Key>, matrix: Matrix) -> Result<Self> {
        if matrix.shape() != (target.len(), source.len()) {
            return Err(Error::Dimension(format!(
                "{}x{} matrix for {} source and {} target keys",
                matrix.rows(),
                matrix.cols(),
                source.len(),
                target.len()
            )));
        }
        Ok(Self { source, target, matrix })
    }

    #[cfg(test)]
    pub fn identity(keys: Vec<Key>) -> Self {
        let n = keys.len();
        Self {
            source: keys.clone(),
            target: keys,
            matrix: Matrix::identity(n),
        }
    }

    /// The identity matrix between two labelings of the same basis.
    pub fn relabel(keys: Vec<Key>, relabel: impl Fn(&Key) -> Key) -> Self {
        let target = keys.iter().map(relabel).collect();
        let n = keys.len();
        Self {
            source: keys,
            target,
            matrix: Matrix::identity(n),
        }
    }

    pub fn source(&self) -> &[Key] {
        &self.source
    }

    pub fn target(&self) -> &[Key] {
        &self.target
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &KeyedMap) -> Result<KeyedMap> {
        let p = alignment(&other.target, &self.source)?;
        let matrix = self.matrix.try_mul(&p)?.try_mul(&other.matrix)?;
        Ok(KeyedMap {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix,
        })
    }

    /// Applies the maps in order.
    pub fn chain(maps: &[&KeyedMap]) -> Result<KeyedMap> {
        let (first, rest) = maps
            .split_first()
            .ok_or_else(|| Error::Dimension("empty chain".into()))?;
        rest.iter().try_fold((*first).clone(), |acc, m| m.compose(&acc))
    }

    /// Frobenius distance after matching both bases by key.
    pub fn distance(&self, other: &KeyedMap) -> Result<f64> {
        let ps = alignment(&other.source, &self.source)?;
        let pt = alignment(&self.target, &other.target)?;
        let moved = pt.try_mul(&self.matrix)?.try_mul(&ps)?;
        moved.distance(&other.matrix)
    }

    /// `self ⊠ id` over a base acting on `self` through `grade` and on the
    /// right factor through `right_grade`. The new keys are `s ++ r`.
    ///
    /// Fails with the norm of the offending entries if `self` mixes grades.
    pub fn tensor_id(
        &self,
        grade: impl Fn(&Key) -> usize,
        right: &[Key],
        right_grade: impl Fn(&Key) -> usize,
    ) -> Result<KeyedMap> {
        self.whisker(&grade, right, &right_grade, |s, r| [s, r].concat())
    }

    /// `id ⊠ self`; the new keys are `l ++ s`.
    pub fn id_tensor(
        &self,
        grade: impl Fn(&Key) -> usize,
        left: &[Key],
        left_grade: impl Fn(&Key) -> usize,
    ) -> Result<KeyedMap> {
        self.whisker(&grade, left, &left_grade, |s, l| [l, s].concat())
    }

    fn whisker(
        &self,
        grade: &dyn Fn(&Key) -> usize,
        other: &[Key],
        other_grade: &dyn Fn(&Key) -> usize,
        join: impl Fn(&[usize], &[usize]) -> Key,
    ) -> Result<KeyedMap> {
        let mut defect = 0.0;
        for (r, t) in self.target.iter().enumerate() {
            for (c, s) in self.source.iter().enumerate() {
                if grade(t) != grade(s) {
                    defect += self.matrix[(r, c)].norm_sqr();
                }
            }
        }
        if defect.sqrt() > crate::functors::EQUIVARIANCE_SLACK {
            return Err(Error::NotEquivariant { defect: defect.sqrt() });
        }
        let expand = |keys: &[Key]| {
            let mut out = Vec::new();
            for (k, key) in keys.iter().enumerate() {
                for (o, okey) in other.iter().enumerate() {
                    if other_grade(okey) == grade(key) {
                        out.push((k, o, join(key, okey)));
                    }
                }
            }
            out
        };
        let (src, tgt) = (expand(&self.source), expand(&self.target));
        let mut matrix = Matrix::zeros(tgt.len(), src.len());
        for (r, (kt, ot, _)) in tgt.iter().enumerate() {
            for (c, (ks, os, _)) in src.iter().enumerate() {
                if ot == os {
                    matrix[(r, c)] = self.matrix[(*kt, *ks)];
                }
            }
        }
        Ok(KeyedMap {
            source: src.into_iter().map(|x| x.2).collect(),
            target: tgt.into_iter().map(|x| x.2).collect(),
            matrix,
        })
    }
}

/// The `L²` isomorphism of `sq` with leaf keys: the corner atoms of `A` and
/// `B` carry the keys `key_a` and `key_b`, and product atoms the concatenation.
pub(crate) fn lambda_keyed(
    fx: &Formalism,
    sq: &FibreSquare,
    key_a: impl Fn(usize) -> Key,
    key_b: impl Fn(usize) -> Key,
) -> Result<KeyedMap> {
    let lambda = fx.lambda::<f64>(sq)?.to_matrix();
    let source = crate::hmod::l2_fusion_basis(sq)
        .into_iter()
        .map(|(_, i, j)| [key_a(i), key_b(j)].concat())
        .collect();
    let target = sq
        .base_hom()
        .fibers()
        .into_iter()
        .flatten()
        .map(|p| {
            let (i, j) = sq.pairs()[p];
            [key_a(i), key_b(j)].concat()
        })
        .collect();
    KeyedMap::new(source, target, lambda)
}

pub(crate) fn single(i: usize) -> Key {
    vec![i]
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    #[test]
    fn composition_matches_keys() {
        let a = KeyedMap::relabel(vec![vec![0], vec![1]], |k| vec![1 - k[0]]);
        let b = KeyedMap::identity(vec![vec![0], vec![1]]);
        let c = b.compose(&a).unwrap();
        assert_eq!(c.target(), &[vec![0], vec![1]]);
        assert_eq!(c.distance(&a).unwrap(), 0.0);
    }

    #[test]
    fn whiskering_rejects_mixed_grades() {
        let mut m = Matrix::identity(2);
        m[(0, 1)] = Complex::new(1.0, 0.0);
        let f = KeyedMap::new(vec![vec![0], vec![1]], vec![vec![0], vec![1]], m).unwrap();
        let err = f.tensor_id(|k| k[0], &[vec![5]], |_| 0).unwrap_err();
        assert!(matches!(err, Error::NotEquivariant { .. }));
    }

    #[test]
    fn whiskering_an_identity_is_an_identity() {
        let f = KeyedMap::identity(vec![vec![0], vec![1]]);
        let g = f
            .tensor_id(|k| k[0], &[vec![7], vec![8], vec![9]], |r| usize::from(r[0] == 9))
            .unwrap();
        assert_eq!(g.source(), &[vec![0, 7], vec![0, 8], vec![1, 9]]);
        assert_eq!(g.matrix.unitarity_residual().unwrap(), 0.0);
    }
}
