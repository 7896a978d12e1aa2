use std::fmt;
use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// The algebra of functions on a finite set of atoms.
#[derive(Clone)]
pub struct Algebra {
    labels: Arc<[String]>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra{:?}", &*self.labels)
    }
}

impl Algebra {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidAlgebra("an algebra needs at least one atom".into()));
        }
        let mut sorted: Vec<&String> = labels.iter().collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidAlgebra(format!("duplicate atom label {:?}", w[0])));
        }
        Ok(Self { labels: labels.into() })
    }

    /// `n` atoms labelled `e0, e1, ...`. Panics when `n == 0`.
    pub fn standard(n: usize) -> Self {
        assert!(n > 0, "an algebra needs at least one atom");
        Self {
            labels: (0..n).map(|i| format!("e{i}")).collect(),
        }
    }

    /// The one-atom algebra of scalars.
    pub fn scalars() -> Self {
        Self::standard(1)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit<T: Real>(&self) -> AlgebraElement<T> {
        AlgebraElement {
            algebra: self.clone(),
            values: vec![Complex::new(T::one(), T::zero()); self.len()],
        }
    }
}

/// A function on the atoms of an algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement<T: Real> {
    algebra: Algebra,
    values: Vec<Complex<T>>,
}

impl<T: Real> AlgebraElement<T> {
    pub fn new(algebra: &Algebra, values: Vec<Complex<T>>) -> Result<Self> {
        if values.len() != algebra.len() {
            return Err(Error::Dimension(format!(
                "{} values for an algebra with {} atoms",
                values.len(),
                algebra.len()
            )));
        }
        Ok(Self {
            algebra: algebra.clone(),
            values,
        })
    }

    pub fn from_real(algebra: &Algebra, values: &[T]) -> Result<Self> {
        Self::new(algebra, values.iter().map(|&x| Complex::new(x, T::zero())).collect())
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    /// Nonnegative real at every atom, up to `slack`.
    pub fn is_positive(&self, slack: T) -> bool {
        self.values.iter().all(|z| z.re >= -slack && z.im.abs() <= slack)
    }
}

/// A unital homomorphism `source -> target`, stored as its dual map on atoms
/// `target -> source`.
#[derive(Clone, PartialEq, Eq)]
pub struct Hom {
    source: Algebra,
    target: Algebra,
    spec: Arc<[usize]>,
}

impl fmt::Debug for Hom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Hom({} -> {} atoms, spec {:?})",
            self.source.len(),
            self.target.len(),
            &*self.spec
        )
    }
}

impl Hom {
    pub fn new(source: &Algebra, target: &Algebra, spec: Vec<usize>) -> Result<Self> {
        if spec.len() != target.len() {
            return Err(Error::InvalidHom(format!(
                "spectral map has {} entries, target has {} atoms",
                spec.len(),
                target.len()
            )));
        }
        if let Some(&bad) = spec.iter().find(|&&j| j >= source.len()) {
            return Err(Error::InvalidHom(format!(
                "spectral map value {bad} out of range for a source with {} atoms",
                source.len()
            )));
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            spec: spec.into(),
        })
    }

    pub fn identity(a: &Algebra) -> Self {
        Self {
            source: a.clone(),
            target: a.clone(),
            spec: (0..a.len()).collect(),
        }
    }

    /// The unit map from scalars.
    pub fn from_scalars(target: &Algebra) -> Self {
        Self {
            source: Algebra::scalars(),
            target: target.clone(),
            spec: vec![0; target.len()].into(),
        }
    }

    /// `f ∘ g` for `g: C -> B` and `f: B -> A`.
    pub fn compose(f: &Hom, g: &Hom) -> Result<Hom> {
        if g.target != f.source {
            return Err(Error::AlgebraMismatch {
                expected: format!("{:?}", f.source),
                found: format!("{:?}", g.target),
            });
        }
        Ok(Hom {
            source: g.source.clone(),
            target: f.target.clone(),
            spec: f.spec.iter().map(|&j| g.spec[j]).collect(),
        })
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn spec(&self, i: usize) -> usize {
        self.spec[i]
    }

    pub fn spec_map(&self) -> &[usize] {
        &self.spec
    }

    /// Target atoms lying over source atom `j`, ascending.
    pub fn fiber(&self, j: usize) -> Vec<usize> {
        (0..self.spec.len()).filter(|&i| self.spec[i] == j).collect()
    }

    /// All fibers, indexed by source atom.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.source.len()];
        for (i, &j) in self.spec.iter().enumerate() {
            out[j].push(i);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.spec.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Bijective on atoms.
    pub fn is_iso(&self) -> bool {
        self.source.len() == self.target.len() && self.fibers().iter().all(|f| f.len() == 1)
    }

    pub fn inverse(&self) -> Result<Hom> {
        if !self.is_iso() {
            return Err(Error::NotIsomorphism(format!("{self:?}")));
        }
        let mut spec = vec![0; self.source.len()];
        for (i, &j) in self.spec.iter().enumerate() {
            spec[j] = i;
        }
        Hom::new(&self.target, &self.source, spec)
    }

    /// Image of `b` in the target: `f(b)_i = b_{spec(i)}`.
    pub fn apply<T: Real>(&self, b: &AlgebraElement<T>) -> Result<AlgebraElement<T>> {
        check_algebra(&self.source, b.algebra())?;
        AlgebraElement::new(&self.target, self.spec.iter().map(|&j| b.values()[j]).collect())
    }
}

pub(crate) fn check_algebra(expected: &Algebra, found: &Algebra) -> Result<()> {
    if expected != found {
        return Err(Error::AlgebraMismatch {
            expected: format!("{expected:?}"),
            found: format!("{found:?}"),
        });
    }
    Ok(())
}

pub(crate) fn check_weights<T: Real>(weights: &[T], n: usize, what: &str) -> Result<()> {
    if weights.len() != n {
        return Err(Error::InvalidWeights(format!(
            "{what}: {} weights for {n} atoms",
            weights.len()
        )));
    }
    if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < T::zero()) {
        return Err(Error::InvalidWeights(format!(
            "{what}: weight {w} is not a nonnegative number"
        )));
    }
    Ok(())
}

/// A positive functional, given by nonnegative atom weights.
#[derive(Debug, Clone, PartialEq)]
pub struct State<T: Real> {
    algebra: Algebra,
    weights: Vec<T>,
}

impl<T: Real> State<T> {
    pub fn new(algebra: &Algebra, weights: Vec<T>) -> Result<Self> {
        check_weights(&weights, algebra.len(), "state")?;
        Ok(Self {
            algebra: algebra.clone(),
            weights,
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn is_faithful(&self) -> bool {
        self.weights.iter().all(|&w| w > T::zero())
    }

    /// Error naming the first atom with zero weight.
    pub fn require_faithful(&self) -> Result<()> {
        match self.weights.iter().position(|&w| w <= T::zero()) {
            Some(i) => Err(Error::NotFaithful {
                atom: self.algebra.label(i).to_string(),
                weight: self.weights[i].as_f64(),
            }),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_validation() {
        assert!(Algebra::new(Vec::<String>::new()).is_err());
        assert!(Algebra::new(["a", "a"]).is_err());
        let a = Algebra::new(["x", "y"]).unwrap();
        assert_eq!(a.index_of("y"), Some(1));
    }

    #[test]
    fn hom_composition_reverses_spec_maps() {
        let c = Algebra::standard(2);
        let b = Algebra::standard(3);
        let a = Algebra::standard(4);
        let g = Hom::new(&c, &b, vec![0, 1, 1]).unwrap();
        let f = Hom::new(&b, &a, vec![2, 0, 1, 2]).unwrap();
        let fg = Hom::compose(&f, &g).unwrap();
        assert_eq!(fg.spec_map(), &[1, 0, 1, 1]);
        assert!(Hom::compose(&g, &f).is_err());
    }

    #[test]
    fn apply_is_a_unital_homomorphism() {
        let b = Algebra::standard(2);
        let a = Algebra::standard(3);
        let f = Hom::new(&b, &a, vec![1, 0, 1]).unwrap();
        let one = f.apply(&b.unit::<f64>()).unwrap();
        assert_eq!(one, a.unit());
        let x = AlgebraElement::from_real(&b, &[2.0, 5.0]).unwrap();
        let y = f.apply(&x).unwrap();
        assert_eq!(y.values()[0].re, 5.0);
        assert_eq!(y.values()[1].re, 2.0);
    }

    #[test]
    fn inverse_of_iso() {
        let a = Algebra::standard(3);
        let f = Hom::new(&a, &a, vec![2, 0, 1]).unwrap();
        let g = f.inverse().unwrap();
        assert!(Hom::compose(&f, &g).unwrap().is_identity());
        let h = Hom::new(&a, &a, vec![0, 0, 1]).unwrap();
        assert!(h.inverse().is_err());
    }

    #[test]
    fn state_faithfulness() {
        let a = Algebra::standard(2);
        let s = State::new(&a, vec![1.0, 0.0]).unwrap();
        assert!(!s.is_faithful());
        assert!(matches!(s.require_faithful(), Err(Error::NotFaithful { .. })));
        assert!(State::new(&a, vec![1.0, -1.0]).is_err());
    }
}
