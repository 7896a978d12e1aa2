use num_complex::Complex;

use crate::cvna::algebra::{check_algebra, check_weights, AlgebraElement, Hom, State};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::scalar::{creal, czero, Real};

/// A positive bimodule map `A -> B` over a homomorphism `B -> A`, given by
/// nonnegative weights on the atoms of `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct CondExp<T: Real> {
    hom: Hom,
    weights: Vec<T>,
}

impl<T: Real> CondExp<T> {
    pub fn new(hom: &Hom, weights: Vec<T>) -> Result<Self> {
        check_weights(&weights, hom.target().len(), "conditional expectation")?;
        Ok(Self {
            hom: hom.clone(),
            weights,
        })
    }

    /// All weights one.
    pub fn uniform(hom: &Hom) -> Self {
        Self {
            hom: hom.clone(),
            weights: vec![T::one(); hom.target().len()],
        }
    }

    pub fn hom(&self) -> &Hom {
        &self.hom
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn is_faithful(&self) -> bool {
        self.weights.iter().all(|&w| w > T::zero())
    }

    /// The composite state `μ ∘ φ` on the target algebra.
    pub fn pull_state(&self, mu: &State<T>) -> Result<State<T>> {
        check_algebra(self.hom.source(), mu.algebra())?;
        let w = (0..self.weights.len())
            .map(|i| mu.weights()[self.hom.spec(i)] * self.weights[i])
            .collect();
        State::new(self.hom.target(), w)
    }
}

/// `φ(a)_j = Σ_{spec(i) = j} w_i a_i`.
pub fn apply_ce<T: Real>(phi: &CondExp<T>, a: &AlgebraElement<T>) -> Result<AlgebraElement<T>> {
    let hom = phi.hom();
    check_algebra(hom.target(), a.algebra())?;
    let mut out = vec![czero::<T>(); hom.source().len()];
    for (i, (&w, &x)) in phi.weights().iter().zip(a.values()).enumerate() {
        out[hom.spec(i)] = out[hom.spec(i)] + x * w;
    }
    AlgebraElement::new(hom.source(), out)
}

/// The positive map `L²B -> L²A` whose square is `φ`; entry `(i, spec(i))`
/// is `sqrt(w_i)`.
pub fn sqrt_ce<T: Real>(phi: &CondExp<T>) -> ComplexMatrix<T> {
    let hom = phi.hom();
    let mut m = ComplexMatrix::zeros(hom.target().len(), hom.source().len());
    for (i, &w) in phi.weights().iter().enumerate() {
        m[(i, hom.spec(i))] = creal(w.sqrt());
    }
    m
}

/// Recovers `φ` from a `B`-linear map `η: L²B -> L²A` as `a ↦ η* a η`.
///
/// Entries outside the pattern `(i, spec(i))` make `η` fail to be `B`-linear;
/// their Frobenius norm is reported when it exceeds `slack`.
pub fn ce_from_positive_map<T: Real>(eta: &ComplexMatrix<T>, f: &Hom, slack: T) -> Result<CondExp<T>> {
    let (n_a, n_b) = (f.target().len(), f.source().len());
    if eta.shape() != (n_a, n_b) {
        return Err(Error::Dimension(format!(
            "expected a {n_a}x{n_b} map, got {}x{}",
            eta.rows(),
            eta.cols()
        )));
    }
    let mut defect = T::zero();
    for i in 0..n_a {
        for j in 0..n_b {
            if j != f.spec(i) {
                defect = defect + eta[(i, j)].norm_sqr();
            }
        }
    }
    let defect = defect.sqrt();
    if defect > slack {
        return Err(Error::NotEquivariant {
            defect: defect.as_f64(),
        });
    }
    let weights = (0..n_a).map(|i| eta[(i, f.spec(i))].norm_sqr()).collect();
    CondExp::new(f, weights)
}

/// Frobenius norm of `√φ* diag(a) √φ - diag(φ(a))`.
pub fn ce_identity_check<T: Real>(phi: &CondExp<T>, a: &AlgebraElement<T>) -> Result<T> {
    let s = sqrt_ce(phi);
    let lhs = s.adjoint().try_mul(&ComplexMatrix::diag(a.values()))?.try_mul(&s)?;
    let rhs = ComplexMatrix::diag(apply_ce(phi, a)?.values());
    lhs.distance(&rhs)
}

/// The map `b√μ ↦ b√(μφ)` written in the standard bases, for a faithful `μ`.
pub fn sqrt_ce_via_state<T: Real>(phi: &CondExp<T>, mu: &State<T>) -> Result<ComplexMatrix<T>> {
    let hom = phi.hom();
    check_algebra(hom.source(), mu.algebra())?;
    mu.require_faithful()?;
    let mu_phi = phi.pull_state(mu)?;
    let mut m = ComplexMatrix::zeros(hom.target().len(), hom.source().len());
    for i in 0..hom.target().len() {
        let j = hom.spec(i);
        // e_j = b√μ with b = 1/√μ_j at atom j; its image is b acting on √(μφ).
        let b = T::one() / mu.weights()[j].sqrt();
        m[(i, j)] = Complex::new(b * mu_phi.weights()[i].sqrt(), T::zero());
    }
    Ok(m)
}

/// Distance between the `√φ` built from two faithful states.
pub fn mu_independence_check<T: Real>(phi: &CondExp<T>, mu1: &State<T>, mu2: &State<T>) -> Result<T> {
    sqrt_ce_via_state(phi, mu1)?.distance(&sqrt_ce_via_state(phi, mu2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cvna::Algebra;

    fn collapse(n: usize) -> Hom {
        Hom::from_scalars(&Algebra::standard(n))
    }

    #[test]
    fn apply_ce_sums_over_fibers() {
        let phi = CondExp::new(&collapse(2), vec![4.0, 9.0]).unwrap();
        let a = AlgebraElement::from_real(&Algebra::standard(2), &[1.5, -2.0]).unwrap();
        assert_eq!(apply_ce(&phi, &a).unwrap().values()[0].re, 4.0 * 1.5 - 18.0);
        let one = apply_ce(&phi, &Algebra::standard(2).unit()).unwrap();
        assert_eq!(one.values()[0].re, 13.0);
    }

    #[test]
    fn identity_ce_is_identity() {
        let a = Algebra::standard(3);
        let phi = CondExp::<f64>::uniform(&Hom::identity(&a));
        let x = AlgebraElement::from_real(&a, &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(apply_ce(&phi, &x).unwrap(), x);
        assert_eq!(sqrt_ce(&phi), ComplexMatrix::identity(3));
        assert_eq!(ce_identity_check(&phi, &x).unwrap(), 0.0);
    }

    #[test]
    fn sqrt_is_entrywise_root() {
        let phi = CondExp::new(&collapse(2), vec![4.0, 9.0]).unwrap();
        assert_eq!(sqrt_ce(&phi), ComplexMatrix::from_real_rows(&[&[2.0], &[3.0]]));
        let back = ce_from_positive_map(&sqrt_ce(&phi), phi.hom(), 1e-12).unwrap();
        assert_eq!(back.weights(), &[4.0, 9.0]);
    }

    #[test]
    fn negative_entries_leave_the_cone() {
        let f = collapse(2);
        let eta = ComplexMatrix::<f64>::from_real_rows(&[&[-2.0], &[3.0]]);
        let phi = ce_from_positive_map(&eta, &f, 1e-12).unwrap();
        assert_eq!(phi.weights(), &[4.0, 9.0]);
        assert_eq!(sqrt_ce(&phi)[(0, 0)].re, 2.0);
        assert_ne!(sqrt_ce(&phi), eta);
    }

    #[test]
    fn off_pattern_entries_are_rejected() {
        let a = Algebra::standard(2);
        let eta = ComplexMatrix::<f64>::from_real_rows(&[&[1.0, 0.5], &[0.0, 1.0]]);
        assert!(matches!(
            ce_from_positive_map(&eta, &Hom::identity(&a), 1e-12),
            Err(Error::NotEquivariant { .. })
        ));
    }

    #[test]
    fn lemma_identity_by_hand() {
        let phi = CondExp::new(&collapse(2), vec![4.0, 9.0]).unwrap();
        let a = AlgebraElement::from_real(&Algebra::standard(2), &[1.0, 0.0]).unwrap();
        assert!(ce_identity_check(&phi, &a).unwrap() <= 1e-15);
    }

    #[test]
    fn one_atom_base_divides_out_the_state() {
        let phi = CondExp::new(&collapse(3), vec![0.5, 2.0, 7.0]).unwrap();
        let mu1 = State::new(&Algebra::scalars(), vec![0.3]).unwrap();
        let mu2 = State::new(&Algebra::scalars(), vec![11.0]).unwrap();
        assert!(mu_independence_check(&phi, &mu1, &mu2).unwrap() <= 1e-15);
        assert!(sqrt_ce_via_state(&phi, &mu1).unwrap().distance(&sqrt_ce(&phi)).unwrap() <= 1e-15);
    }

    #[test]
    fn unfaithful_state_is_rejected() {
        let phi = CondExp::new(&collapse(2), vec![1.0, 1.0]).unwrap();
        let mu = State::new(&Algebra::scalars(), vec![0.0]).unwrap();
        assert!(matches!(
            mu_independence_check(&phi, &mu, &mu),
            Err(Error::NotFaithful { .. })
        ));
    }
}
