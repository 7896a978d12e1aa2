//! The square root correspondence between conditional expectations and
//! positive maps of standard forms.

use num_complex::Complex;
use rand::Rng;

use crate::coherence::instances::{random_algebra, random_ce, random_hom, random_state};
use crate::coherence::report::{CheckResult, Family, Level, SuiteConfig};
use crate::coherence::trial::Trial;
use crate::cvna::{
    apply_ce, ce_from_positive_map, ce_identity_check, mu_independence_check, sqrt_ce, AlgebraElement, CondExp, Hom,
};
use crate::error::Result;
use crate::functors::Formalism;
use crate::linalg::ComplexMatrix;

/// `ce(√φ)` against `φ`, as the largest weight difference.
pub fn sqrt_roundtrip(phi: &CondExp<f64>) -> Result<f64> {
    let back = ce_from_positive_map(&sqrt_ce(phi), phi.hom(), 0.0)?;
    Ok(back
        .weights()
        .iter()
        .zip(phi.weights())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// `√(ce(η))` against `η` for a positive `B`-linear `η`.
pub fn sqrt_roundtrip_cone(eta: &ComplexMatrix<f64>, f: &Hom) -> Result<f64> {
    let phi = ce_from_positive_map(eta, f, 0.0)?;
    sqrt_ce(&phi).distance(eta)
}

/// A positive `B`-linear map `L²B -> L²A` with random entries on its pattern.
pub fn random_positive_map<R: Rng + ?Sized>(rng: &mut R, f: &Hom) -> ComplexMatrix<f64> {
    let mut eta = ComplexMatrix::zeros(f.target().len(), f.source().len());
    for i in 0..f.target().len() {
        if !rng.random_bool(0.1) {
            eta[(i, f.spec(i))] = Complex::new(rng.random_range(0.0..3.0), 0.0);
        }
    }
    eta
}

/// How far `φ(a)` leaves the positive cone for a positive `a`.
pub fn positivity_defect(phi: &CondExp<f64>, a: &AlgebraElement<f64>) -> Result<f64> {
    let b = apply_ce(phi, a)?;
    Ok(b.values()
        .iter()
        .map(|z| (-z.re).max(z.im.abs()).max(0.0))
        .fold(0.0, f64::max))
}

pub(crate) fn run_trial(_: &Formalism, cfg: &SuiteConfig, index: usize) -> Vec<CheckResult> {
    let mut t = Trial::new(Family::Sqrt, cfg, index);
    let na = cfg.max_atoms;
    let b = random_algebra(&mut t.rng, na);
    let f = random_hom(&mut t.rng, &b, na);
    t.set_dims(format!("A={} B={}", f.target().len(), b.len()));

    let phi = random_ce(&mut t.rng, &f, true);
    t.record("sqrt-roundtrip", Level::Direct, sqrt_roundtrip(&phi));

    let eta = random_positive_map(&mut t.rng, &f);
    t.record("sqrt-roundtrip-cone", Level::Direct, sqrt_roundtrip_cone(&eta, &f));

    let values = (0..f.target().len())
        .map(|_| Complex::new(t.rng.random_range(-2.0..2.0), t.rng.random_range(-2.0..2.0)))
        .collect();
    let a = AlgebraElement::new(f.target(), values);
    t.record(
        "ce-identity",
        Level::Direct,
        a.and_then(|a| ce_identity_check(&phi, &a)),
    );

    let positive: Vec<f64> = (0..f.target().len()).map(|_| t.rng.random_range(0.0..2.0)).collect();
    let a = AlgebraElement::from_real(f.target(), &positive);
    t.record(
        "ce-positivity",
        Level::Direct,
        a.and_then(|a| positivity_defect(&phi, &a)),
    );

    let mu1 = random_state(&mut t.rng, &b, true);
    let mu2 = random_state(&mut t.rng, &b, true);
    t.record(
        "mu-independence",
        Level::Direct,
        mu_independence_check(&phi, &mu1, &mu2),
    );
    t.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cvna::Algebra;

    #[test]
    fn negative_entries_fall_outside_the_cone() {
        let f = Hom::from_scalars(&Algebra::standard(2));
        let eta = ComplexMatrix::from_real_rows(&[&[-2.0], &[3.0]]);
        let back = sqrt_ce(&ce_from_positive_map(&eta, &f, 0.0).unwrap());
        assert_eq!(back[(0, 0)].re, 2.0);
        assert!(sqrt_roundtrip_cone(&eta, &f).unwrap() > 3.9);
    }

    #[test]
    fn hand_example() {
        let f = Hom::from_scalars(&Algebra::standard(2));
        let phi = CondExp::new(&f, vec![4.0, 9.0]).unwrap();
        assert_eq!(sqrt_roundtrip(&phi).unwrap(), 0.0);
        let a = AlgebraElement::from_real(f.target(), &[1.0, 0.0]).unwrap();
        assert!(ce_identity_check(&phi, &a).unwrap() < 1e-15);
    }
}
