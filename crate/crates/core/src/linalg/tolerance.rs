use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::matrix::ComplexMatrix;
use crate::scalar::Real;

/// Acceptance threshold for Frobenius residuals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    abs_eps: f64,
    /// Divide residuals by `sqrt(rows * cols)` before comparing.
    pub scale_mode: bool,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs_eps: 1e-10,
            scale_mode: false,
        }
    }
}

impl Tolerance {
    pub fn new(abs_eps: f64) -> Result<Self> {
        if !(abs_eps > 0.0 && abs_eps.is_finite()) {
            return Err(Error::Dimension(format!(
                "tolerance must be positive and finite, got {abs_eps}"
            )));
        }
        Ok(Self {
            abs_eps,
            scale_mode: false,
        })
    }

    pub fn scaled(self) -> Self {
        Self {
            scale_mode: true,
            ..self
        }
    }

    pub fn abs_eps(&self) -> f64 {
        self.abs_eps
    }

    /// Residual after the optional dimension normalization.
    pub fn normalize(&self, residual: f64, rows: usize, cols: usize) -> f64 {
        if self.scale_mode && rows * cols > 0 {
            residual / ((rows * cols) as f64).sqrt()
        } else {
            residual
        }
    }

    pub fn accepts(&self, residual: f64, rows: usize, cols: usize) -> bool {
        self.normalize(residual, rows, cols) <= self.abs_eps
    }
}

/// Same shape and Frobenius distance within tolerance.
pub fn approx_eq<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>, tol: &Tolerance) -> bool {
    match a.distance(b) {
        Ok(d) => tol.accepts(d.as_f64(), a.rows(), a.cols()),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonpositive() {
        assert!(Tolerance::new(0.0).is_err());
        assert!(Tolerance::new(-1.0).is_err());
        assert!(Tolerance::new(f64::NAN).is_err());
        assert_eq!(Tolerance::default().abs_eps(), 1e-10);
    }

    #[test]
    fn scale_mode_normalizes() {
        let t = Tolerance::new(1.0).unwrap().scaled();
        assert!(t.accepts(3.9, 4, 4));
        assert!(!Tolerance::new(1.0).unwrap().accepts(3.9, 4, 4));
    }

    #[test]
    fn approx_eq_shape_mismatch_is_false() {
        let a = ComplexMatrix::<f64>::identity(2);
        let b = ComplexMatrix::<f64>::identity(3);
        assert!(!approx_eq(&a, &b, &Tolerance::default()));
        assert!(approx_eq(&a, &a, &Tolerance::default()));
    }
}
