use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cone, creal, czero, Real};

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix<T: Real> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> fmt::Debug for ComplexMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<T: Real> ComplexMatrix<T> {
    /// Builds a matrix from row-major entries, rejecting wrong lengths and
    /// non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![czero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = cone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Real-entried matrix from nested rows. Panics on ragged input.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| creal(T::lit(rows[i][j])))
    }

    pub fn diag(entries: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn real_diag(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = creal(x);
        }
        m
    }

    pub fn column(entries: &[Complex<T>]) -> Self {
        Self {
            rows: entries.len(),
            cols: 1,
            data: entries.to_vec(),
        }
    }

    /// Permutation matrix sending basis vector `k` to basis vector `image[k]`.
    /// Returns an error unless `image` is a bijection onto `0..image.len()`.
    pub fn permutation(image: &[usize]) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &t in image {
            if t >= n || seen[t] {
                return Err(Error::Dimension(format!("{image:?} is not a permutation")));
            }
            seen[t] = true;
        }
        let mut m = Self::zeros(n, n);
        for (k, &t) in image.iter().enumerate() {
            m[(t, k)] = cone();
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d = *d + a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .fold(czero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect())
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::Dimension(format!(
                "shapes {:?} and {:?} differ",
                self.shape(),
                rhs.shape()
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    /// Kronecker product; row `(i, k)` of the result is `i * b.rows() + k`.
    pub fn kron(&self, b: &Self) -> Self {
        let (ra, ca) = self.shape();
        let (rb, cb) = b.shape();
        let mut out = Self::zeros(ra * rb, ca * cb);
        let oc = ca * cb;
        for i in 0..ra {
            for j in 0..ca {
                let a = self.data[i * ca + j];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for k in 0..rb {
                    for l in 0..cb {
                        out.data[(i * rb + k) * oc + j * cb + l] = a * b.data[k * cb + l];
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal matrix with blocks in list order.
    pub fn direct_sum<'a, I>(blocks: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
        T: 'a,
    {
        let blocks: Vec<&Self> = blocks.into_iter().collect();
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        assert!(
            r0 + b.rows <= self.rows && c0 + b.cols <= self.cols,
            "block out of range"
        );
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = b.data[r * b.cols + c];
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        Self::from_fn(rows, cols, |r, c| self.data[(r0 + r) * self.cols + c0 + c])
    }

    /// Reorders rows and columns: entry `(r, c)` of the result is
    /// `self[(row_from[r], col_from[c])]`.
    pub fn reindex(&self, row_from: &[usize], col_from: &[usize]) -> Self {
        Self::from_fn(row_from.len(), col_from.len(), |r, c| self[(row_from[r], col_from[c])])
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.rows.min(self.cols)).fold(czero(), |acc, i| acc + self[(i, i)])
    }

    /// Frobenius norm of `self - other`, or an error when shapes differ.
    pub fn distance(&self, other: &Self) -> Result<T> {
        Ok(self.try_sub(other)?.frobenius_norm())
    }

    /// Frobenius norm of `u* u - I`.
    pub fn unitarity_residual(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "unitarity of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let gram = self.adjoint().try_mul(self)?;
        gram.distance(&Self::identity(self.rows))
    }

    /// Cast to another real field.
    pub fn cast<U: Real>(&self) -> ComplexMatrix<U> {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|z| Complex::new(U::lit(z.re.as_f64()), U::lit(z.im.as_f64())))
                .collect(),
        }
    }
}

impl<T: Real> std::ops::Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex<T> {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        &self.data[r * self.cols + c]
    }
}

impl<T: Real> std::ops::IndexMut<(usize, usize)> for ComplexMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex<T> {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl<T: Real> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn add(self, rhs: Self) -> ComplexMatrix<T> {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl<T: Real> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn sub(self, rhs: Self) -> ComplexMatrix<T> {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

/// Free-function form of [`ComplexMatrix::kron`].
pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    a.kron(b)
}

/// Free-function form of [`ComplexMatrix::direct_sum`].
pub fn direct_sum<T: Real>(blocks: &[ComplexMatrix<T>]) -> ComplexMatrix<T> {
    ComplexMatrix::direct_sum(blocks)
}

/// Free-function form of [`ComplexMatrix::unitarity_residual`].
pub fn unitarity_residual<T: Real>(u: &ComplexMatrix<T>) -> Result<T> {
    u.unitarity_residual()
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = ComplexMatrix<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn kron_identities() {
        assert_eq!(M::identity(2).kron(&M::identity(3)), M::identity(6));
    }

    #[test]
    fn kron_scalar_factor() {
        let x = M::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let two = M::from_real_rows(&[&[2.0]]);
        assert_eq!(x.kron(&two), M::from_real_rows(&[&[0.0, 2.0], &[2.0, 0.0]]));
    }

    #[test]
    fn kron_matches_quadruple_loop() {
        let a = M::new(2, 2, vec![c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 3.0), c(4.0, -1.0)]).unwrap();
        let b = M::new(2, 2, vec![c(0.25, 0.0), c(1.0, 1.0), c(-2.0, 0.5), c(0.0, -1.0)]).unwrap();
        let k = a.kron(&b);
        for i in 0..2 {
            for j in 0..2 {
                for p in 0..2 {
                    for q in 0..2 {
                        assert_eq!(k[(i * 2 + p, j * 2 + q)], a[(i, j)] * b[(p, q)]);
                    }
                }
            }
        }
    }

    #[test]
    fn direct_sum_cases() {
        assert_eq!(M::direct_sum([&M::identity(1), &M::identity(2)]), M::identity(3));
        let empty: [M; 0] = [];
        assert_eq!(direct_sum(&empty).shape(), (0, 0));
        let d = direct_sum(&[M::from_real_rows(&[&[2.0]]), M::from_real_rows(&[&[3.0]])]);
        assert_eq!(d, M::real_diag(&[2.0, 3.0]));
    }

    #[test]
    fn unitarity_residual_cases() {
        assert_eq!(M::identity(5).unitarity_residual().unwrap(), 0.0);
        // diag(2,1): u*u - I = diag(3, 0)
        assert_eq!(M::real_diag(&[2.0, 1.0]).unitarity_residual().unwrap(), 3.0);
        assert!(M::zeros(2, 3).unitarity_residual().is_err());
    }

    #[test]
    fn new_rejects_bad_input() {
        assert!(M::new(2, 2, vec![c(0.0, 0.0); 3]).is_err());
        assert_eq!(M::new(1, 1, vec![c(f64::NAN, 0.0)]), Err(Error::NonFinite));
    }

    #[test]
    fn permutation_is_checked() {
        let p = M::permutation(&[1, 2, 0]).unwrap();
        assert_eq!(p[(1, 0)], c(1.0, 0.0));
        assert_eq!(p.unitarity_residual().unwrap(), 0.0);
        assert!(M::permutation(&[0, 0]).is_err());
    }
}
