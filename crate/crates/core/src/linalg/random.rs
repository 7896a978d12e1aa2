use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::matrix::ComplexMatrix;
use crate::scalar::{czero, Real};

/// Generator used by every randomized routine in the crate.
pub type SeededRng = ChaCha8Rng;

/// Mixes a parent seed with a path of indices into an independent sub-seed.
pub fn derive_seed(seed: u64, path: &[u64]) -> u64 {
    let mut x = splitmix(seed ^ 0x6a09_e667_f3bc_c909);
    for &p in path {
        x = splitmix(x ^ splitmix(p.wrapping_add(0x9e37_79b9_7f4a_7c15)));
    }
    x
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A generator on stream `stream` of the counter-based ChaCha8 keyed by `seed`.
pub fn seeded_rng(seed: u64, stream: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Standard complex Gaussian: real and imaginary parts N(0, 1/2).
pub fn complex_gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Complex::new(T::lit(re * s), T::lit(im * s))
}

/// Matrix of i.i.d. standard complex Gaussians.
pub fn random_matrix<T: Real, R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar-distributed unitary, deterministic in `seed`.
pub fn random_unitary<T: Real>(n: usize, seed: u64) -> ComplexMatrix<T> {
    let mut rng = seeded_rng(seed, 0);
    random_unitary_with(n, &mut rng)
}

/// Haar-distributed unitary drawn from an existing generator.
///
/// QR of a complex Gaussian matrix by modified Gram-Schmidt with one
/// reorthogonalization pass, then each column of Q is multiplied by the phase
/// of the corresponding diagonal entry of R.
pub fn random_unitary_with<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix<T> {
    loop {
        let z: ComplexMatrix<T> = random_matrix(n, n, rng);
        if let Some(q) = haar_qr(&z) {
            return q;
        }
    }
}

fn haar_qr<T: Real>(z: &ComplexMatrix<T>) -> Option<ComplexMatrix<T>> {
    let n = z.rows();
    let mut cols: Vec<Vec<Complex<T>>> = (0..n).map(|c| (0..n).map(|r| z[(r, c)]).collect()).collect();
    let mut r_diag = vec![czero::<T>(); n];
    for k in 0..n {
        let (done, rest) = cols.split_at_mut(k);
        let v = &mut rest[0];
        for _pass in 0..2 {
            for q in done.iter() {
                let proj = q
                    .iter()
                    .zip(v.iter())
                    .fold(czero::<T>(), |acc, (a, b)| acc + a.conj() * b);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi = *vi - proj * qi;
                }
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<T>().sqrt();
        if norm <= T::epsilon() * T::lit(1e3) {
            return None;
        }
        // Diagonal of R before normalization is <q_k, z_k>, whose phase is
        // the phase of <v, z_k> after v is normalized.
        let zk: Vec<Complex<T>> = (0..n).map(|r| z[(r, k)]).collect();
        for x in v.iter_mut() {
            *x = *x / norm;
        }
        r_diag[k] = v.iter().zip(&zk).fold(czero::<T>(), |acc, (a, b)| acc + a.conj() * b);
    }
    let mut q = ComplexMatrix::from_fn(n, n, |r, c| cols[c][r]);
    for (c, d) in r_diag.iter().enumerate() {
        let m = d.norm();
        if m == T::zero() {
            return None;
        }
        let phase = d / m;
        for r in 0..n {
            q[(r, c)] = q[(r, c)] * phase;
        }
    }
    Some(q)
}
