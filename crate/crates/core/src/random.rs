//! Seeded Haar sampling on the groups used throughout the crate.

use crate::kernel::ComplexMatrix;
use crate::CMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normal<R: Rng>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Haar-random unitary via QR of a complex Ginibre matrix.
pub fn haar_unitary<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut z = ComplexMatrix::from_fn(n, n, |_, _| Complex64::new(normal(rng) * s, normal(rng) * s));
    z.gram_schmidt();
    z
}

/// Haar-random special unitary.
pub fn haar_su<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    let u = haar_unitary(n, rng);
    let d = u.det();
    let root = Complex64::from_polar(1.0, d.arg() / n as f64);
    u.scale(root.inv())
}

/// Haar-random special orthogonal matrix.
pub fn haar_so<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    let mut z = ComplexMatrix::from_fn(n, n, |_, _| Complex64::new(normal(rng), 0.0));
    z.gram_schmidt();
    if z.det().re < 0.0 {
        for i in 0..n {
            z[(i, 0)] = -z[(i, 0)];
        }
    }
    z
}

/// Random local unitary k1 (x) k2 with k1, k2 in SU(2).
pub fn random_local<R: Rng>(rng: &mut R) -> CMatrix {
    haar_su(2, rng).kron(&haar_su(2, rng))
}

/// Block-diagonal element of S(U(n) x U(n)).
pub fn random_block<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    let a = haar_unitary(n, rng);
    let b = haar_unitary(n, rng);
    let k = ComplexMatrix::block_diag(&a, &b);
    let d = k.det();
    let fix = Complex64::from_polar(1.0, -d.arg() / (2 * n) as f64);
    k.scale(fix)
}

pub fn random_vec<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    (0..n).map(|_| normal(rng)).collect()
}

/// Random real 3x3 matrix.
pub fn random_coupling<R: Rng>(rng: &mut R) -> [[f64; 3]; 3] {
    let mut j = [[0.0; 3]; 3];
    for row in j.iter_mut() {
        for v in row.iter_mut() {
            *v = normal(rng);
        }
    }
    j
}
