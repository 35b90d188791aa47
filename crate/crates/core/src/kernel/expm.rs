use super::eig::{eig_unitary, eigh, from_phases};
use super::matrix::ComplexMatrix;
use super::scalar::{cis, Real};
use crate::error::{Error, Result};
use num_complex::Complex;

/// Tolerance on skew-Hermiticity and unitarity of inputs.
pub const INPUT_TOL: f64 = 1e-10;
/// Eigenphases this close to -pi are reported as branch-ambiguous.
pub const BRANCH_TOL: f64 = 1e-12;

fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// exp(X) for skew-Hermitian X, through the eigendecomposition of iX.
pub fn expm_skew<T: Real>(x: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let dev = (x + &x.adjoint()).frobenius();
    if !x.is_square() || dev > T::lit(INPUT_TOL) * x.frobenius().max(T::one()) {
        return Err(Error::NotSkewHermitian(to_f64(dev)));
    }
    Ok(exp_skew(x))
}

/// exp(X) without the input check. The anti-Hermitian part of X is used.
pub fn exp_skew<T: Real>(x: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let h = x.scale(Complex::new(T::zero(), T::one()));
    let h = (&h + &h.adjoint()).scale_re(T::lit(0.5));
    let (w, v) = eigh(&h).expect("Hermitian eigensolver");
    let d: Vec<Complex<T>> = w.iter().map(|&l| cis(-l)).collect();
    &(&v * &ComplexMatrix::from_diag(&d)) * &v.adjoint()
}

/// Principal logarithm of a unitary matrix, eigenphases in (-pi, pi].
pub fn logm_unitary<T: Real>(u: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let dev = (&(u.adjoint() * u.clone()) - &ComplexMatrix::identity(u.dim())).frobenius();
    if !u.is_square() || dev > T::lit(INPUT_TOL) {
        return Err(Error::NotUnitary(to_f64(dev)));
    }
    let (phases, v) = eig_unitary(u)?;
    for &p in &phases {
        if (p + T::pi()).abs() <= T::lit(BRANCH_TOL) || (p - T::pi()).abs() <= T::lit(BRANCH_TOL) {
            return Err(Error::BranchAmbiguous(to_f64(p)));
        }
    }
    let d: Vec<Complex<T>> = phases.iter().map(|&p| Complex::new(T::zero(), p)).collect();
    Ok(&(&v * &ComplexMatrix::from_diag(&d)) * &v.adjoint())
}

/// Unitary with the same eigenvectors and phases multiplied by s.
pub fn unitary_power<T: Real>(u: &ComplexMatrix<T>, s: T) -> Result<ComplexMatrix<T>> {
    let (phases, v) = eig_unitary(u)?;
    let scaled: Vec<T> = phases.iter().map(|&p| p * s).collect();
    Ok(from_phases(&scaled, &v))
}
