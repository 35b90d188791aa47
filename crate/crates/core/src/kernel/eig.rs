use super::matrix::ComplexMatrix;
use super::scalar::{cis, czero, Real};
use crate::error::{Error, Result};
use num_complex::Complex;

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order and a unitary matrix whose columns
/// are the matching eigenvectors. Real symmetric input yields real vectors.
pub fn eigh<T: Real>(h: &ComplexMatrix<T>) -> Result<(Vec<T>, ComplexMatrix<T>)> {
    let n = h.dim();
    let mut a = h.clone();
    // symmetrize to remove rounding asymmetry
    for i in 0..n {
        a[(i, i)] = Complex::new(a[(i, i)].re, T::zero());
        for j in i + 1..n {
            let z = (a[(i, j)] + a[(j, i)].conj()) * T::lit(0.5);
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius().max(T::min_positive_value());
    let eps = T::epsilon();
    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal(&a);
        if off <= eps * scale * T::lit(0.1) {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal(&a) > eps.sqrt() * scale {
        return Err(Error::Eigen("Jacobi sweeps did not converge".into()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap_or(std::cmp::Ordering::Equal));
    let vals = order.iter().map(|&i| a[(i, i)].re).collect();
    let vecs = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok((vals, vecs))
}

fn off_diagonal<T: Real>(a: &ComplexMatrix<T>) -> T {
    let n = a.dim();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s = s + a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate<T: Real>(a: &mut ComplexMatrix<T>, v: &mut ComplexMatrix<T>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == T::zero() {
        return;
    }
    let n = a.dim();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / mag;
    let theta = (aqq - app) / (T::lit(2.0) * mag);
    let t = if theta.is_infinite() {
        T::zero()
    } else {
        let sgn = if theta >= T::zero() { T::one() } else { -T::one() };
        sgn / (theta.abs() + (theta * theta + T::one()).sqrt())
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;
    // J = [[c, s e^{i phi}], [-s e^{-i phi}, c]] on (p, q)
    let jpq = phase * s;
    let jqp = -(phase.conj() * s);
    // A <- A J
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * jqp;
        a[(k, q)] = akp * jpq + akq * c;
    }
    // A <- J' A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * jqp.conj();
        a[(q, k)] = apk * jpq.conj() + aqk * c;
    }
    a[(p, q)] = czero();
    a[(q, p)] = czero();
    a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
    a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * c;
    }
}

/// Mixing angles tried when diagonalizing a normal matrix through a
/// Hermitian combination of its real and imaginary parts.
const MIX_ANGLES: [f64; 8] = [0.5217, 1.3379, 2.2091, 2.9713, 3.7853, 4.6151, 5.3897, 0.1173];

/// Eigendecomposition of a normal matrix N = V diag(w) V'.
///
/// Diagonalizes cos(t) H1 + sin(t) H2 with H1 = (N + N')/2, H2 = (N - N')/(2i)
/// and accepts the first angle whose eigenvectors diagonalize N itself.
pub fn eig_normal<T: Real>(m: &ComplexMatrix<T>) -> Result<(Vec<Complex<T>>, ComplexMatrix<T>)> {
    let n = m.dim();
    let adj = m.adjoint();
    let h1 = (m + &adj).scale_re(T::lit(0.5));
    let h2 = (m - &adj).scale(Complex::new(T::zero(), T::lit(-0.5)));
    let scale = m.frobenius().max(T::one());
    let accept = T::epsilon() * T::lit(64.0) * scale * T::from_usize(n).unwrap();
    let mut best: Option<(T, Vec<Complex<T>>, ComplexMatrix<T>)> = None;
    for &t in MIX_ANGLES.iter() {
        let t = T::lit(t);
        let c = &h1.scale_re(t.cos()) + &h2.scale_re(t.sin());
        let (_, v) = eigh(&c)?;
        let d = &(&v.adjoint() * m) * &v;
        let off = off_diagonal(&d);
        let w = d.diag();
        if off <= accept {
            return Ok((w, v));
        }
        if best.as_ref().is_none_or(|b| off < b.0) {
            best = Some((off, w, v));
        }
    }
    let (off, w, v) = best.expect("at least one angle tried");
    if off <= T::epsilon().sqrt() * scale {
        Ok((w, v))
    } else {
        Err(Error::Eigen(format!("normal-matrix diagonalization residual {:.3e}", off.to_f64().unwrap_or(f64::NAN))))
    }
}

/// Eigenphases (in (-pi, pi]) and eigenvectors of a unitary matrix.
pub fn eig_unitary<T: Real>(u: &ComplexMatrix<T>) -> Result<(Vec<T>, ComplexMatrix<T>)> {
    let (w, v) = eig_normal(u)?;
    Ok((w.into_iter().map(|z| z.arg()).collect(), v))
}

/// Rebuilds V diag(e^{i phases}) V'.
pub fn from_phases<T: Real>(phases: &[T], v: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let d: Vec<Complex<T>> = phases.iter().map(|&p| cis(p)).collect();
    &(v * &ComplexMatrix::from_diag(&d)) * &v.adjoint()
}
