//! Constructive KAK decompositions for SU(n) = SO(n) A SO(n) and
//! SU(2n) = S(U(n) x U(n)) A S(U(n) x U(n)).

use crate::error::{Error, Result};
use crate::kernel::eig::{eig_normal, eigh};
use crate::kernel::ComplexMatrix;
use crate::CMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

/// Unitarity and determinant tolerance on inputs.
pub const GROUP_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// K = SO(n), A = exp(-i diag(lambda)).
    SunSon,
    /// K = block-diagonal S(U(n) x U(n)), A = exp(sum theta_j (E_{j,n+j} - E_{n+j,j})).
    Su2nBlock,
}

/// Cartan-subalgebra coordinates of a decomposition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CartanCoords {
    pub family: Family,
    pub values: Vec<f64>,
}

impl CartanCoords {
    pub fn new(family: Family, values: Vec<f64>) -> Self {
        Self { family, values }
    }

    /// Matrix dimension of the group the coordinates live in.
    pub fn matrix_dim(&self) -> usize {
        match self.family {
            Family::SunSon => self.values.len(),
            Family::Su2nBlock => 2 * self.values.len(),
        }
    }

    /// The Cartan-subalgebra element carried by these coordinates.
    pub fn embed(&self) -> CMatrix {
        embed(self.family, &self.values)
    }

    /// exp(embed()), evaluated in closed form.
    pub fn exp(&self) -> CMatrix {
        cartan_exp(self.family, &self.values)
    }
}

pub fn embed(family: Family, v: &[f64]) -> CMatrix {
    match family {
        Family::SunSon => CMatrix::from_diag(&v.iter().map(|&l| Complex64::new(0.0, -l)).collect::<Vec<_>>()),
        Family::Su2nBlock => {
            let n = v.len();
            let mut m = CMatrix::zeros(2 * n, 2 * n);
            for (j, &t) in v.iter().enumerate() {
                m[(j, n + j)] = Complex64::new(t, 0.0);
                m[(n + j, j)] = Complex64::new(-t, 0.0);
            }
            m
        }
    }
}

pub fn cartan_exp(family: Family, v: &[f64]) -> CMatrix {
    match family {
        Family::SunSon => CMatrix::from_diag(&v.iter().map(|&l| Complex64::from_polar(1.0, -l)).collect::<Vec<_>>()),
        Family::Su2nBlock => {
            let n = v.len();
            let mut m = CMatrix::zeros(2 * n, 2 * n);
            for (j, &t) in v.iter().enumerate() {
                let (s, c) = t.sin_cos();
                m[(j, j)] = Complex64::new(c, 0.0);
                m[(n + j, n + j)] = Complex64::new(c, 0.0);
                m[(j, n + j)] = Complex64::new(s, 0.0);
                m[(n + j, j)] = Complex64::new(-s, 0.0);
            }
            m
        }
    }
}

/// U = k_left exp(cartan) k_right.
#[derive(Clone, Debug, PartialEq)]
pub struct KakFactors {
    pub k_left: CMatrix,
    pub cartan: CartanCoords,
    pub k_right: CMatrix,
    pub family: Family,
}

pub fn reconstruct(f: &KakFactors) -> CMatrix {
    &(&f.k_left * &f.cartan.exp()) * &f.k_right
}

/// Whether k lies in the subgroup K of the family.
pub fn in_subgroup(k: &CMatrix, family: Family, tol: f64) -> bool {
    match family {
        Family::SunSon => k.is_special_orthogonal(tol),
        Family::Su2nBlock => {
            let n = k.dim() / 2;
            k.dim().is_multiple_of(2)
                && k.block(0, n, n, 2 * n).max_abs() <= tol
                && k.block(n, 2 * n, 0, n).max_abs() <= tol
                && k.is_unitary(tol)
                && k.is_special(tol)
        }
    }
}

pub fn check_special_unitary(u: &CMatrix) -> Result<()> {
    if !u.is_square() || !u.is_finite() {
        return Err(Error::Invalid("matrix must be square with finite entries".into()));
    }
    let dev = (&(u.adjoint() * u.clone()) - &CMatrix::identity(u.dim())).frobenius();
    if dev > GROUP_TOL {
        return Err(Error::NotUnitary(dev));
    }
    let d = (u.det() - Complex64::new(1.0, 0.0)).norm();
    if d > GROUP_TOL {
        return Err(Error::NotSpecial(d));
    }
    Ok(())
}

/// Angles used to mix the commuting real and imaginary parts of a
/// symmetric unitary matrix into one real symmetric matrix.
const MIX: [f64; 8] = [0.5217, 1.3379, 2.2091, 2.9713, 0.1173, 3.7853, 4.6151, 5.3897];

/// Real orthogonal simultaneous diagonalization of a complex symmetric unitary
/// matrix M = Theta diag(w) Theta^T.
fn real_orthogonal_eig(m: &CMatrix) -> Result<(Vec<Complex64>, CMatrix)> {
    let n = m.dim();
    let a = CMatrix::from_fn(n, n, |i, j| Complex64::new(0.5 * (m[(i, j)].re + m[(j, i)].re), 0.0));
    let b = CMatrix::from_fn(n, n, |i, j| Complex64::new(0.5 * (m[(i, j)].im + m[(j, i)].im), 0.0));
    let mut best: Option<(f64, Vec<Complex64>, CMatrix)> = None;
    for &t in MIX.iter() {
        let c = &a.scale_re(t.cos()) + &b.scale_re(t.sin());
        let (_, v) = eigh(&c)?;
        let v = v.real_part();
        let d = &(&v.transpose() * m) * &v;
        let mut off = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off = off.max(d[(i, j)].norm());
                }
            }
        }
        let w = d.diag().into_iter().map(|z| z / z.norm()).collect();
        if off < 1e-13 {
            return Ok((w, v));
        }
        if best.as_ref().is_none_or(|b| off < b.0) {
            best = Some((off, w, v));
        }
    }
    let (off, w, v) = best.expect("angles tried");
    if off < 1e-9 {
        Ok((w, v))
    } else {
        Err(Error::Eigen(format!("no real diagonalizing basis for UU^T (residual {off:.3e})")))
    }
}

/// Picks representatives mu_i + pi k_i in (-pi, pi] with zero sum.
fn zero_sum_representatives(mu: &[f64]) -> Vec<f64> {
    let mut nu: Vec<f64> = mu
        .iter()
        .map(|&m| {
            let mut v = m - PI * (m / PI).round();
            if v <= -FRAC_PI_2 {
                v += PI;
            }
            if v > FRAC_PI_2 {
                v -= PI;
            }
            v
        })
        .collect();
    let s = (nu.iter().sum::<f64>() / PI).round() as i64;
    let mut idx: Vec<usize> = (0..nu.len()).collect();
    if s > 0 {
        idx.sort_by(|&i, &j| nu[j].total_cmp(&nu[i]));
        for &i in idx.iter().take(s as usize) {
            nu[i] -= PI;
        }
    } else if s < 0 {
        idx.sort_by(|&i, &j| nu[i].total_cmp(&nu[j]));
        for &i in idx.iter().take((-s) as usize) {
            nu[i] += PI;
        }
    }
    nu
}

/// SU(n) = SO(n) exp(-i diag(lambda)) SO(n), lambda sorted descending with zero sum.
pub fn kak_sun_son(u: &CMatrix) -> Result<KakFactors> {
    check_special_unitary(u)?;
    let n = u.dim();
    let m = u * &u.transpose();
    let (w, theta) = real_orthogonal_eig(&m)?;
    // e^{-2 i mu} = w
    let mu: Vec<f64> = w.iter().map(|z| -z.arg() / 2.0).collect();
    let mu = zero_sum_representatives(&mu);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| mu[j].total_cmp(&mu[i]));
    let lambda: Vec<f64> = order.iter().map(|&i| mu[i]).collect();
    let mut th = CMatrix::from_fn(n, n, |r, c| theta[(r, order[c])]);
    if th.det().re < 0.0 {
        for r in 0..n {
            th[(r, 0)] = -th[(r, 0)];
        }
    }
    // V = e^{i lambda} Theta^T U is real orthogonal with unit determinant.
    let phase = CMatrix::from_diag(&lambda.iter().map(|&l| Complex64::from_polar(1.0, l)).collect::<Vec<_>>());
    let v = (&(&phase * &th.transpose()) * u).real_part();
    let v = v.transpose().reunitarize().transpose();
    Ok(KakFactors {
        k_left: th,
        cartan: CartanCoords::new(Family::SunSon, lambda),
        k_right: v,
        family: Family::SunSon,
    })
}

/// The involution S = diag(1_n, -1_n).
pub fn block_involution(n: usize) -> CMatrix {
    let d: Vec<f64> = (0..2 * n).map(|i| if i < n { 1.0 } else { -1.0 }).collect();
    CMatrix::from_real_diag(&d)
}

/// Orthonormal basis of the range of a Hermitian projector-like matrix.
fn range_basis(p: &CMatrix) -> Result<Vec<Vec<Complex64>>> {
    let (w, v) = eigh(p)?;
    Ok((0..w.len()).filter(|&i| w[i] > 0.5).map(|i| v.column(i)).collect())
}

fn normalized(v: &[Complex64]) -> Vec<Complex64> {
    let nrm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter().map(|z| z / nrm).collect()
}

/// SU(2n) = K exp(a) K with K block diagonal and a = sum theta_j (E_{j,n+j} - E_{n+j,j}).
/// theta is returned sorted descending in [0, pi/2].
pub fn kak_su2n(u: &CMatrix) -> Result<KakFactors> {
    check_special_unitary(u)?;
    if !u.dim().is_multiple_of(2) {
        return Err(Error::Invalid("SU(2n) decomposition needs even dimension".into()));
    }
    let n = u.dim() / 2;
    let s = block_involution(n);
    // M = U S U' S = K A^2 K'
    let m = &(&(&(u * &s) * &u.adjoint()) * &s);
    let (w, z) = eig_normal(m)?;
    let phi: Vec<f64> = w.iter().map(|c| c.arg()).collect();

    let mut attempt = None;
    for tol in [1e-9, 1e-8, 1e-7, 1e-6] {
        if let Some(r) = pair_columns(n, &phi, &z, tol)? {
            attempt = Some(r);
            break;
        }
    }
    let (mut cols1, mut cols2, thetas) = attempt.ok_or_else(|| {
        Error::Pairing("eigenvalues of U S U' S do not split into conjugate pairs".into())
    })?;

    // Sort descending, permuting both blocks alike.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| thetas[j].total_cmp(&thetas[i]));
    let theta: Vec<f64> = order.iter().map(|&i| thetas[i]).collect();
    cols1 = order.iter().map(|&i| cols1[i].clone()).collect();
    cols2 = order.iter().map(|&i| cols2[i].clone()).collect();

    let k1 = CMatrix::from_columns(n, &cols1).reunitarize();
    let k2 = CMatrix::from_columns(n, &cols2).reunitarize();
    let mut k = CMatrix::block_diag(&k1, &k2);
    // Equal phases on columns j and n+j commute with A; use them to fix det K.
    let psi = k.det().arg();
    let fix = Complex64::from_polar(1.0, -psi / 2.0);
    for r in 0..2 * n {
        k[(r, 0)] *= fix;
        k[(r, n)] *= fix;
    }

    let a = cartan_exp(Family::Su2nBlock, &theta);
    let v = &(&a.transpose() * &k.adjoint()) * u;
    let v1 = v.block(0, n, 0, n).reunitarize();
    let v2 = v.block(n, 2 * n, n, 2 * n).reunitarize();
    let mut v = CMatrix::block_diag(&v1, &v2);
    let dv = v.det();
    v = v.scale(Complex64::from_polar(1.0, -dv.arg() / (2 * n) as f64));
    Ok(KakFactors {
        k_left: k,
        cartan: CartanCoords::new(Family::Su2nBlock, theta),
        k_right: v,
        family: Family::Su2nBlock,
    })
}

type Pairing = (Vec<Vec<Complex64>>, Vec<Vec<Complex64>>, Vec<f64>);

/// Builds the columns of the two diagonal blocks of K from the eigenvectors
/// of U S U' S. Eigenvalues within `tol` of +1 or -1 are handled as clusters.
fn pair_columns(n: usize, phi: &[f64], z: &CMatrix, tol: f64) -> Result<Option<Pairing>> {
    let near_plus: Vec<usize> = (0..phi.len()).filter(|&i| phi[i].abs() < tol).collect();
    let near_minus: Vec<usize> = (0..phi.len()).filter(|&i| PI - phi[i].abs() < tol).collect();
    let upper: Vec<usize> = (0..phi.len()).filter(|&i| phi[i] >= tol && PI - phi[i] >= tol).collect();
    let lower = phi.iter().filter(|&&p| p <= -tol && PI + p >= tol).count();
    if upper.len() != lower {
        return Ok(None);
    }
    let mut cols1 = Vec::new();
    let mut cols2 = Vec::new();
    let mut thetas = Vec::new();
    let r2 = std::f64::consts::SQRT_2;
    for &i in &upper {
        let col = z.column(i);
        let top: Vec<Complex64> = col[..n].iter().map(|c| c * r2).collect();
        let bot: Vec<Complex64> = col[n..].iter().map(|c| c * Complex64::new(0.0, -r2)).collect();
        cols1.push(normalized(&top));
        cols2.push(normalized(&bot));
        thetas.push(phi[i] / 2.0);
    }
    for (cluster, theta) in [(near_plus, 0.0), (near_minus, FRAC_PI_2)] {
        if cluster.is_empty() {
            continue;
        }
        let zc = CMatrix::from_columns(2 * n, &cluster.iter().map(|&i| z.column(i)).collect::<Vec<_>>());
        let proj = &zc * &zc.adjoint();
        let tops = range_basis(&proj.block(0, n, 0, n))?;
        let bots = range_basis(&proj.block(n, 2 * n, n, 2 * n))?;
        if tops.len() != bots.len() || tops.len() + bots.len() != cluster.len() {
            return Ok(None);
        }
        for (t, b) in tops.into_iter().zip(bots) {
            cols1.push(t);
            cols2.push(b);
            thetas.push(theta);
        }
    }
    if cols1.len() != n {
        return Ok(None);
    }
    Ok(Some((cols1, cols2, thetas)))
}

/// Residual of the reconstruction against the source matrix.
pub fn residual(f: &KakFactors, u: &CMatrix) -> f64 {
    reconstruct(f).dist(u)
}

impl KakFactors {
    pub fn identity(family: Family, n: usize) -> Self {
        let (dim, len) = match family {
            Family::SunSon => (n, n),
            Family::Su2nBlock => (2 * n, n),
        };
        Self {
            k_left: ComplexMatrix::identity(dim),
            cartan: CartanCoords::new(family, vec![0.0; len]),
            k_right: ComplexMatrix::identity(dim),
            family,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{haar_so, haar_su, rng};

    #[test]
    fn identity_sun_son() {
        let f = kak_sun_son(&CMatrix::identity(3)).unwrap();
        assert_eq!(f.cartan.values, vec![0.0; 3]);
        assert!(f.k_left.dist(&CMatrix::identity(3)) < 1e-14);
        assert!(f.k_right.dist(&CMatrix::identity(3)) < 1e-14);
    }

    #[test]
    fn diagonal_input_recovers_phases() {
        let lam = [0.4, -0.1, -0.3];
        let u = cartan_exp(Family::SunSon, &lam);
        let f = kak_sun_son(&u).unwrap();
        for (a, b) in f.cartan.values.iter().zip(lam) {
            assert!((a - b).abs() < 1e-14);
        }
        // signed permutations
        for k in [&f.k_left, &f.k_right] {
            assert!(k.as_slice().iter().all(|z| z.norm() < 1e-12 || (z.norm() - 1.0).abs() < 1e-12));
        }
    }

    #[test]
    fn zero_sum_range() {
        let v = zero_sum_representatives(&[1.5, 1.5, PI - 3.0, 0.0]);
        assert!(v.iter().sum::<f64>().abs() < 1e-14);
        assert!(v.iter().all(|&x| x > -PI && x <= PI));
    }

    #[test]
    fn su2n_identity_and_orthogonal() {
        let f = kak_su2n(&CMatrix::identity(4)).unwrap();
        assert_eq!(f.cartan.values, vec![0.0, 0.0]);
        assert!(residual(&f, &CMatrix::identity(4)) < 1e-12);
        let mut r = rng(3);
        let o = haar_so(4, &mut r);
        let f = kak_su2n(&o).unwrap();
        assert!(residual(&f, &o) < 1e-10);
        assert!(in_subgroup(&f.k_left, Family::Su2nBlock, 1e-10));
    }

    #[test]
    fn su2n_cartan_element() {
        let u = cartan_exp(Family::Su2nBlock, &[0.5, 0.2]);
        let f = kak_su2n(&u).unwrap();
        assert!((f.cartan.values[0] - 0.5).abs() < 1e-12);
        assert!((f.cartan.values[1] - 0.2).abs() < 1e-12);
        assert!(residual(&f, &u) < 1e-12);
    }

    #[test]
    fn random_round_trips() {
        let mut r = rng(11);
        for n in [2, 3, 4, 5] {
            let u = haar_su(n, &mut r);
            let f = kak_sun_son(&u).unwrap();
            assert!(residual(&f, &u) < 1e-10, "n = {n}");
        }
        for n in [1, 2, 3] {
            let u = haar_su(2 * n, &mut r);
            let f = kak_su2n(&u).unwrap();
            assert!(residual(&f, &u) < 1e-10, "n = {n}");
        }
    }

    #[test]
    fn rejects_non_special() {
        let u = CMatrix::identity(2).scale(Complex64::new(0.0, 1.0));
        assert!(matches!(kak_sun_son(&u), Err(Error::NotSpecial(_))));
        assert!(matches!(kak_su2n(&CMatrix::identity(2).scale_re(2.0)), Err(Error::NotUnitary(_))));
    }
}
