use super::matrix::ComplexMatrix;
use super::scalar::Real;
use crate::error::{Error, Result};
use num_complex::Complex;

/// Membership tolerance for span tests.
pub const SPAN_TOL: f64 = 1e-8;

/// Ordered list of traceless skew-Hermitian matrices spanning a real Lie
/// algebra (or a subspace of one).
#[derive(Clone, Debug)]
pub struct AlgebraBasis<T: Real> {
    elements: Vec<ComplexMatrix<T>>,
    labels: Vec<String>,
    gram: Vec<Vec<T>>,
}

impl<T: Real> AlgebraBasis<T> {
    pub fn new(elements: Vec<ComplexMatrix<T>>, labels: Vec<String>) -> Result<Self> {
        if elements.len() != labels.len() {
            return Err(Error::Dimension { expected: elements.len(), got: labels.len() });
        }
        let tol = T::lit(1e-12);
        for e in &elements {
            let skew = (e + &e.adjoint()).frobenius();
            if skew > tol || e.trace().norm() > tol {
                return Err(Error::Invalid("basis element not traceless skew-Hermitian".into()));
            }
        }
        let gram = gram_matrix(&elements);
        if !elements.is_empty() && solve(&gram, &vec![T::zero(); elements.len()]).is_none() {
            return Err(Error::Invalid("basis elements are linearly dependent".into()));
        }
        Ok(Self { elements, labels, gram })
    }

    /// Basis with generated labels e0, e1, ...
    pub fn unlabeled(elements: Vec<ComplexMatrix<T>>) -> Result<Self> {
        let labels = (0..elements.len()).map(|i| format!("e{i}")).collect();
        Self::new(elements, labels)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ComplexMatrix<T>] {
        &self.elements
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &[Vec<T>] {
        &self.gram
    }

    /// Matrix dimension of the elements.
    pub fn matrix_dim(&self) -> usize {
        self.elements.first().map_or(0, |e| e.dim())
    }

    /// Least-squares coordinates of x and the norm of the residual.
    pub fn project(&self, x: &ComplexMatrix<T>) -> (Vec<T>, T) {
        let b: Vec<T> = self.elements.iter().map(|e| e.inner_re(x)).collect();
        let c = solve(&self.gram, &b).expect("Gram matrix nonsingular");
        let resid = (x - &self.combine(&c)).frobenius();
        (c, resid)
    }

    /// Coordinates of x, failing when x is outside the span.
    pub fn coords(&self, x: &ComplexMatrix<T>) -> Result<Vec<T>> {
        let (c, r) = self.project(x);
        if r > T::lit(SPAN_TOL) * x.frobenius().max(T::one()) {
            return Err(Error::OutsideSpan(r.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(c)
    }

    pub fn contains(&self, x: &ComplexMatrix<T>, tol: T) -> bool {
        self.project(x).1 <= tol
    }

    pub fn combine(&self, c: &[T]) -> ComplexMatrix<T> {
        let n = self.matrix_dim();
        let mut out = ComplexMatrix::zeros(n, n);
        for (e, &w) in self.elements.iter().zip(c) {
            if w != T::zero() {
                out += &e.scale_re(w);
            }
        }
        out
    }

    /// Matrix of ad_x in this basis: column j holds the coordinates of [x, e_j].
    pub fn ad_matrix(&self, x: &ComplexMatrix<T>) -> Result<Vec<Vec<T>>> {
        let n = self.len();
        let mut m = vec![vec![T::zero(); n]; n];
        for (j, e) in self.elements.iter().enumerate() {
            let c = self.coords(&x.commutator(e))?;
            for i in 0..n {
                m[i][j] = c[i];
            }
        }
        Ok(m)
    }

    /// Basis orthonormal under Re tr(x' y), same span.
    pub fn orthonormalized(&self) -> Self {
        let mut out: Vec<ComplexMatrix<T>> = Vec::new();
        for e in &self.elements {
            let mut v = e.clone();
            for _ in 0..2 {
                for q in &out {
                    let d = q.inner_re(&v);
                    v -= &q.scale_re(d);
                }
            }
            let nrm = v.frobenius();
            out.push(v.scale_re(T::one() / nrm));
        }
        let gram = gram_matrix(&out);
        Self { elements: out, labels: self.labels.clone(), gram }
    }

    /// Concatenation of two bases.
    pub fn join(&self, other: &Self) -> Result<Self> {
        Self::new(
            self.elements.iter().chain(other.elements.iter()).cloned().collect(),
            self.labels.iter().chain(other.labels.iter()).cloned().collect(),
        )
    }
}

fn gram_matrix<T: Real>(el: &[ComplexMatrix<T>]) -> Vec<Vec<T>> {
    el.iter().map(|a| el.iter().map(|b| a.inner_re(b)).collect()).collect()
}

/// Killing form tr(ad_x ad_y) computed over a basis of the whole algebra.
pub fn killing_form<T: Real>(x: &ComplexMatrix<T>, y: &ComplexMatrix<T>, basis: &AlgebraBasis<T>) -> Result<T> {
    basis.coords(x)?;
    basis.coords(y)?;
    let ax = basis.ad_matrix(x)?;
    let ay = basis.ad_matrix(y)?;
    let n = basis.len();
    let mut tr = T::zero();
    for i in 0..n {
        for k in 0..n {
            tr = tr + ax[i][k] * ay[k][i];
        }
    }
    Ok(tr)
}

/// Solves a x = b by Gaussian elimination with partial pivoting.
/// Returns None when a is numerically singular.
pub fn solve<T: Real>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let n = b.len();
    let mut m: Vec<Vec<T>> = a.iter().zip(b).map(|(r, &bi)| {
        let mut row = r.clone();
        row.push(bi);
        row
    }).collect();
    let scale = a.iter().flatten().fold(T::zero(), |acc, v| acc.max(v.abs())).max(T::min_positive_value());
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| m[i][k].abs().partial_cmp(&m[j][k].abs()).unwrap())?;
        if m[p][k].abs() <= scale * T::epsilon() * T::lit(1e3) {
            return None;
        }
        m.swap(k, p);
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            if f == T::zero() {
                continue;
            }
            let (top, rest) = m.split_at_mut(i);
            for (x, &t) in rest[0][k..=n].iter_mut().zip(&top[k][k..=n]) {
                *x = *x - f * t;
            }
        }
    }
    let mut x = vec![T::zero(); n];
    for k in (0..n).rev() {
        let mut s = m[k][n];
        for j in k + 1..n {
            s = s - m[k][j] * x[j];
        }
        x[k] = s / m[k][k];
    }
    Some(x)
}

fn unit<T: Real>(n: usize, i: usize, j: usize, z: Complex<T>) -> ComplexMatrix<T> {
    let mut m = ComplexMatrix::zeros(n, n);
    m[(i, j)] = z;
    m
}

/// Real antisymmetric basis E_ij - E_ji of so(n).
pub fn so_basis<T: Real>(n: usize) -> AlgebraBasis<T> {
    let one = Complex::new(T::one(), T::zero());
    let mut el = Vec::new();
    let mut lab = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            el.push(&unit(n, i, j, one) - &unit(n, j, i, one));
            lab.push(format!("A{i}{j}"));
        }
    }
    AlgebraBasis::new(el, lab).expect("so(n) basis")
}

/// i times the real symmetric traceless matrices: the complement of so(n) in su(n).
pub fn isym_basis<T: Real>(n: usize) -> AlgebraBasis<T> {
    let iu = Complex::new(T::zero(), T::one());
    let mut el = Vec::new();
    let mut lab = Vec::new();
    for k in 1..n {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..k {
            m[(i, i)] = iu;
        }
        m[(k, k)] = iu * T::from_usize(k).unwrap() * -T::one();
        el.push(m);
        lab.push(format!("D{k}"));
    }
    for i in 0..n {
        for j in i + 1..n {
            el.push(&unit(n, i, j, iu) + &unit(n, j, i, iu));
            lab.push(format!("S{i}{j}"));
        }
    }
    AlgebraBasis::new(el, lab).expect("i sym basis")
}

/// Diagonal part of isym_basis: i diag(traceless real).
pub fn diagonal_traceless_basis<T: Real>(n: usize) -> AlgebraBasis<T> {
    let iu = Complex::new(T::zero(), T::one());
    let mut el = Vec::new();
    let mut lab = Vec::new();
    for k in 0..n - 1 {
        let mut m = ComplexMatrix::zeros(n, n);
        m[(k, k)] = iu;
        m[(k + 1, k + 1)] = -iu;
        el.push(m);
        lab.push(format!("H{k}"));
    }
    AlgebraBasis::new(el, lab).expect("diagonal basis")
}

/// Full basis of su(n).
pub fn su_basis<T: Real>(n: usize) -> AlgebraBasis<T> {
    so_basis(n).join(&isym_basis(n)).expect("su(n) basis")
}

/// Block-diagonal traceless anti-Hermitian matrices of size 2n.
pub fn block_k_basis<T: Real>(n: usize) -> AlgebraBasis<T> {
    let d = 2 * n;
    let one = Complex::new(T::one(), T::zero());
    let iu = Complex::new(T::zero(), T::one());
    let mut el = Vec::new();
    let mut lab = Vec::new();
    for (blk, off) in [("A", 0), ("B", n)] {
        for i in 0..n {
            for j in i + 1..n {
                el.push(&unit(d, off + i, off + j, one) - &unit(d, off + j, off + i, one));
                lab.push(format!("{blk}r{i}{j}"));
                el.push(&unit(d, off + i, off + j, iu) + &unit(d, off + j, off + i, iu));
                lab.push(format!("{blk}i{i}{j}"));
            }
        }
    }
    // traceless imaginary diagonal
    for k in 0..d - 1 {
        el.push(&unit(d, k, k, iu) - &unit(d, k + 1, k + 1, iu));
        lab.push(format!("H{k}"));
    }
    AlgebraBasis::new(el, lab).expect("block k basis")
}

/// Off-diagonal blocks [[0, X], [-X', 0]] with X complex n x n.
pub fn block_p_basis<T: Real>(n: usize) -> AlgebraBasis<T> {
    let d = 2 * n;
    let one = Complex::new(T::one(), T::zero());
    let iu = Complex::new(T::zero(), T::one());
    let mut el = Vec::new();
    let mut lab = Vec::new();
    for i in 0..n {
        for j in 0..n {
            el.push(&unit(d, i, n + j, one) - &unit(d, n + j, i, one));
            lab.push(format!("Xr{i}{j}"));
            el.push(&unit(d, i, n + j, iu) + &unit(d, n + j, i, iu));
            lab.push(format!("Xi{i}{j}"));
        }
    }
    AlgebraBasis::new(el, lab).expect("block p basis")
}

/// Cartan subalgebra of the block pair: E_{j,n+j} - E_{n+j,j}.
pub fn block_a_basis<T: Real>(n: usize) -> AlgebraBasis<T> {
    let d = 2 * n;
    let one = Complex::new(T::one(), T::zero());
    let el = (0..n).map(|j| &unit(d, j, n + j, one) - &unit(d, n + j, j, one)).collect();
    let lab = (0..n).map(|j| format!("T{j}")).collect();
    AlgebraBasis::new(el, lab).expect("block a basis")
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = ComplexMatrix<f64>;

    #[test]
    fn dimensions() {
        assert_eq!(su_basis::<f64>(4).len(), 15);
        assert_eq!(so_basis::<f64>(4).len(), 6);
        assert_eq!(block_k_basis::<f64>(2).len(), 7);
        assert_eq!(block_p_basis::<f64>(2).len(), 8);
        assert_eq!(block_k_basis::<f64>(3).len() + block_p_basis::<f64>(3).len(), 35);
    }

    #[test]
    fn coords_roundtrip_and_span_error() {
        let b = su_basis::<f64>(3);
        let c: Vec<f64> = (0..8).map(|i| (i as f64 * 0.37).sin()).collect();
        let x = b.combine(&c);
        let back = b.coords(&x).unwrap();
        for (u, v) in c.iter().zip(&back) {
            assert!((u - v).abs() < 1e-12);
        }
        let so = so_basis::<f64>(3);
        assert!(matches!(so.coords(&x), Err(Error::OutsideSpan(_))));
    }

    #[test]
    fn solve_small_system() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        let x: Vec<f64> = solve(&a, &[3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-14 && (x[1] - 1.4).abs() < 1e-14);
        assert!(solve(&[vec![1.0, 2.0], vec![2.0, 4.0]], &[1.0, 1.0]).is_none());
    }

    #[test]
    fn rejects_hermitian_element() {
        let e = M::identity(2);
        assert!(AlgebraBasis::new(vec![e], vec!["I".into()]).is_err());
    }
}
