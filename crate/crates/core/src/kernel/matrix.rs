use super::scalar::{cone, czero, Real};
use num_complex::Complex;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix<T: Real> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![czero(); rows * cols] }
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
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        Self { rows, cols, data }
    }

    /// Builds a square matrix from separate real and imaginary row arrays.
    pub fn from_parts(re: &[Vec<T>], im: &[Vec<T>]) -> Self {
        let rows = re.len();
        let cols = re.first().map_or(0, |r| r.len());
        Self::from_fn(rows, cols, |i, j| Complex::new(re[i][j], im[i][j]))
    }

    pub fn from_real(re: &[Vec<T>]) -> Self {
        let rows = re.len();
        let cols = re.first().map_or(0, |r| r.len());
        Self::from_fn(rows, cols, |i, j| Complex::new(re[i][j], T::zero()))
    }

    pub fn from_diag(d: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn from_real_diag(d: &[T]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = Complex::new(v, T::zero());
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<Complex<T>>]) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix.
    pub fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| f(z)).collect() }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_re(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn re(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)].re).collect()).collect()
    }

    pub fn im(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)].im).collect()).collect()
    }

    /// Drops the imaginary part.
    pub fn real_part(&self) -> Self {
        self.map(|z| Complex::new(z.re, T::zero()))
    }

    pub fn column(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[Complex<T>]) {
        for (i, &z) in v.iter().enumerate() {
            self[(i, j)] = z;
        }
    }

    pub fn row(&self, i: usize) -> Vec<Complex<T>> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn diag(&self) -> Vec<Complex<T>> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    /// Sub-block of rows r0..r1 and columns c0..c1.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)];
            }
        }
    }

    /// Block-diagonal matrix diag(a, b).
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let mut m = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        m.set_block(0, 0, a);
        m.set_block(a.rows, a.cols, b);
        m
    }

    pub fn trace(&self) -> Complex<T> {
        self.diag().into_iter().fold(czero(), |acc, z| acc + z)
    }

    pub fn frobenius(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Real Frobenius inner product Re tr(self' other).
    pub fn inner_re(&self, other: &Self) -> T {
        self.data.iter().zip(&other.data).fold(T::zero(), |acc, (a, b)| acc + (a.conj() * b).re)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Ad_self(x) = self x self'.
    pub fn conjugate(&self, x: &Self) -> Self {
        &(self * x) * &self.adjoint()
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            self[(i / other.rows, j / other.cols)] * other[(i % other.rows, j % other.cols)]
        })
    }

    pub fn dist(&self, other: &Self) -> T {
        (self - other).frobenius()
    }

    /// Determinant via partial-pivot LU.
    pub fn det(&self) -> Complex<T> {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = cone::<T>();
        for k in 0..n {
            let mut p = k;
            for i in k + 1..n {
                if a[(i, k)].norm() > a[(p, k)].norm() {
                    p = i;
                }
            }
            if a[(p, k)].norm() == T::zero() {
                return czero();
            }
            if p != k {
                for j in 0..n {
                    let t = a[(k, j)];
                    a[(k, j)] = a[(p, j)];
                    a[(p, j)] = t;
                }
                det = -det;
            }
            let piv = a[(k, k)];
            det = det * piv;
            for i in k + 1..n {
                let f = a[(i, k)] / piv;
                if f.norm() == T::zero() {
                    continue;
                }
                for j in k..n {
                    let t = a[(k, j)];
                    a[(i, j)] = a[(i, j)] - f * t;
                }
            }
        }
        det
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.is_square() && self.dist(&self.adjoint()) <= tol
    }

    pub fn is_skew_hermitian(&self, tol: T) -> bool {
        self.is_square() && (self + &self.adjoint()).frobenius() <= tol
    }

    pub fn is_unitary(&self, tol: T) -> bool {
        self.is_square() && (&(self.adjoint() * self.clone()) - &Self::identity(self.rows)).frobenius() <= tol
    }

    pub fn is_special(&self, tol: T) -> bool {
        self.is_square() && (self.det() - cone::<T>()).norm() <= tol
    }

    /// Real orthogonal with determinant one.
    pub fn is_special_orthogonal(&self, tol: T) -> bool {
        let im = self.data.iter().fold(T::zero(), |acc, z| acc.max(z.im.abs()));
        im <= tol && self.is_unitary(tol) && self.is_special(tol)
    }

    /// Orthonormalizes the columns in place with modified Gram-Schmidt.
    /// Returns the upper-triangular factor R of self = Q R.
    pub fn gram_schmidt(&mut self) -> Self {
        let (m, n) = (self.rows, self.cols);
        let mut r = Self::zeros(n, n);
        for j in 0..n {
            for _pass in 0..2 {
                for k in 0..j {
                    let mut dot = czero::<T>();
                    for i in 0..m {
                        dot = dot + self[(i, k)].conj() * self[(i, j)];
                    }
                    r[(k, j)] = r[(k, j)] + dot;
                    for i in 0..m {
                        let t = self[(i, k)];
                        self[(i, j)] = self[(i, j)] - dot * t;
                    }
                }
            }
            let nrm = (0..m).fold(T::zero(), |acc, i| acc + self[(i, j)].norm_sqr()).sqrt();
            r[(j, j)] = Complex::new(nrm, T::zero());
            if nrm > T::zero() {
                for i in 0..m {
                    self[(i, j)] = self[(i, j)] / nrm;
                }
            }
        }
        r
    }

    /// Closest unitary in the sense of repeated Gram-Schmidt on columns.
    pub fn reunitarize(&self) -> Self {
        let mut q = self.clone();
        q.gram_schmidt();
        q
    }
}

impl<T: Real> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Mul<&ComplexMatrix<T>> for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn mul(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in orow.iter_mut().zip(row) {
                    *o = *o + a * b;
                }
            }
        }
        out
    }
}

impl<T: Real> Mul for ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn mul(self, rhs: ComplexMatrix<T>) -> ComplexMatrix<T> {
        &self * &rhs
    }
}

impl<T: Real> Mul<&ComplexMatrix<T>> for ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn mul(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        &self * rhs
    }
}

impl<T: Real> Mul<ComplexMatrix<T>> for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn mul(self, rhs: ComplexMatrix<T>) -> ComplexMatrix<T> {
        self * &rhs
    }
}

/// Matrix-vector product.
impl<T: Real> Mul<&[Complex<T>]> for &ComplexMatrix<T> {
    type Output = Vec<Complex<T>>;
    fn mul(self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(czero(), |acc, j| acc + self[(i, j)] * v[j]))
            .collect()
    }
}

macro_rules! elementwise {
    ($tr:ident, $f:ident, $atr:ident, $af:ident, $op:tt) => {
        impl<T: Real> $tr<&ComplexMatrix<T>> for &ComplexMatrix<T> {
            type Output = ComplexMatrix<T>;
            fn $f(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
                assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
                ComplexMatrix {
                    rows: self.rows,
                    cols: self.cols,
                    data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a $op b).collect(),
                }
            }
        }
        impl<T: Real> $tr for ComplexMatrix<T> {
            type Output = ComplexMatrix<T>;
            fn $f(self, rhs: ComplexMatrix<T>) -> ComplexMatrix<T> {
                &self $op &rhs
            }
        }
        impl<T: Real> $tr<&ComplexMatrix<T>> for ComplexMatrix<T> {
            type Output = ComplexMatrix<T>;
            fn $f(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
                &self $op rhs
            }
        }
        impl<T: Real> $atr<&ComplexMatrix<T>> for ComplexMatrix<T> {
            fn $af(&mut self, rhs: &ComplexMatrix<T>) {
                assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
                for (a, &b) in self.data.iter_mut().zip(&rhs.data) {
                    *a = *a $op b;
                }
            }
        }
    };
}

elementwise!(Add, add, AddAssign, add_assign, +);
elementwise!(Sub, sub, SubAssign, sub_assign, -);

impl<T: Real> Neg for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn neg(self) -> ComplexMatrix<T> {
        self.map(|z| -z)
    }
}

impl<T: Real> Neg for ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn neg(self) -> ComplexMatrix<T> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = ComplexMatrix<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn det_of_triangular_and_permuted() {
        let m = M::from_vec(3, 3, vec![
            c(0.0, 0.0), c(2.0, 0.0), c(0.0, 0.0),
            c(1.0, 0.0), c(5.0, 1.0), c(0.0, 0.0),
            c(0.0, 0.0), c(0.0, 0.0), c(0.0, 3.0),
        ]);
        let d = m.det();
        assert!((d - c(0.0, -6.0)).norm() < 1e-14);
    }

    #[test]
    fn kron_of_identities() {
        let a = M::identity(2);
        let k = a.kron(&M::identity(3));
        assert_eq!(k, M::identity(6));
    }

    #[test]
    fn gram_schmidt_gives_unitary() {
        let mut m = M::from_fn(4, 4, |i, j| c((i * 3 + j) as f64 + 0.5, (i as f64 - j as f64).sin()));
        m[(0, 0)] = c(7.0, -1.0);
        let r = m.clone();
        let mut q = m;
        let rr = q.gram_schmidt();
        assert!(q.is_unitary(1e-12));
        assert!((&q * &rr).dist(&r) < 1e-10);
    }

    #[test]
    fn generic_over_f32() {
        let m = ComplexMatrix::<f32>::identity(3);
        assert!(m.is_unitary(1e-6));
        assert!((m.det() - Complex::new(1.0f32, 0.0)).norm() < 1e-6);
    }
}
