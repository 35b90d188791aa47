use super::algebra::AlgebraBasis;
use super::matrix::ComplexMatrix;
use super::scalar::Real;
use num_complex::Complex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn label(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

/// Spin-1/2 operator sigma_a = (Pauli a)/2.
pub fn sigma<T: Real>(a: Axis) -> ComplexMatrix<T> {
    let h = T::lit(0.5);
    let z = T::zero();
    let c = |re: T, im: T| Complex::new(re, im);
    let data = match a {
        Axis::X => vec![c(z, z), c(h, z), c(h, z), c(z, z)],
        Axis::Y => vec![c(z, z), c(z, -h), c(z, h), c(z, z)],
        Axis::Z => vec![c(h, z), c(z, z), c(z, z), c(-h, z)],
    };
    ComplexMatrix::from_vec(2, 2, data)
}

/// I_a = sigma_a (x) 1.
pub fn i_op<T: Real>(a: Axis) -> ComplexMatrix<T> {
    sigma::<T>(a).kron(&ComplexMatrix::identity(2))
}

/// S_b = 1 (x) sigma_b.
pub fn s_op<T: Real>(b: Axis) -> ComplexMatrix<T> {
    ComplexMatrix::identity(2).kron(&sigma::<T>(b))
}

/// I_a S_b = sigma_a (x) sigma_b.
pub fn is_op<T: Real>(a: Axis, b: Axis) -> ComplexMatrix<T> {
    sigma::<T>(a).kron(&sigma::<T>(b))
}

/// -i H for a Hermitian H.
pub fn minus_i<T: Real>(h: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    h.scale(Complex::new(T::zero(), -T::one()))
}

/// The two-spin basis of su(4) with its local and coupling sub-bases.
#[derive(Clone, Debug)]
pub struct SpinOperators<T: Real> {
    pub all: AlgebraBasis<T>,
    /// {-i I_a, -i S_b}
    pub k: AlgebraBasis<T>,
    /// {-i I_a S_b}
    pub p: AlgebraBasis<T>,
}

pub fn spin_operators<T: Real>() -> SpinOperators<T> {
    let mut k_el = Vec::new();
    let mut k_lab = Vec::new();
    for a in Axis::ALL {
        k_el.push(minus_i(&i_op::<T>(a)));
        k_lab.push(format!("-iI{}", a.label()));
    }
    for b in Axis::ALL {
        k_el.push(minus_i(&s_op::<T>(b)));
        k_lab.push(format!("-iS{}", b.label()));
    }
    let mut p_el = Vec::new();
    let mut p_lab = Vec::new();
    for a in Axis::ALL {
        for b in Axis::ALL {
            p_el.push(minus_i(&is_op::<T>(a, b)));
            p_lab.push(format!("-iI{}S{}", a.label(), b.label()));
        }
    }
    let k = AlgebraBasis::new(k_el.clone(), k_lab.clone()).expect("local basis valid");
    let p = AlgebraBasis::new(p_el.clone(), p_lab.clone()).expect("coupling basis valid");
    let all = AlgebraBasis::new(
        k_el.into_iter().chain(p_el).collect(),
        k_lab.into_iter().chain(p_lab).collect(),
    )
    .expect("su(4) basis valid");
    SpinOperators { all, k, p }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = ComplexMatrix<f64>;

    #[test]
    fn iz_and_izsz_diagonals() {
        let iz: M = i_op(Axis::Z);
        assert_eq!(iz, M::from_real_diag(&[0.5, 0.5, -0.5, -0.5]));
        let izsz: M = is_op(Axis::Z, Axis::Z);
        assert_eq!(izsz, M::from_real_diag(&[0.25, -0.25, -0.25, 0.25]));
    }

    #[test]
    fn pauli_commutator() {
        let (x, y, z): (M, M, M) = (sigma(Axis::X), sigma(Axis::Y), sigma(Axis::Z));
        let lhs = x.commutator(&y);
        assert!(lhs.dist(&z.scale(Complex::new(0.0, 1.0))) < 1e-15);
        assert!(y.commutator(&z).dist(&x.scale(Complex::new(0.0, 1.0))) < 1e-15);
    }

    #[test]
    fn basis_sizes() {
        let ops = spin_operators::<f64>();
        assert_eq!(ops.all.len(), 15);
        assert_eq!(ops.k.len(), 6);
        assert_eq!(ops.p.len(), 9);
    }
}
