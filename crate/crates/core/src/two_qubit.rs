//! Two-qubit canonical decomposition through the magic basis, Weyl-chamber
//! reduction of canonical triples and local diagonalization of couplings.

use crate::error::{Error, Result};
use crate::kak::{check_special_unitary, kak_sun_son};
use crate::kernel::eig::eigh;
use crate::kernel::expm::exp_skew;
use crate::kernel::spin::{i_op, is_op, minus_i, s_op, Axis};
use crate::CMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

/// Width of the a_x = pi face on which a_z is folded to be nonnegative.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Coefficients (a_x, a_y, a_z) of a_x I_xS_x + a_y I_yS_y + a_z I_zS_z.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CanonicalTriple {
    pub a_x: f64,
    pub a_y: f64,
    pub a_z: f64,
}

impl CanonicalTriple {
    pub fn new(a_x: f64, a_y: f64, a_z: f64) -> Self {
        Self { a_x, a_y, a_z }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.a_x, self.a_y, self.a_z]
    }

    pub fn in_chamber(self) -> bool {
        self.a_x >= self.a_y && self.a_y >= self.a_z.abs()
    }

    pub fn dist(self, other: Self) -> f64 {
        let d = [self.a_x - other.a_x, self.a_y - other.a_y, self.a_z - other.a_z];
        d.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Real 3x3 coupling matrix J of H_c = sum J_ab I_a S_b.
pub type CouplingMatrix = [[f64; 3]; 3];

/// W = exp(-i pi I_yS_y) exp(-i pi/2 I_z). Ad_W maps local generators to real
/// skew-symmetric matrices and the I_aS_a to real diagonal ones.
pub fn magic_basis() -> CMatrix {
    let a = exp_skew(&minus_i(&is_op::<f64>(Axis::Y, Axis::Y)).scale_re(PI));
    let b = exp_skew(&minus_i(&i_op::<f64>(Axis::Z)).scale_re(FRAC_PI_2));
    &a * &b
}

/// sum a_k I_k S_k as a Hermitian matrix.
pub fn canonical_hamiltonian(a: [f64; 3]) -> CMatrix {
    let mut h = CMatrix::zeros(4, 4);
    for (k, ax) in Axis::ALL.into_iter().enumerate() {
        h += &is_op::<f64>(ax, ax).scale_re(a[k]);
    }
    h
}

/// exp(-i (a_x I_xS_x + a_y I_yS_y + a_z I_zS_z)).
pub fn canonical_gate(a: [f64; 3]) -> CMatrix {
    exp_skew(&minus_i(&canonical_hamiltonian(a)))
}

/// H_c = sum J_ab I_a S_b.
pub fn coupling_hamiltonian(j: &CouplingMatrix) -> CMatrix {
    let mut h = CMatrix::zeros(4, 4);
    for (r, a) in Axis::ALL.into_iter().enumerate() {
        for (c, b) in Axis::ALL.into_iter().enumerate() {
            h += &is_op::<f64>(a, b).scale_re(j[r][c]);
        }
    }
    h
}

/// Four-vector of the magic-basis image of a canonical Hamiltonian.
pub fn triple_to_lambda(t: CanonicalTriple) -> [f64; 4] {
    let (x, y, z) = (t.a_x, t.a_y, t.a_z);
    [y + z - x, x + y - z, -(x + y + z), x + z - y]
}

/// Inverse of [`triple_to_lambda`] on zero-sum four-vectors.
pub fn lambda_to_triple(l: [f64; 4]) -> Result<CanonicalTriple> {
    let s: f64 = l.iter().sum();
    if s.abs() > 1e-9 * l.iter().fold(1.0f64, |m, v| m.max(v.abs())) {
        return Err(Error::Invalid(format!("four-vector must sum to zero (sum {s:.3e})")));
    }
    Ok(CanonicalTriple::new((l[1] + l[3]) / 2.0, (l[0] + l[1]) / 2.0, (l[0] + l[3]) / 2.0))
}

/// Scales a unitary by det^{-1/4} so that it lies in SU(4).
pub fn to_special_unitary(u: &CMatrix) -> CMatrix {
    let d = u.det();
    u.scale(Complex64::from_polar(1.0, -d.arg() / u.dim() as f64))
}

/// Factorizes a 4x4 matrix as a (x) b. The first nonzero entry of a is made
/// positive real and a is scaled to be unitary when k is. Returns the factors
/// and the residual of the factorization.
pub fn local_factors(k: &CMatrix) -> (CMatrix, CMatrix, f64) {
    // realignment R[(i,j),(k,l)] = K[2i+k, 2j+l] is rank one for products
    let r = |row: usize, col: usize| k[(2 * (row / 2) + col / 2, 2 * (row % 2) + col % 2)];
    let (mut r0, mut c0, mut best) = (0, 0, -1.0);
    for row in 0..4 {
        for col in 0..4 {
            let v = r(row, col).norm();
            if v > best {
                (r0, c0, best) = (row, col, v);
            }
        }
    }
    let mut a = CMatrix::from_fn(2, 2, |i, j| r(2 * i + j, c0));
    let piv = r(r0, c0);
    let mut b = CMatrix::from_fn(2, 2, |i, j| r(r0, 2 * i + j) / piv);
    let s = a.det().norm().sqrt();
    if s > 0.0 {
        a = a.scale_re(1.0 / s);
        b = b.scale_re(s);
    }
    if let Some(z) = a.as_slice().iter().find(|z| z.norm() > 1e-12).copied() {
        let ph = z / z.norm();
        a = a.scale(ph.conj());
        b = b.scale(ph);
    }
    let res = a.kron(&b).dist(k);
    (a, b, res)
}

pub fn is_local(k: &CMatrix, tol: f64) -> bool {
    k.dim() == 4 && k.is_unitary(tol) && local_factors(k).2 <= tol
}

/// A signed permutation g of canonical triples with a local unitary L such
/// that L H(a) L' = H(g a).
#[derive(Clone, Debug)]
pub struct WeylElement {
    /// g as a 3x3 signed permutation matrix, row-major.
    pub matrix: [i8; 9],
    pub local: CMatrix,
}

impl WeylElement {
    pub fn apply(&self, a: [f64; 3]) -> [f64; 3] {
        let g = &self.matrix;
        let mut out = [0.0; 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..3).map(|j| g[3 * i + j] as f64 * a[j]).sum();
        }
        out
    }
}

/// The 24 Weyl elements of the two-qubit problem with their local realizations.
pub struct WeylTable {
    pub elements: Vec<WeylElement>,
    index: HashMap<[i8; 9], usize>,
}

impl WeylTable {
    pub fn get(&self, g: &[i8; 9]) -> &WeylElement {
        &self.elements[self.index[g]]
    }

    pub fn identity(&self) -> &WeylElement {
        self.get(&[1, 0, 0, 0, 1, 0, 0, 0, 1])
    }
}

/// Signature of Ad_L on the single-spin operators: rows of the two 3x3 rotations.
fn action_signature(l: &CMatrix) -> [i8; 18] {
    let mut sig = [0i8; 18];
    let ladj = l.adjoint();
    for (col, a) in Axis::ALL.into_iter().enumerate() {
        let ia = &(l * &i_op::<f64>(a)) * &ladj;
        let sa = &(l * &s_op::<f64>(a)) * &ladj;
        for (row, b) in Axis::ALL.into_iter().enumerate() {
            sig[3 * row + col] = (&i_op::<f64>(b) * &ia).trace().re.round() as i8;
            sig[9 + 3 * row + col] = (&s_op::<f64>(b) * &sa).trace().re.round() as i8;
        }
    }
    sig
}

fn build_table() -> WeylTable {
    let gens: Vec<CMatrix> = Axis::ALL
        .into_iter()
        .flat_map(|a| [minus_i(&i_op::<f64>(a)), minus_i(&s_op::<f64>(a))])
        .map(|x| exp_skew(&x.scale_re(FRAC_PI_2)))
        .collect();
    let mut seen: HashMap<[i8; 18], ()> = HashMap::new();
    let mut queue = VecDeque::new();
    let id = CMatrix::identity(4);
    seen.insert(action_signature(&id), ());
    queue.push_back(id);
    let mut elements = Vec::new();
    let mut index = HashMap::new();
    let probe = [0.37, -1.13, 0.71];
    while let Some(l) = queue.pop_front() {
        let sig = action_signature(&l);
        if let Some(g) = diagonal_action(&sig) {
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(g) {
                let el = WeylElement { matrix: g, local: l.clone() };
                let lhs = l.conjugate(&canonical_hamiltonian(probe));
                let rhs = canonical_hamiltonian(el.apply(probe));
                assert!(lhs.dist(&rhs) < 1e-12, "Weyl conjugator failed verification");
                assert!(is_local(&l, 1e-12));
                e.insert(elements.len());
                elements.push(el);
            }
        }
        for g in &gens {
            let next = g * &l;
            let s = action_signature(&next);
            if seen.insert(s, ()).is_none() {
                queue.push_back(next);
            }
        }
    }
    assert_eq!(elements.len(), 24, "expected 24 Weyl elements");
    WeylTable { elements, index }
}

/// Signed permutation induced on the diagonal couplings, when the action
/// preserves them.
fn diagonal_action(sig: &[i8; 18]) -> Option<[i8; 9]> {
    let mut g = [0i8; 9];
    for col in 0..3 {
        let r1 = (0..3).find(|&r| sig[3 * r + col] != 0)?;
        let r2 = (0..3).find(|&r| sig[9 + 3 * r + col] != 0)?;
        if r1 != r2 {
            return None;
        }
        g[3 * r1 + col] = sig[3 * r1 + col] * sig[9 + 3 * r1 + col];
    }
    Some(g)
}

/// The verified table of Weyl conjugators, built once.
pub fn weyl_table() -> &'static WeylTable {
    static TABLE: OnceLock<WeylTable> = OnceLock::new();
    TABLE.get_or_init(build_table)
}

/// Signed permutation (even number of sign changes) taking a into the chamber
/// a_x >= a_y >= |a_z|.
pub fn chamber_element(a: [f64; 3]) -> [i8; 9] {
    let mut p = [0usize, 1, 2];
    p.sort_by(|&i, &j| a[j].abs().total_cmp(&a[i].abs()).then(i.cmp(&j)));
    let sgn = |v: f64| if v < 0.0 { -1i8 } else { 1i8 };
    let s0 = sgn(a[p[0]]);
    let s1 = sgn(a[p[1]]);
    let s = [s0, s1, s0 * s1];
    let mut g = [0i8; 9];
    for k in 0..3 {
        g[3 * k + p[k]] = s[k];
    }
    g
}

/// Representative of a triple in the chamber, without changing the Hamiltonian
/// class (only the 24 signed permutations are used).
pub fn reduce_hamiltonian_triple(a: [f64; 3]) -> [f64; 3] {
    weyl_table().get(&chamber_element(a)).apply(a)
}

/// U = k1 exp(-i H(triple)) k2 with local k1, k2.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub triple: CanonicalTriple,
    pub k1: CMatrix,
    pub k2: CMatrix,
}

impl Canonical {
    pub fn reconstruct(&self) -> CMatrix {
        &(&self.k1 * &canonical_gate(self.triple.to_array())) * &self.k2
    }
}

fn shift_factor(axis: usize, m: f64) -> CMatrix {
    let ax = Axis::ALL[axis];
    exp_skew(&minus_i(&is_op::<f64>(ax, ax)).scale_re(2.0 * PI * m))
}

/// Canonical triple in the fundamental domain pi >= a_x >= a_y >= |a_z|
/// (a_z >= 0 when a_x = pi) with local factors, for U in SU(4).
pub fn canonical_params(u: &CMatrix) -> Result<Canonical> {
    if u.dim() != 4 {
        return Err(Error::Dimension { expected: 4, got: u.dim() });
    }
    check_special_unitary(u)?;
    let w = magic_basis();
    let wa = w.adjoint();
    let f = kak_sun_son(&w.conjugate(u))?;
    let mu = &f.cartan.values;
    let t = lambda_to_triple([4.0 * mu[0], 4.0 * mu[1], 4.0 * mu[2], 4.0 * mu[3]])?;
    let mut k1 = &(&wa * &f.k_left) * &w;
    let mut k2 = &(&wa * &f.k_right) * &w;
    let mut a = t.to_array();

    // 2 pi shifts along one axis are local up to phase
    for (i, v) in a.iter_mut().enumerate() {
        let mut m = (*v / (2.0 * PI)).round();
        if *v - 2.0 * PI * m <= -PI {
            m -= 1.0;
        }
        if m != 0.0 {
            *v -= 2.0 * PI * m;
            k2 = &shift_factor(i, m) * &k2;
        }
    }
    let table = weyl_table();
    let el = table.get(&chamber_element(a));
    a = el.apply(a);
    k1 = &k1 * &el.local.adjoint();
    k2 = &el.local * &k2;

    if a[0] >= PI - BOUNDARY_TOL && a[2] < 0.0 {
        // (a_x, a_y, a_z) ~ (a_x - 2 pi, a_y, a_z) ~ (2 pi - a_x, a_y, -a_z)
        k2 = &shift_factor(0, 1.0) * &k2;
        a[0] -= 2.0 * PI;
        let flip = table.get(&[-1, 0, 0, 0, 1, 0, 0, 0, -1]);
        a = flip.apply(a);
        k1 = &k1 * &flip.local.adjoint();
        k2 = &flip.local * &k2;
    }
    Ok(Canonical { triple: CanonicalTriple::from_array(a), k1, k2 })
}

/// canonical_params after removing the global phase of a U(4) element.
pub fn canonical_params_unitary(u: &CMatrix) -> Result<Canonical> {
    canonical_params(&to_special_unitary(u))
}

/// K H_c K' = sum a_k I_k S_k with K local and the triple in the chamber.
#[derive(Clone, Debug)]
pub struct CouplingDiagonalization {
    pub k: CMatrix,
    pub triple: CanonicalTriple,
    /// Frobenius norm of K H_c K' minus the canonical Hamiltonian.
    pub residual: f64,
}

pub fn diagonalize_coupling(j: &CouplingMatrix) -> Result<CouplingDiagonalization> {
    if j.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::Invalid("coupling entries must be finite".into()));
    }
    let hc = coupling_hamiltonian(j);
    let w = magic_basis();
    let x = w.conjugate(&hc);
    let xr = CMatrix::from_fn(4, 4, |r, c| Complex64::new(0.5 * (x[(r, c)].re + x[(c, r)].re), 0.0));
    let (nu, th) = eigh(&xr)?;
    let mut th = th.real_part();
    if th.det().re < 0.0 {
        for r in 0..4 {
            th[(r, 0)] = -th[(r, 0)];
        }
    }
    let t = lambda_to_triple([4.0 * nu[0], 4.0 * nu[1], 4.0 * nu[2], 4.0 * nu[3]])?;
    let k0 = &(&w.adjoint() * &th.transpose()) * &w;
    let el = weyl_table().get(&chamber_element(t.to_array()));
    let a = el.apply(t.to_array());
    let k = &el.local * &k0;
    let residual = k.conjugate(&hc).dist(&canonical_hamiltonian(a));
    Ok(CouplingDiagonalization { k, triple: CanonicalTriple::from_array(a), residual })
}

/// Chamber triple of a coupling from the singular values of J, the smallest
/// carrying the sign of det J.
pub fn coupling_triple_from_svd(j: &CouplingMatrix) -> CanonicalTriple {
    let jm = CMatrix::from_fn(3, 3, |r, c| Complex64::new(j[r][c], 0.0));
    let (w, _) = eigh(&(&jm.transpose() * &jm)).expect("symmetric eigensolver");
    let sv: Vec<f64> = w.iter().rev().map(|v| v.max(0.0).sqrt()).collect();
    let det = jm.det().re;
    CanonicalTriple::new(sv[0], sv[1], if det < 0.0 { -sv[2] } else { sv[2] })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn magic_basis_properties() {
        let w = magic_basis();
        assert!(w.is_unitary(1e-12));
        let k = w.conjugate(&minus_i(&i_op::<f64>(Axis::Z)));
        assert!(k.as_slice().iter().all(|z| z.im.abs() < 1e-12));
        assert!(k.dist(&(-k.transpose())) < 1e-12);
        let p = w.conjugate(&minus_i(&is_op::<f64>(Axis::Z, Axis::Z)));
        let s = p.scale(Complex64::new(0.0, 1.0));
        assert!(s.as_slice().iter().all(|z| z.im.abs() < 1e-12));
        assert!(s.dist(&s.transpose()) < 1e-12);
        assert!(s.trace().norm() < 1e-12);
    }

    #[test]
    fn lambda_round_trip() {
        let l = triple_to_lambda(CanonicalTriple::new(1.0, 2.0, 3.0));
        assert_eq!(l, [4.0, 0.0, -6.0, 2.0]);
        assert_eq!(lambda_to_triple(l).unwrap(), CanonicalTriple::new(1.0, 2.0, 3.0));
        assert_eq!(lambda_to_triple([0.0; 4]).unwrap(), CanonicalTriple::new(0.0, 0.0, 0.0));
        assert!(lambda_to_triple([1.0, 0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn magic_image_is_quarter_lambda() {
        let t = CanonicalTriple::new(0.3, -0.7, 1.1);
        let d = magic_basis().conjugate(&canonical_hamiltonian(t.to_array()));
        let l = triple_to_lambda(t);
        for i in 0..4 {
            assert!((d[(i, i)].re - l[i] / 4.0).abs() < 1e-14);
        }
    }

    #[test]
    fn table_has_24_local_elements() {
        let t = weyl_table();
        assert_eq!(t.elements.len(), 24);
        for e in &t.elements {
            assert!(is_local(&e.local, 1e-12));
        }
    }

    #[test]
    fn identity_is_origin() {
        let c = canonical_params(&CMatrix::identity(4)).unwrap();
        assert!(c.triple.dist(CanonicalTriple::new(0.0, 0.0, 0.0)) < 1e-12);
    }

    #[test]
    fn diagonal_coupling_is_canonical() {
        let d = diagonalize_coupling(&[[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]).unwrap();
        assert!(d.triple.dist(CanonicalTriple::new(1.0, 0.0, 0.0)) < 1e-12);
        assert!(d.residual < 1e-12);
    }
}
