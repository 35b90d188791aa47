//! Restricted roots of a Cartan pair g = k + p with a maximal abelian a in p,
//! computed from the eigenstructure of ad_a^2 on p.

use crate::error::{Error, Result};
use crate::kernel::algebra::{
    block_a_basis, block_k_basis, block_p_basis, diagonal_traceless_basis, isym_basis, so_basis, solve,
};
use crate::kernel::eig::eigh;
use crate::kernel::spin::{i_op, is_op, minus_i, s_op, spin_operators, Axis};
use crate::kernel::killing_form;
use crate::random::{random_vec, rng};
use crate::{Basis, CMatrix};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const BRACKET_TOL: f64 = 1e-10;
const CLUSTER_TOL: f64 = 1e-8;
const RELATION_TOL: f64 = 1e-8;
/// Minimum |root value| of a regular element.
pub const REGULAR_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InnerProduct {
    /// Negated Killing form of g.
    Killing,
    /// Re tr(x' y).
    Standard,
}

#[derive(Clone, Debug)]
pub struct CartanPair {
    pub name: String,
    pub g: Basis,
    pub k: Basis,
    pub p: Basis,
    pub a: Basis,
    pub inner: InnerProduct,
    /// Functional fixing the positive roots, in a-coordinates. When absent a
    /// regular element is chosen.
    pub ordering: Option<Vec<f64>>,
}

impl CartanPair {
    /// Validates the bracket relations and that a is an abelian subspace of p.
    pub fn new(name: &str, k: Basis, p: Basis, a: Basis, inner: InnerProduct) -> Result<Self> {
        let tol = BRACKET_TOL;
        for x in a.elements() {
            if !p.contains(x, tol) {
                return Err(Error::Invalid(format!("{name}: a is not contained in p")));
            }
            for y in a.elements() {
                if x.commutator(y).frobenius() > tol {
                    return Err(Error::Invalid(format!("{name}: a is not abelian")));
                }
            }
        }
        let checks: [(&Basis, &Basis, &Basis, &str); 3] =
            [(&k, &k, &k, "[k,k] in k"), (&k, &p, &p, "[k,p] in p"), (&p, &p, &k, "[p,p] in k")];
        for (l, r, target, what) in checks {
            for x in l.elements() {
                for y in r.elements() {
                    if !target.contains(&x.commutator(y), tol) {
                        return Err(Error::Invalid(format!("{name}: bracket relation {what} fails")));
                    }
                }
            }
        }
        let g = k.join(&p)?;
        Ok(Self { name: name.to_string(), g, k, p, a, inner, ordering: None })
    }

    pub fn with_ordering(mut self, ordering: Vec<f64>) -> Self {
        self.ordering = Some(ordering);
        self
    }

    pub fn inner(&self, x: &CMatrix, y: &CMatrix) -> Result<f64> {
        match self.inner {
            InnerProduct::Standard => Ok(x.inner_re(y)),
            InnerProduct::Killing => Ok(-killing_form(x, y, &self.g)?),
        }
    }

    /// Gram matrix of the a-basis under the pair's inner product.
    pub fn a_gram(&self) -> Result<Vec<Vec<f64>>> {
        let el = self.a.elements();
        let mut g = vec![vec![0.0; el.len()]; el.len()];
        for i in 0..el.len() {
            for j in i..el.len() {
                let v = self.inner(&el[i], &el[j])?;
                g[i][j] = v;
                g[j][i] = v;
            }
        }
        Ok(g)
    }

    /// Two spins: k local, p = {-i I_a S_b}, a = {-i I_a S_a}.
    pub fn two_spin() -> Self {
        let ops = spin_operators::<f64>();
        let a = Basis::new(
            Axis::ALL.iter().map(|&x| minus_i(&is_op(x, x))).collect(),
            Axis::ALL.iter().map(|x| format!("-iI{0}S{0}", x.label())).collect(),
        )
        .expect("two-spin a");
        Self::new("twospin", ops.k, ops.p, a, InnerProduct::Killing)
            .expect("two-spin pair")
            .with_ordering(vec![1.0, 2.0, 3.0])
    }

    /// Electron-nuclear pair: p = -i{I_x, I_y, I_x S_b, I_y S_b},
    /// k = -i{I_z, S_b, I_z S_b}, a = {-i I_x, -2i I_x S_z}.
    pub fn epr() -> Self {
        let mut k_el = vec![minus_i(&i_op::<f64>(Axis::Z))];
        let mut k_lab = vec!["-iIz".to_string()];
        for b in Axis::ALL {
            k_el.push(minus_i(&s_op(b)));
            k_lab.push(format!("-iS{}", b.label()));
        }
        for b in Axis::ALL {
            k_el.push(minus_i(&is_op(Axis::Z, b)));
            k_lab.push(format!("-iIzS{}", b.label()));
        }
        let mut p_el = vec![minus_i(&i_op::<f64>(Axis::X)), minus_i(&i_op::<f64>(Axis::Y))];
        let mut p_lab = vec!["-iIx".to_string(), "-iIy".to_string()];
        for a in [Axis::X, Axis::Y] {
            for b in Axis::ALL {
                p_el.push(minus_i(&is_op(a, b)));
                p_lab.push(format!("-iI{}S{}", a.label(), b.label()));
            }
        }
        let a = Basis::new(
            vec![minus_i(&i_op::<f64>(Axis::X)), minus_i(&is_op::<f64>(Axis::X, Axis::Z)).scale_re(2.0)],
            vec!["-iIx".into(), "-2iIxSz".into()],
        )
        .expect("epr a");
        Self::new(
            "epr",
            Basis::new(k_el, k_lab).expect("epr k"),
            Basis::new(p_el, p_lab).expect("epr p"),
            a,
            InnerProduct::Killing,
        )
        .expect("epr pair")
        .with_ordering(vec![2.0, 1.0])
    }

    /// su(n) = so(n) + i sym(n) with diagonal a.
    pub fn sun_son(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid("sun-son pair needs n >= 2".into()));
        }
        Self::new(&format!("sun-son:{n}"), so_basis(n), isym_basis(n), diagonal_traceless_basis(n), InnerProduct::Standard)
    }

    /// su(2n) with block-diagonal k and off-diagonal p.
    pub fn su2n(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::Invalid("su2n pair needs n >= 1".into()));
        }
        Self::new(&format!("su2n:{n}"), block_k_basis(n), block_p_basis(n), block_a_basis(n), InnerProduct::Standard)
    }

    /// Parses twospin | epr | sun-son:<n> | su2n:<n>.
    pub fn by_name(s: &str) -> Result<Self> {
        let parse_n = |t: &str| t.parse::<usize>().map_err(|_| Error::Invalid(format!("bad size in '{s}'")));
        match s.split_once(':') {
            None if s == "twospin" => Ok(Self::two_spin()),
            None if s == "epr" => Ok(Self::epr()),
            Some(("sun-son", n)) => Self::sun_son(parse_n(n)?),
            Some(("su2n", n)) => Self::su2n(parse_n(n)?),
            _ => Err(Error::Invalid(format!("unknown pair '{s}'"))),
        }
    }
}

/// A positive restricted root with its paired root vectors.
#[derive(Clone, Debug)]
pub struct RootDatum {
    /// Orthonormal Y_j in p (Re tr(x' y)).
    pub p_parts: Vec<CMatrix>,
    /// X_j = [a, Y_j] / value(a) in k.
    pub k_parts: Vec<CMatrix>,
    /// Values on the a-basis elements.
    pub value_fn: Vec<f64>,
    /// a-coordinates of the vector representing the root under the inner product.
    pub rep: Vec<f64>,
    pub multiplicity: usize,
}

impl RootDatum {
    pub fn value(&self, coords: &[f64]) -> f64 {
        self.value_fn.iter().zip(coords).map(|(f, c)| f * c).sum()
    }

    fn negate(&mut self) {
        self.value_fn.iter_mut().for_each(|v| *v = -*v);
        self.rep.iter_mut().for_each(|v| *v = -*v);
        self.k_parts.iter_mut().for_each(|x| *x = -&*x);
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub roots: Vec<RootDatum>,
    /// Centralizer of a in k.
    pub k0: Vec<CMatrix>,
    /// Gram matrix of the a-basis.
    pub gram: Vec<Vec<f64>>,
    /// Functional defining positivity, in a-coordinates.
    pub ordering: Vec<f64>,
}

fn orthonormal_combination(basis: &[CMatrix], v: &CMatrix, col: usize) -> CMatrix {
    let mut out = CMatrix::zeros(basis[0].rows(), basis[0].cols());
    for (j, b) in basis.iter().enumerate() {
        let w = v[(j, col)].re;
        if w != 0.0 {
            out += &b.scale_re(w);
        }
    }
    out
}

/// Eigen-decomposition of -ad_x^2 on an orthonormal basis.
fn ad_squared(x: &CMatrix, basis: &[CMatrix]) -> Result<(Vec<f64>, CMatrix)> {
    let z: Vec<CMatrix> = basis.iter().map(|y| x.commutator(y)).collect();
    let n = basis.len();
    let m = CMatrix::from_fn(n, n, |i, j| Complex64::new(0.5 * (z[i].inner_re(&z[j]) + z[j].inner_re(&z[i])), 0.0));
    let (w, v) = eigh(&m)?;
    Ok((w, v.real_part()))
}

/// Groups ascending values whose neighbours differ by at most tol.
fn clusters(w: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..w.len() {
        match out.last_mut() {
            Some(c) if w[i] - w[*c.last().unwrap()] <= tol => c.push(i),
            _ => out.push(vec![i]),
        }
    }
    out
}

fn try_roots(pair: &CartanPair, p_on: &[CMatrix], c: &[f64]) -> Result<(Vec<RootDatum>, f64)> {
    let ag = pair.a.combine(c);
    let (w, v) = ad_squared(&ag, p_on)?;
    let scale = w.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
    let tol = CLUSTER_TOL * scale;
    let mut roots = Vec::new();
    let mut zero_dim = 0;
    for cl in clusters(&w, tol) {
        let mu = cl.iter().map(|&i| w[i]).sum::<f64>() / cl.len() as f64;
        if mu <= tol {
            zero_dim += cl.len();
            continue;
        }
        let lam = mu.sqrt();
        let ys: Vec<CMatrix> = cl.iter().map(|&i| orthonormal_combination(p_on, &v, i)).collect();
        let xs: Vec<CMatrix> = ys.iter().map(|y| ag.commutator(y).scale_re(1.0 / lam)).collect();
        let value_fn: Vec<f64> = pair.a.elements().iter().map(|ai| ai.commutator(&ys[0]).inner_re(&xs[0])).collect();
        for (y, x) in ys.iter().zip(&xs) {
            for (ai, &vi) in pair.a.elements().iter().zip(&value_fn) {
                let t = RELATION_TOL * (1.0 + ai.frobenius());
                if (&ai.commutator(y) - &x.scale_re(vi)).frobenius() > t
                    || (&ai.commutator(x) + &y.scale_re(vi)).frobenius() > t
                {
                    return Err(Error::Roots("eigenspace not shared across the a-basis".into()));
                }
            }
        }
        roots.push(RootDatum { multiplicity: ys.len(), p_parts: ys, k_parts: xs, value_fn, rep: Vec::new() });
    }
    if zero_dim != pair.a.len() {
        return Err(Error::Roots(format!(
            "centralizer of the generic element in p has dimension {zero_dim}, expected {}",
            pair.a.len()
        )));
    }
    Ok((roots, tol))
}

/// Positive roots, multiplicities and the zero-root space of the pair.
pub fn compute_roots(pair: &CartanPair) -> Result<RootSystem> {
    let p_on: Vec<CMatrix> = pair.p.orthonormalized().elements().to_vec();
    let k_on: Vec<CMatrix> = pair.k.orthonormalized().elements().to_vec();
    let dim_a = pair.a.len();
    let mut last_err = Error::Roots("no attempt made".into());
    for attempt in 0..8u64 {
        let mut r = rng(0x0a11_5eed + attempt);
        let c = random_vec(dim_a, &mut r);
        let (mut roots, _) = match try_roots(pair, &p_on, &c) {
            Ok(v) => v,
            Err(e) => {
                last_err = e;
                continue;
            }
        };
        let gram = pair.a_gram()?;
        for rt in &mut roots {
            rt.rep = solve(&gram, &rt.value_fn).ok_or_else(|| Error::Roots("singular Gram matrix on a".into()))?;
        }
        let ordering = match &pair.ordering {
            Some(o) => o.clone(),
            None => search_regular(&roots, &gram)?,
        };
        for rt in &mut roots {
            let v = rt.value(&ordering);
            if v.abs() < REGULAR_TOL {
                return Err(Error::Roots("ordering functional is not regular".into()));
            }
            if v < 0.0 {
                rt.negate();
            }
        }
        roots.sort_by(|x, y| x.value(&ordering).total_cmp(&y.value(&ordering)));
        let ag = pair.a.combine(&c);
        let (wk, vk) = ad_squared(&ag, &k_on)?;
        let scale = wk.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
        let k0 = (0..wk.len())
            .filter(|&i| wk[i] <= CLUSTER_TOL * scale)
            .map(|i| orthonormal_combination(&k_on, &vk, i))
            .collect();
        return Ok(RootSystem { roots, k0, gram, ordering });
    }
    Err(last_err)
}

fn gram_inner(g: &[Vec<f64>], u: &[f64], v: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..u.len() {
        for j in 0..v.len() {
            s += u[i] * g[i][j] * v[j];
        }
    }
    s
}

/// Deterministic search for the a-vector maximizing the smallest |root value|
/// relative to its norm.
fn search_regular(roots: &[RootDatum], gram: &[Vec<f64>]) -> Result<Vec<f64>> {
    let mut r = rng(0x00c0_ffee);
    let dim = gram.len();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for _ in 0..256 {
        let v = random_vec(dim, &mut r);
        let nrm = gram_inner(gram, &v, &v).sqrt();
        let v: Vec<f64> = v.iter().map(|x| x / nrm).collect();
        let m = roots.iter().map(|rt| rt.value(&v).abs()).fold(f64::INFINITY, f64::min);
        if best.as_ref().is_none_or(|(b, _)| m > *b) {
            best = Some((m, v));
        }
    }
    match best {
        Some((m, v)) if m >= REGULAR_TOL => Ok(v),
        _ => Err(Error::Roots("no regular element found".into())),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CartanIntegers {
    /// n_ij = 2 <r_i, r_j> / <r_j, r_j>.
    pub matrix: Vec<Vec<i64>>,
    /// 4 cos^2 of the angle between roots i and j.
    pub four_cos2: Vec<Vec<i64>>,
    /// Largest distance of a computed Cartan number from its rounded value.
    pub max_deviation: f64,
}

impl RootSystem {
    pub fn inner(&self, u: &[f64], v: &[f64]) -> f64 {
        gram_inner(&self.gram, u, v)
    }

    pub fn is_regular(&self, v: &[f64]) -> bool {
        self.roots.iter().all(|r| r.value(v).abs() >= REGULAR_TOL)
    }

    /// Point of a with every root value bounded away from zero.
    pub fn regular_element(&self) -> Result<Vec<f64>> {
        let v = search_regular(&self.roots, &self.gram)?;
        debug_assert!(self.is_regular(&v));
        Ok(v)
    }

    /// Reflection of v in the hyperplane orthogonal to root i.
    pub fn reflect(&self, v: &[f64], i: usize) -> Result<Vec<f64>> {
        let m = &self.roots[i].rep;
        let mm = self.inner(m, m);
        if !(mm > 0.0) {
            return Err(Error::Roots("zero root representative".into()));
        }
        let f = 2.0 * self.roots[i].value(v) / mm;
        Ok(v.iter().zip(m).map(|(z, mi)| z - f * mi).collect())
    }

    /// Reflects in the most negative positive root until none is negative.
    /// Returns the reduced vector and the indices of the roots used.
    pub fn reduce_to_chamber(&self, v: &[f64]) -> (Vec<f64>, Vec<usize>) {
        let mut z = v.to_vec();
        let mut word = Vec::new();
        loop {
            let worst = (0..self.roots.len())
                .map(|i| (i, self.roots[i].value(&z)))
                .min_by(|a, b| a.1.total_cmp(&b.1));
            match worst {
                Some((i, val)) if val < -1e-12 => {
                    z = self.reflect(&z, i).expect("positive roots are nonzero");
                    word.push(i);
                }
                _ => return (z, word),
            }
        }
    }

    /// Orbit of v under the group generated by the root reflections.
    pub fn reflection_closure(&self, v: &[f64], limit: usize) -> Vec<Vec<f64>> {
        let scale = self.inner(v, v).sqrt().max(1.0);
        let close = |a: &[f64], b: &[f64]| {
            let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
            self.inner(&d, &d).sqrt() <= 1e-9 * scale
        };
        let mut orbit = vec![v.to_vec()];
        let mut head = 0;
        while head < orbit.len() && orbit.len() <= limit {
            let cur = orbit[head].clone();
            head += 1;
            for i in 0..self.roots.len() {
                let w = self.reflect(&cur, i).expect("positive roots are nonzero");
                if !orbit.iter().any(|o| close(o, &w)) {
                    orbit.push(w);
                }
            }
        }
        orbit
    }

    pub fn cartan_integers(&self) -> Result<CartanIntegers> {
        let n = self.roots.len();
        let mut matrix = vec![vec![0i64; n]; n];
        let mut four_cos2 = vec![vec![4i64; n]; n];
        let mut dev = 0.0f64;
        let mut raw = vec![vec![0.0f64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let (ri, rj) = (&self.roots[i].rep, &self.roots[j].rep);
                raw[i][j] = 2.0 * self.inner(ri, rj) / self.inner(rj, rj);
                let r = raw[i][j].round();
                dev = dev.max((raw[i][j] - r).abs());
                matrix[i][j] = r as i64;
            }
        }
        if dev > 1e-6 {
            return Err(Error::Roots(format!("non-integral Cartan number (deviation {dev:.3e})")));
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let f = (raw[i][j] * raw[j][i]).round() as i64;
                    if !(0..=3).contains(&f) {
                        return Err(Error::Roots(format!("4cos^2 = {f} between roots {i} and {j}")));
                    }
                    four_cos2[i][j] = f;
                }
            }
        }
        Ok(CartanIntegers { matrix, four_cos2, max_deviation: dev })
    }

    /// Indices of positive roots that are not the sum of two positive roots.
    pub fn fundamental_roots(&self) -> Result<Vec<usize>> {
        let n = self.roots.len();
        let vf: Vec<&[f64]> = self.roots.iter().map(|r| r.value_fn.as_slice()).collect();
        let is_sum = |i: usize| {
            (0..n).any(|j| {
                (j..n).any(|k| vf[i].iter().zip(vf[j]).zip(vf[k]).all(|((a, b), c)| (a - b - c).abs() <= 1e-8))
            })
        };
        let fund: Vec<usize> = (0..n).filter(|&i| !is_sum(i)).collect();
        for (x, &i) in fund.iter().enumerate() {
            for &j in &fund[x + 1..] {
                if self.inner(&self.roots[i].rep, &self.roots[j].rep) > 1e-10 {
                    return Err(Error::Roots("fundamental roots at an acute angle".into()));
                }
            }
        }
        let g: Vec<Vec<f64>> = fund
            .iter()
            .map(|&i| fund.iter().map(|&j| self.inner(&self.roots[i].rep, &self.roots[j].rep)).collect())
            .collect();
        if fund.len() != self.gram.len() || solve(&g, &vec![0.0; fund.len()]).is_none() {
            return Err(Error::Roots(format!(
                "{} fundamental roots found for rank {}",
                fund.len(),
                self.gram.len()
            )));
        }
        Ok(fund)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invalid_pairs_rejected() {
        let ops = spin_operators::<f64>();
        let bad_a = Basis::unlabeled(vec![minus_i(&is_op(Axis::X, Axis::X)), minus_i(&is_op(Axis::X, Axis::Y))]).unwrap();
        assert!(CartanPair::new("bad", ops.k.clone(), ops.p.clone(), bad_a, InnerProduct::Standard).is_err());
        assert!(CartanPair::new("swap", ops.p.clone(), ops.k.clone(), ops.k, InnerProduct::Standard).is_err());
        assert!(CartanPair::by_name("nope").is_err());
    }

    #[test]
    fn clusters_group_neighbours() {
        assert_eq!(clusters(&[0.0, 0.0, 1.0, 1.0 + 1e-12, 2.0], 1e-9), vec![vec![0, 1], vec![2, 3], vec![4]]);
    }
}
