//! Piecewise-constant simulation of dP/dt = Ad_K(X_d) P, reachable-set
//! checks of the simulated endpoints, the second-order reduction of a
//! perturbed Cartan exponential, and the projection flow of coordinates.

use crate::error::{Error, Result};
use crate::kak::{self, cartan_exp, in_subgroup, Family};
use crate::kernel::algebra::{block_k_basis, block_p_basis, isym_basis, so_basis};
use crate::kernel::expm::{exp_skew, logm_unitary};
use crate::kernel::spin::{is_op, spin_operators, Axis};
use crate::random::{haar_so, random_block, random_local, Rng64};
use crate::roots::{CartanPair, RootSystem};
use crate::two_qubit::{canonical_gate, canonical_params, is_local, weyl_table};
use crate::weyl::certificate::hull_slack;
use crate::weyl::{generate_orbit, group_elements, majorized, MajorizationCert, OrbitType};
use crate::{Basis, CMatrix};
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::str::FromStr;

/// Minimum distance of a root value from pi Z for the coordinate chart.
pub const CHART_TOL: f64 = 1e-6;
/// Root pairs with |sin| below this are left out of the conjugation solve.
pub const SIN_TOL: f64 = 1e-8;
/// Convergence threshold on |b| + |c|.
pub const REDUCE_TOL: f64 = 1e-12;

/// A Cartan pair with explicit coordinates on a.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Model {
    /// SU(n) with K = SO(n); coordinates lambda with exp(-i diag lambda), sum 0.
    SunSon(usize),
    /// SU(2n) with block-diagonal K; coordinates theta.
    Su2n(usize),
    /// SU(4) with local K; canonical triple.
    TwoQubit,
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_n = |t: &str| t.parse::<usize>().map_err(|_| Error::Invalid(format!("bad size in '{s}'")));
        match s.split_once(':') {
            Some(("sun-son", n)) => {
                let n = parse_n(n)?;
                if n < 2 {
                    return Err(Error::Invalid("sun-son needs n >= 2".into()));
                }
                Ok(Self::SunSon(n))
            }
            Some(("su2n", n)) => {
                let n = parse_n(n)?;
                if n < 1 {
                    return Err(Error::Invalid("su2n needs n >= 1".into()));
                }
                Ok(Self::Su2n(n))
            }
            None if s == "two-qubit" => Ok(Self::TwoQubit),
            _ => Err(Error::Invalid(format!("unknown family '{s}'"))),
        }
    }
}

impl Model {
    pub fn matrix_dim(self) -> usize {
        match self {
            Self::SunSon(n) => n,
            Self::Su2n(n) => 2 * n,
            Self::TwoQubit => 4,
        }
    }

    /// Number of Cartan coordinates.
    pub fn rank(self) -> usize {
        match self {
            Self::SunSon(n) | Self::Su2n(n) => n,
            Self::TwoQubit => 3,
        }
    }

    pub fn orbit_type(self) -> OrbitType {
        match self {
            Self::SunSon(_) => OrbitType::Sn,
            Self::Su2n(_) => OrbitType::Bn,
            Self::TwoQubit => OrbitType::TwoQubit,
        }
    }

    /// Period of the coordinate lattice and whether shifts must sum to zero.
    fn lattice(self) -> (f64, bool) {
        match self {
            Self::SunSon(_) => (PI, true),
            Self::Su2n(_) => (PI, false),
            Self::TwoQubit => (2.0 * PI, false),
        }
    }

    pub fn p_basis(self) -> Basis {
        match self {
            Self::SunSon(n) => isym_basis(n),
            Self::Su2n(n) => block_p_basis(n),
            Self::TwoQubit => spin_operators().p,
        }
    }

    pub fn k_basis(self) -> Basis {
        match self {
            Self::SunSon(n) => so_basis(n),
            Self::Su2n(n) => block_k_basis(n),
            Self::TwoQubit => spin_operators().k,
        }
    }

    /// Cartan pair whose a-basis matches the model coordinates, where one
    /// exists (the SU(n)/SO(n) coordinates are overcomplete).
    pub fn pair(self) -> Result<CartanPair> {
        match self {
            Self::SunSon(n) => CartanPair::sun_son(n),
            Self::Su2n(n) => CartanPair::su2n(n),
            Self::TwoQubit => Ok(CartanPair::two_spin()),
        }
    }

    fn check_coords(self, c: &[f64]) -> Result<()> {
        if c.len() != self.rank() {
            return Err(Error::Dimension { expected: self.rank(), got: c.len() });
        }
        if c.iter().any(|v| !v.is_finite()) {
            return Err(Error::Invalid("coordinates must be finite".into()));
        }
        if let Self::SunSon(_) = self {
            let s: f64 = c.iter().sum();
            if s.abs() > 1e-9 {
                return Err(Error::Invalid(format!("sun-son coordinates must sum to zero (sum {s:.3e})")));
            }
        }
        Ok(())
    }

    /// The element of a with the given coordinates.
    pub fn embed(self, c: &[f64]) -> Result<CMatrix> {
        self.check_coords(c)?;
        Ok(match self {
            Self::SunSon(_) => kak::embed(Family::SunSon, c),
            Self::Su2n(_) => kak::embed(Family::Su2nBlock, c),
            Self::TwoQubit => crate::kernel::spin::minus_i(&crate::two_qubit::canonical_hamiltonian([c[0], c[1], c[2]])),
        })
    }

    /// exp(embed(c)) in closed form.
    pub fn exp_cartan(self, c: &[f64]) -> CMatrix {
        match self {
            Self::SunSon(_) => cartan_exp(Family::SunSon, c),
            Self::Su2n(_) => cartan_exp(Family::Su2nBlock, c),
            Self::TwoQubit => canonical_gate([c[0], c[1], c[2]]),
        }
    }

    /// KAK decomposition (k1, coordinates, k2).
    pub fn decompose(self, u: &CMatrix) -> Result<(CMatrix, Vec<f64>, CMatrix)> {
        if u.dim() != self.matrix_dim() {
            return Err(Error::Dimension { expected: self.matrix_dim(), got: u.dim() });
        }
        match self {
            Self::SunSon(_) => {
                let f = kak::kak_sun_son(u)?;
                Ok((f.k_left, f.cartan.values, f.k_right))
            }
            Self::Su2n(_) => {
                let f = kak::kak_su2n(u)?;
                Ok((f.k_left, f.cartan.values, f.k_right))
            }
            Self::TwoQubit => {
                let c = canonical_params(u)?;
                Ok((c.k1, c.triple.to_array().to_vec(), c.k2))
            }
        }
    }

    /// Orthogonal projection of an element of p onto a, in coordinates.
    pub fn project(self, x: &CMatrix) -> Vec<f64> {
        match self {
            Self::SunSon(n) => {
                let d: Vec<f64> = (0..n).map(|j| -x[(j, j)].im).collect();
                let m = d.iter().sum::<f64>() / n as f64;
                d.iter().map(|v| v - m).collect()
            }
            Self::Su2n(n) => (0..n).map(|j| 0.5 * (x[(j, n + j)].re - x[(n + j, j)].re)).collect(),
            Self::TwoQubit => {
                let h = x.scale(Complex64::new(0.0, 1.0));
                Axis::ALL.iter().map(|&a| 4.0 * (&h * &is_op::<f64>(a, a)).trace().re).collect()
            }
        }
    }

    pub fn in_subgroup(self, k: &CMatrix, tol: f64) -> bool {
        match self {
            Self::SunSon(_) => in_subgroup(k, Family::SunSon, tol),
            Self::Su2n(_) => in_subgroup(k, Family::Su2nBlock, tol),
            Self::TwoQubit => is_local(k, tol),
        }
    }

    pub fn random_subgroup(self, rng: &mut Rng64) -> CMatrix {
        match self {
            Self::SunSon(n) => haar_so(n, rng),
            Self::Su2n(n) => random_block(n, rng),
            Self::TwoQubit => random_local(rng),
        }
    }

    /// Roots as functionals on the model coordinates.
    pub fn root_functionals(self) -> Vec<Vec<f64>> {
        let r = self.rank();
        let unit = |i: usize, s: f64| {
            let mut v = vec![0.0; r];
            v[i] = s;
            v
        };
        let mut out = Vec::new();
        match self {
            Self::SunSon(_) => {
                for i in 0..r {
                    for j in i + 1..r {
                        let mut v = unit(i, 1.0);
                        v[j] = -1.0;
                        out.push(v);
                    }
                }
            }
            Self::Su2n(_) => {
                for i in 0..r {
                    out.push(unit(i, 2.0));
                    for j in i + 1..r {
                        for s in [1.0, -1.0] {
                            let mut v = unit(i, 1.0);
                            v[j] = s;
                            out.push(v);
                        }
                    }
                }
            }
            Self::TwoQubit => {
                for i in 0..3 {
                    for j in i + 1..3 {
                        for s in [1.0, -1.0] {
                            let mut v = unit(j, 0.5);
                            v[i] = 0.5 * s;
                            out.push(v);
                        }
                    }
                }
            }
        }
        out
    }

    /// Smallest distance of a root value at c from pi Z.
    pub fn min_root_distance(self, c: &[f64]) -> f64 {
        self.root_functionals()
            .iter()
            .map(|f| {
                let v: f64 = f.iter().zip(c).map(|(a, b)| a * b).sum();
                (v - PI * (v / PI).round()).abs()
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Lattice translates of c (coordinates of the same double coset) within
    /// max-norm radius r.
    pub fn representatives(self, c: &[f64], r: f64) -> Vec<Vec<f64>> {
        let (period, zero_sum) = self.lattice();
        let ranges: Vec<(i64, i64)> = c
            .iter()
            .map(|&x| (((-r - x) / period).ceil() as i64, ((r - x) / period).floor() as i64))
            .collect();
        let mut out = Vec::new();
        let mut cur = vec![0i64; c.len()];
        fn rec(
            i: usize,
            ranges: &[(i64, i64)],
            cur: &mut Vec<i64>,
            out: &mut Vec<Vec<f64>>,
            c: &[f64],
            period: f64,
            zero_sum: bool,
        ) {
            if i == ranges.len() {
                if !zero_sum || cur.iter().sum::<i64>() == 0 {
                    out.push(c.iter().zip(cur.iter()).map(|(x, &m)| x + period * m as f64).collect());
                }
                return;
            }
            for m in ranges[i].0..=ranges[i].1 {
                cur[i] = m;
                rec(i + 1, ranges, cur, out, c, period, zero_sum);
            }
        }
        rec(0, &ranges, &mut cur, &mut out, c, period, zero_sum);
        out
    }
}

#[derive(Clone, Debug)]
pub struct Segment {
    pub k: CMatrix,
    pub tau: f64,
}

/// Segments in time order; the first is applied first.
#[derive(Clone, Debug, Default)]
pub struct ControlSchedule {
    pub segments: Vec<Segment>,
}

impl ControlSchedule {
    pub fn total_time(&self) -> f64 {
        self.segments.iter().map(|s| s.tau).sum()
    }

    /// Haar-random subgroup elements with exponentially distributed durations.
    pub fn random(model: Model, n: usize, mean_tau: f64, rng: &mut Rng64) -> Self {
        let segments = (0..n)
            .map(|_| {
                let k = model.random_subgroup(rng);
                let tau = mean_tau * rng.sample::<f64, _>(rand_distr::Exp1).max(1e-6);
                Segment { k, tau }
            })
            .collect();
        Self { segments }
    }

    /// Same controls with every segment split in two halves.
    pub fn refined(&self) -> Self {
        let segments = self
            .segments
            .iter()
            .flat_map(|s| [Segment { k: s.k.clone(), tau: s.tau / 2.0 }, Segment { k: s.k.clone(), tau: s.tau / 2.0 }])
            .collect();
        Self { segments }
    }

    pub fn validate(&self, model: Model) -> Result<()> {
        for (i, s) in self.segments.iter().enumerate() {
            if !(s.tau > 0.0) || !s.tau.is_finite() {
                return Err(Error::Invalid(format!("segment {i}: duration must be positive")));
            }
            if !model.in_subgroup(&s.k, 1e-10) {
                return Err(Error::Invalid(format!("segment {i}: control is not in the subgroup")));
            }
        }
        Ok(())
    }
}

/// prod_i exp(Ad_{K_i}(drift) tau_i), later segments multiplied on the left.
pub fn simulate(model: Model, drift: &CMatrix, schedule: &ControlSchedule) -> Result<CMatrix> {
    let p = model.p_basis();
    if drift.dim() != model.matrix_dim() {
        return Err(Error::Dimension { expected: model.matrix_dim(), got: drift.dim() });
    }
    let (_, res) = p.project(drift);
    if res > 1e-10 * drift.frobenius().max(1.0) {
        return Err(Error::OutsideSpan(res));
    }
    schedule.validate(model)?;
    let mut u = CMatrix::identity(model.matrix_dim());
    for s in &schedule.segments {
        let e = exp_skew(&drift.scale_re(s.tau));
        u = &s.k.conjugate(&e) * &u;
    }
    Ok(u)
}

/// Reachability certificate of an endpoint.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReachCheck {
    /// Lattice representative of the Cartan coordinates used for the check.
    pub coords: Vec<f64>,
    pub cert: MajorizationCert,
    /// Closed-form hull slack of `coords` against the orbit of T * drift.
    pub slack: f64,
}

/// Whether P lies in the reachable set at time t of the drift with the given
/// Cartan coordinates.
pub fn check_reachable(model: Model, p: &CMatrix, drift: &[f64], t: f64) -> Result<ReachCheck> {
    model.check_coords(drift)?;
    if !(t >= 0.0) {
        return Err(Error::Invalid("elapsed time must be nonnegative".into()));
    }
    let (_, c, _) = model.decompose(p)?;
    let scaled: Vec<f64> = drift.iter().map(|d| d * t).collect();
    let radius = scaled.iter().fold(0.0f64, |m, v| m.max(v.abs())) + 1e-7;
    let mut best = (f64::NEG_INFINITY, c.clone());
    for rep in model.representatives(&c, radius).into_iter().chain(std::iter::once(c.clone())) {
        let s = hull_slack(&rep, &scaled, model.orbit_type());
        if s > best.0 {
            best = (s, rep);
        }
    }
    let orbit = generate_orbit(&scaled, model.orbit_type())?;
    let cert = majorized(&best.1, &orbit)?;
    Ok(ReachCheck { coords: best.1, cert, slack: best.0 })
}

/// Result of the second-order reduction.
#[derive(Clone, Debug)]
pub struct ReductionTrace {
    /// (|a_k|, |b_k|, |c_k|) in Frobenius norm, starting with the input.
    pub iterates: Vec<[f64; 3]>,
    /// Limit exponent a_inf * delta.
    pub final_a: CMatrix,
    /// |K1'' exp(x delta) R - exp(final_a)|.
    pub residual: f64,
    /// Largest observed ratio (|b_k|+|c_k|) / (|b_{k-1}|+|c_{k-1}|).
    pub ratio: f64,
    /// 1 / min |sin(root value)| over the roots used in the solve.
    pub h: f64,
    /// |final_a - a0 delta| / delta^2.
    pub constant: f64,
    /// Accumulated left factor in K.
    pub k_left: CMatrix,
    /// Accumulated k2'' in K with right factor A k2'' A^{-1}.
    pub k_right: CMatrix,
    /// Accumulated right factor.
    pub right: CMatrix,
}

/// Splits x into its a-, (p minus a)- and k-components.
fn split(pair: &CartanPair, x: &CMatrix) -> (CMatrix, CMatrix, CMatrix) {
    let (pc, _) = pair.p.project(x);
    let xp = pair.p.combine(&pc);
    let (ac, _) = pair.a.project(&xp);
    let xa = pair.a.combine(&ac);
    let xk = x - &xp;
    let xb = &xp - &xa;
    (xa, xb, xk)
}

/// Iteratively conjugates exp((a0 + b0 + c0) delta) into exp(a_inf delta)
/// with a_inf in a, using the roots at the Cartan point `point` (a-coordinates
/// of the pair) to absorb the p-part by A-conjugated subgroup factors.
pub fn second_order_reduce(
    pair: &CartanPair,
    roots: &RootSystem,
    point: &[f64],
    a0: &CMatrix,
    b0: &CMatrix,
    c0: &CMatrix,
    delta: f64,
) -> Result<ReductionTrace> {
    if point.len() != pair.a.len() {
        return Err(Error::Dimension { expected: pair.a.len(), got: point.len() });
    }
    if !(delta > 0.0) {
        return Err(Error::Invalid("delta must be positive".into()));
    }
    let n = pair.a.matrix_dim();
    let modes: Vec<(f64, &CMatrix, &CMatrix)> = roots
        .roots
        .iter()
        .flat_map(|r| {
            let lam = r.value(point);
            r.p_parts.iter().zip(&r.k_parts).map(move |(y, x)| (lam, y, x))
        })
        .filter(|(lam, _, _)| lam.sin().abs() >= SIN_TOL)
        .collect();
    let h = modes.iter().map(|(l, _, _)| 1.0 / l.sin().abs()).fold(0.0, f64::max);

    let x0 = &(a0 + b0) + c0;
    let u0 = exp_skew(&x0.scale_re(delta));
    let (mut a, mut b, mut c) = (a0.clone(), b0.clone(), c0.clone());
    let mut iterates = vec![[a.frobenius(), b.frobenius(), c.frobenius()]];
    let mut left = CMatrix::identity(n);
    let mut right = CMatrix::identity(n);
    let mut k2 = CMatrix::identity(n);
    let mut ratio = 0.0f64;
    // below this the log of a near-identity unitary is dominated by rounding
    let noise = (1e3 * f64::EPSILON / delta).max(REDUCE_TOL);
    let mut u = u0.clone();
    let mut prev = b.frobenius() + c.frobenius();
    let mut iter = 0;
    while prev > REDUCE_TOL {
        iter += 1;
        if iter > 200 {
            return Err(Error::NonContraction { delta, ratio: 1.0 });
        }
        let mut cbar = CMatrix::zeros(n, n);
        let mut kp = CMatrix::zeros(n, n);
        for (lam, y, x) in &modes {
            let beta = y.inner_re(&b);
            cbar += &x.scale_re(beta * lam.cos() / lam.sin());
            kp += &x.scale_re(beta / lam.sin());
        }
        let l = exp_skew(&(&c + &cbar).scale_re(-delta));
        let r = exp_skew(&(&cbar - &b).scale_re(delta));
        left = &l * &left;
        right = &right * &r;
        k2 = &k2 * &exp_skew(&kp.scale_re(delta));
        u = &(&l * &u) * &r;
        let x = logm_unitary(&u)?.scale_re(1.0 / delta);
        (a, b, c) = split(pair, &x);
        let cur = b.frobenius() + c.frobenius();
        iterates.push([a.frobenius(), b.frobenius(), c.frobenius()]);
        if prev > noise {
            let rk = cur / prev;
            ratio = ratio.max(rk);
            if rk >= 1.0 {
                return Err(Error::NonContraction { delta, ratio: rk });
            }
        } else if cur > REDUCE_TOL && cur >= prev {
            // stalled at the rounding floor
            break;
        }
        prev = cur;
    }
    let final_a = a.scale_re(delta);
    let residual = (&(&left * &u0) * &right).dist(&exp_skew(&final_a));
    let constant = (&final_a - &a0.scale_re(delta)).frobenius() / (delta * delta);
    Ok(ReductionTrace { iterates, final_a, residual, ratio, h, constant, k_left: left, k_right: k2, right })
}

/// Comparison of Euler-integrated coordinates with the exact ones.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FlowReport {
    pub times: Vec<f64>,
    /// Integrated coordinates a(t).
    pub integrated: Vec<Vec<f64>>,
    /// Coordinates of the simulated P(t), mapped to the integrated branch.
    pub exact: Vec<Vec<f64>>,
    pub max_deviation: f64,
    /// Largest LP residual of da/dt against the drift orbit hull.
    pub max_hull_residual: f64,
    /// Steps at which da/dt failed the hull check.
    pub hull_failures: usize,
    pub min_root_distance: f64,
}

/// Permutation and signs with g(a)_i = signs_i * a_{perm_i}.
type SignedPerm = (Vec<usize>, Vec<f64>);

/// Weyl element and lattice shift taking c closest to target; returns the
/// mapped coordinates and the group element.
fn match_branch(model: Model, c: &[f64], target: &[f64]) -> (Vec<f64>, SignedPerm) {
    let (period, zero_sum) = model.lattice();
    let mut best: Option<(f64, Vec<f64>, SignedPerm)> = None;
    for (p, s) in group_elements(c.len(), model.orbit_type()) {
        let y: Vec<f64> = p.iter().zip(&s).map(|(&i, &si)| si * c[i]).collect();
        let mut m: Vec<f64> = y.iter().zip(target).map(|(yi, ti)| ((ti - yi) / period).round()).collect();
        if zero_sum {
            // repair the sum by moving the coordinates with the largest rounding slack
            let mut excess: i64 = m.iter().sum::<f64>() as i64;
            while excess != 0 {
                let dir = excess.signum() as f64;
                let j = (0..m.len())
                    .min_by(|&i, &k| {
                        let fi = ((target[i] - y[i]) / period - (m[i] - dir)).abs();
                        let fk = ((target[k] - y[k]) / period - (m[k] - dir)).abs();
                        fi.total_cmp(&fk)
                    })
                    .unwrap();
                m[j] -= dir;
                excess -= excess.signum();
            }
        }
        let z: Vec<f64> = y.iter().zip(&m).map(|(yi, mi)| yi + period * mi).collect();
        let d = z.iter().zip(target).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        if best.as_ref().is_none_or(|(bd, _, _)| d < *bd) {
            best = Some((d, z, (p, s)));
        }
    }
    let (_, z, g) = best.expect("nonempty Weyl group");
    (z, g)
}

/// Euler integration of da/dt = P_a(Ad_{K1^-1 K}(X_d)) from the regular
/// Cartan point `start`, alongside the exact product, with step at most `step`.
pub fn projection_flow(
    model: Model,
    drift: &[f64],
    start: &[f64],
    schedule: &ControlSchedule,
    step: f64,
) -> Result<FlowReport> {
    model.check_coords(start)?;
    let xd = model.embed(drift)?;
    schedule.validate(model)?;
    if !(step > 0.0) {
        return Err(Error::Invalid("step must be positive".into()));
    }
    let orbit = generate_orbit(drift, model.orbit_type())?;
    let mut p = model.exp_cartan(start);
    let mut a = start.to_vec();
    let mut t = 0.0;
    let mut rep = FlowReport {
        times: vec![0.0],
        integrated: vec![a.clone()],
        exact: vec![a.clone()],
        max_deviation: 0.0,
        max_hull_residual: 0.0,
        hull_failures: 0,
        min_root_distance: model.min_root_distance(&a),
    };
    for seg in &schedule.segments {
        let m = (seg.tau / step).ceil().max(1.0) as usize;
        let dt = seg.tau / m as f64;
        let step_gate = seg.k.conjugate(&model.exp_cartan(&drift.iter().map(|d| d * dt).collect::<Vec<_>>()));
        for _ in 0..m {
            let dist = model.min_root_distance(&a);
            rep.min_root_distance = rep.min_root_distance.min(dist);
            if dist < CHART_TOL {
                return Err(Error::Degenerate { t, min_root: dist });
            }
            let (k1, c, _) = model.decompose(&p)?;
            let (_, (perm, signs)) = match_branch(model, &c, &a);
            let v0 = model.project(&k1.adjoint().conjugate(&seg.k.conjugate(&xd)));
            let v: Vec<f64> = perm.iter().zip(&signs).map(|(&i, &s)| s * v0[i]).collect();
            let cert = majorized(&v, &orbit)?;
            if !cert.feasible {
                rep.hull_failures += 1;
            }
            rep.max_hull_residual = rep.max_hull_residual.max(cert.residual);
            a.iter_mut().zip(&v).for_each(|(ai, vi)| *ai += dt * vi);
            p = &step_gate * &p;
            t += dt;
            let (_, c, _) = model.decompose(&p)?;
            let (z, _) = match_branch(model, &c, &a);
            let dev = z.iter().zip(&a).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            rep.max_deviation = rep.max_deviation.max(dev);
            rep.times.push(t);
            rep.integrated.push(a.clone());
            rep.exact.push(z);
        }
    }
    Ok(rep)
}

/// Conjugator of the two-qubit Weyl element with the given signed permutation.
pub fn two_qubit_conjugator(perm: &[usize], signs: &[f64]) -> CMatrix {
    let mut g = [0i8; 9];
    for (i, (&p, &s)) in perm.iter().zip(signs).enumerate() {
        g[3 * i + p] = s as i8;
    }
    weyl_table().get(&g).local.clone()
}
