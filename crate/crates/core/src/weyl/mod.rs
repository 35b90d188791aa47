//! Weyl orbits of Cartan coordinates, convex-hull membership certificates and
//! the minimum-time linear program.

pub mod certificate;
pub mod simplex;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use simplex::{solve_lp, LpOutcome};
use std::str::FromStr;

/// Absolute tolerance on the LP equality constraints.
pub const FEAS_TOL: f64 = 1e-9;
/// Weights below this are dropped before renormalizing.
pub const WEIGHT_FLOOR: f64 = 1e-12;
/// Orbit points closer than this are identified.
pub const DEDUP_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitType {
    /// All coordinate permutations.
    Sn,
    /// Permutations with arbitrary sign changes.
    Bn,
    /// Permutations of three coordinates with an even number of sign changes.
    TwoQubit,
}

impl FromStr for OrbitType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sn" => Ok(Self::Sn),
            "bn" => Ok(Self::Bn),
            "two-qubit" => Ok(Self::TwoQubit),
            _ => Err(Error::Invalid(format!("unknown orbit type '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeylOrbit {
    pub orbit_type: OrbitType,
    pub points: Vec<Vec<f64>>,
    pub base: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MajorizationCert {
    pub feasible: bool,
    /// Convex weights indexed like the orbit points; empty when infeasible.
    pub weights: Vec<f64>,
    /// Max-norm error of the combination when feasible, minimal L1 violation
    /// otherwise.
    pub residual: f64,
}

/// Minimum-time solution: total time and the fraction spent at each orbit point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinTime {
    #[serde(rename = "T")]
    pub t: f64,
    pub weights: Vec<WeightedPoint>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedPoint {
    pub point: Vec<f64>,
    pub w: f64,
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Signed permutations of the given type, as (perm, signs) with
/// g(a)_i = signs_i * a_{perm_i}.
pub fn group_elements(n: usize, t: OrbitType) -> Vec<(Vec<usize>, Vec<f64>)> {
    let perms = permutations(n);
    let sign_sets: Vec<Vec<f64>> = match t {
        OrbitType::Sn => vec![vec![1.0; n]],
        OrbitType::Bn | OrbitType::TwoQubit => (0..1usize << n)
            .map(|mask| (0..n).map(|i| if mask >> i & 1 == 1 { -1.0 } else { 1.0 }).collect::<Vec<f64>>())
            .filter(|s| t == OrbitType::Bn || s.iter().product::<f64>() > 0.0)
            .collect(),
    };
    let mut out = Vec::with_capacity(perms.len() * sign_sets.len());
    for p in &perms {
        for s in &sign_sets {
            out.push((p.clone(), s.clone()));
        }
    }
    out
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub fn generate_orbit(base: &[f64], orbit_type: OrbitType) -> Result<WeylOrbit> {
    if base.iter().any(|v| !v.is_finite()) {
        return Err(Error::Invalid("orbit base must be finite".into()));
    }
    if orbit_type == OrbitType::TwoQubit && base.len() != 3 {
        return Err(Error::Dimension { expected: 3, got: base.len() });
    }
    if base.is_empty() {
        return Err(Error::Invalid("orbit base must be nonempty".into()));
    }
    let mut points: Vec<Vec<f64>> = Vec::new();
    for (p, s) in group_elements(base.len(), orbit_type) {
        let q: Vec<f64> = p.iter().zip(&s).map(|(&i, &si)| si * base[i]).collect();
        if points.iter().all(|x| dist(x, &q) > DEDUP_TOL) {
            points.push(q);
        }
    }
    Ok(WeylOrbit { orbit_type, points, base: base.to_vec() })
}

/// Certificate that mu lies in the convex hull of the orbit.
pub fn majorized(mu: &[f64], orbit: &WeylOrbit) -> Result<MajorizationCert> {
    let d = orbit.base.len();
    if mu.len() != d {
        return Err(Error::Dimension { expected: d, got: mu.len() });
    }
    let k = orbit.points.len();
    let mut a: Vec<Vec<f64>> = (0..d).map(|i| orbit.points.iter().map(|p| p[i]).collect()).collect();
    a.push(vec![1.0; k]);
    let mut b = mu.to_vec();
    b.push(1.0);
    match solve_lp(&a, &b, &vec![0.0; k], FEAS_TOL) {
        LpOutcome::Optimal { x, .. } => {
            let mut w: Vec<f64> = x.into_iter().map(|v| if v < WEIGHT_FLOOR { 0.0 } else { v }).collect();
            let s: f64 = w.iter().sum();
            w.iter_mut().for_each(|v| *v /= s);
            let residual = (0..d)
                .map(|i| (orbit.points.iter().zip(&w).map(|(p, wk)| wk * p[i]).sum::<f64>() - mu[i]).abs())
                .fold(0.0, f64::max);
            Ok(MajorizationCert { feasible: residual <= FEAS_TOL, weights: w, residual })
        }
        LpOutcome::Infeasible { residual } => Ok(MajorizationCert { feasible: false, weights: Vec::new(), residual }),
        LpOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
    }
}

/// Minimum total time sum t_k with sum t_k p_k = target over the drift orbit.
pub fn min_time(target: &[f64], drift: &[f64], orbit_type: OrbitType) -> Result<MinTime> {
    let orbit = generate_orbit(drift, orbit_type)?;
    if target.len() != drift.len() {
        return Err(Error::Dimension { expected: drift.len(), got: target.len() });
    }
    if target.iter().any(|v| !v.is_finite()) {
        return Err(Error::Invalid("target must be finite".into()));
    }
    let d = drift.len();
    let k = orbit.points.len();
    let a: Vec<Vec<f64>> = (0..d).map(|i| orbit.points.iter().map(|p| p[i]).collect()).collect();
    match solve_lp(&a, target, &vec![1.0; k], FEAS_TOL) {
        LpOutcome::Optimal { x, objective } => {
            if objective <= WEIGHT_FLOOR {
                return Ok(MinTime { t: 0.0, weights: Vec::new() });
            }
            let weights = orbit
                .points
                .into_iter()
                .zip(x)
                .filter(|(_, t)| *t > WEIGHT_FLOOR * objective)
                .map(|(point, t)| WeightedPoint { point, w: t / objective })
                .collect();
            Ok(MinTime { t: objective, weights })
        }
        LpOutcome::Infeasible { residual } => Err(Error::Infeasible(format!(
            "target not in the cone of the drift orbit (violation {residual:.3e})"
        ))),
        LpOutcome::Unbounded => unreachable!("nonnegative objective cannot be unbounded"),
    }
}

/// Hull membership of target in the orbit of T * drift.
pub fn reachable(target: &[f64], drift: &[f64], t: f64, orbit_type: OrbitType) -> Result<MajorizationCert> {
    if !(t > 0.0) {
        return Err(Error::Invalid(format!("time must be positive, got {t}")));
    }
    let scaled: Vec<f64> = drift.iter().map(|v| v * t).collect();
    majorized(target, &generate_orbit(&scaled, orbit_type)?)
}
