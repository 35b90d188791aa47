//! Minimum-time two-qubit pulse programs: local unitaries interleaved with
//! free evolutions under the coupling.

use crate::error::{Error, Result};
use crate::kernel::expm::exp_skew;
use crate::kernel::spin::minus_i;
use crate::two_qubit::{
    canonical_params, coupling_hamiltonian, diagonalize_coupling, weyl_table, CouplingMatrix,
};
use crate::weyl::{min_time, OrbitType};
use crate::CMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_4;

/// Playback tolerance every emitted program is checked against.
pub const PLAYBACK_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PulseSegment {
    /// Local conjugator W of the coupling evolution.
    #[serde(with = "crate::io::matrix_serde")]
    pub w: CMatrix,
    /// Duration of exp(-i t W H_c W').
    pub t: f64,
    /// Canonical triple of W H_c W' in the coupling's diagonal frame.
    pub point: [f64; 3],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PulseProgram {
    #[serde(with = "crate::io::matrix_serde")]
    pub k_start: CMatrix,
    pub segments: Vec<PulseSegment>,
    #[serde(with = "crate::io::matrix_serde")]
    pub k_end: CMatrix,
    #[serde(rename = "T")]
    pub total_time: f64,
    /// Frobenius distance of the playback from the target.
    pub residual: f64,
}

/// Multiplies a 4x4 special unitary by the fourth root of unity that puts the
/// phase of its largest entry in (-pi/4, pi/4]; returns the factor used.
fn fix_phase(u: &mut CMatrix) -> Complex64 {
    let z = u.as_slice().iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap_or(Complex64::new(1.0, 0.0));
    let k = (-z.arg() / (2.0 * FRAC_PI_4)).round();
    let f = Complex64::from_polar(1.0, k * 2.0 * FRAC_PI_4);
    *u = u.scale(f);
    f
}

/// k_start * prod_k exp(-i t_k W_k H_c W_k') * k_end.
pub fn playback(p: &PulseProgram, j: &CouplingMatrix) -> CMatrix {
    let drift = minus_i(&coupling_hamiltonian(j));
    let mut u = p.k_start.clone();
    for s in &p.segments {
        u = &u * &s.w.conjugate(&exp_skew(&drift.scale_re(s.t)));
    }
    &u * &p.k_end
}

/// Minimum-time program for a target in SU(4) under the coupling J.
pub fn synthesize(target: &CMatrix, j: &CouplingMatrix) -> Result<PulseProgram> {
    if j.iter().flatten().all(|v| *v == 0.0) {
        return Err(Error::Invalid("coupling is zero; no nonlocal evolution is available".into()));
    }
    let diag = diagonalize_coupling(j)?;
    let d = diag.triple.to_array();
    let can = canonical_params(target)?;
    let mt = min_time(&can.triple.to_array(), &d, OrbitType::TwoQubit)?;

    let table = weyl_table();
    let k = &diag.k;
    let ka = k.adjoint();
    let mut segments = Vec::with_capacity(mt.weights.len());
    for wp in &mt.weights {
        let point = [wp.point[0], wp.point[1], wp.point[2]];
        let el = table
            .elements
            .iter()
            .filter(|e| e.apply(d).iter().zip(&point).all(|(x, y)| (x - y).abs() <= 1e-12))
            .min_by_key(|e| e.matrix != [1, 0, 0, 0, 1, 0, 0, 0, 1])
            .ok_or_else(|| Error::Invalid("orbit point without a Weyl conjugator".into()))?;
        let mut w = &(&ka * &el.local) * k;
        fix_phase(&mut w);
        segments.push(PulseSegment { w, t: wp.w * mt.t, point });
    }
    segments.sort_by(|a, b| b.t.total_cmp(&a.t));
    let total_time = segments.iter().map(|s| s.t).sum();

    let mut k_start = &can.k1 * k;
    let f = fix_phase(&mut k_start);
    let k_end = (&ka * &can.k2).scale(f.conj());
    let mut prog = PulseProgram { k_start, segments, k_end, total_time, residual: 0.0 };
    prog.residual = playback(&prog, j).dist(target);
    if prog.residual > PLAYBACK_TOL {
        return Err(Error::Invalid(format!("playback residual {:.3e} exceeds tolerance", prog.residual)));
    }
    Ok(prog)
}
