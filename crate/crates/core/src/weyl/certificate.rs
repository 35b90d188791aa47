//! Closed-form hull-membership slacks. A nonnegative slack certifies that a
//! point lies in the convex hull of an orbit; these are independent of the LP.

use super::OrbitType;

fn sorted_desc(v: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = v.into_iter().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Partial-sum majorization slack: min over k of the top-k sum gap, and the
/// negated total-sum mismatch.
pub fn sn_slack(mu: &[f64], lambda: &[f64]) -> f64 {
    let m = sorted_desc(mu.iter().copied());
    let l = sorted_desc(lambda.iter().copied());
    let (mut sm, mut sl, mut slack) = (0.0, 0.0, f64::INFINITY);
    for k in 0..m.len() {
        sm += m[k];
        sl += l[k];
        if k + 1 < m.len() {
            slack = slack.min(sl - sm);
        }
    }
    slack.min(-(sl - sm).abs())
}

/// Weak submajorization slack of |mu| by |lambda|.
pub fn bn_slack(mu: &[f64], lambda: &[f64]) -> f64 {
    let m = sorted_desc(mu.iter().map(|v| v.abs()));
    let l = sorted_desc(lambda.iter().map(|v| v.abs()));
    let (mut sm, mut sl, mut slack) = (0.0, 0.0, f64::INFINITY);
    for k in 0..m.len() {
        sm += m[k];
        sl += l[k];
        slack = slack.min(sl - sm);
    }
    slack
}

/// Representative with a_x >= a_y >= |a_z| under even signed permutations.
pub fn two_qubit_chamber(a: [f64; 3]) -> [f64; 3] {
    let s = sorted_desc(a.iter().map(|v| v.abs()));
    let neg = a.iter().filter(|v| **v < 0.0).count();
    [s[0], s[1], if neg % 2 == 1 { -s[2] } else { s[2] }]
}

/// Slack of the two-qubit inequalities alpha <= a_x T and
/// alpha + beta -/+ gamma <= (a_x + a_y -/+ a_z) T, both arguments reduced to
/// the chamber first.
pub fn two_qubit_slack(target: [f64; 3], drift: [f64; 3], t: f64) -> f64 {
    let [al, be, ga] = two_qubit_chamber(target);
    let [ax, ay, az] = two_qubit_chamber(drift);
    (ax * t - al)
        .min((ax + ay - az) * t - (al + be - ga))
        .min((ax + ay + az) * t - (al + be + ga))
}

/// Slack for mu in the hull of the orbit of lambda.
pub fn hull_slack(mu: &[f64], lambda: &[f64], orbit_type: OrbitType) -> f64 {
    match orbit_type {
        OrbitType::Sn => sn_slack(mu, lambda),
        OrbitType::Bn => bn_slack(mu, lambda),
        OrbitType::TwoQubit => two_qubit_slack([mu[0], mu[1], mu[2]], [lambda[0], lambda[1], lambda[2]], 1.0),
    }
}

/// Smallest multiple of `step` at which the two-qubit inequalities hold.
pub fn grid_min_time(target: [f64; 3], drift: [f64; 3], step: f64, t_max: f64) -> Option<f64> {
    let n = (t_max / step).ceil() as usize;
    (0..=n).map(|k| k as f64 * step).find(|&t| two_qubit_slack(target, drift, t) >= 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schur_examples() {
        assert!(sn_slack(&[0.5, -0.5, 0.0, 0.0], &[1.0, -1.0, 0.0, 0.0]) >= 0.0);
        assert!(sn_slack(&[1.01, -1.0, 0.0, -0.01], &[1.0, -1.0, 0.0, 0.0]) < 0.0);
    }

    #[test]
    fn octahedron() {
        assert!(two_qubit_slack([0.3, 0.3, -0.4], [1.0, 0.0, 0.0], 1.0) >= 0.0);
        assert!(two_qubit_slack([0.4, 0.4, 0.4], [1.0, 0.0, 0.0], 1.0) < 0.0);
        assert_eq!(two_qubit_chamber([-0.2, 0.5, 0.1]), [0.5, 0.2, -0.1]);
    }
}
