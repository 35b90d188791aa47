use cartan::random::{haar_su, random_coupling, rng};
use cartan::synth::*;
use cartan::two_qubit::{
    canonical_gate, canonical_hamiltonian, canonical_params, coupling_hamiltonian, diagonalize_coupling, is_local,
};
use cartan::weyl::{min_time, OrbitType};

#[test]
fn three_unit_segments() {
    let j = [[1.0, 0.0, 0.0], [0.0; 3], [0.0; 3]];
    let p = synthesize(&canonical_gate([1.0, 1.0, 1.0]), &j).unwrap();
    assert_eq!(p.segments.len(), 3);
    assert!(p.segments.iter().all(|s| (s.t - 1.0).abs() <= 1e-9));
    assert!((p.total_time - 3.0).abs() <= 1e-9);
    assert!(p.residual <= 1e-8);
}

#[test]
fn empty_program_is_product_of_ends() {
    let mut r = rng(2);
    let p = PulseProgram {
        k_start: haar_su(4, &mut r),
        segments: vec![],
        k_end: haar_su(4, &mut r),
        total_time: 0.0,
        residual: 0.0,
    };
    let j = random_coupling(&mut r);
    assert!(playback(&p, &j).dist(&(&p.k_start * &p.k_end)) <= 1e-14);
}

#[test]
fn local_target_needs_no_time() {
    let mut r = rng(3);
    let k = cartan::random::random_local(&mut r);
    let p = synthesize(&k, &random_coupling(&mut r)).unwrap();
    assert!(p.segments.is_empty() && p.total_time == 0.0);
    assert!(p.residual <= 1e-8);
}

#[test]
fn random_round_trips() {
    let mut r = rng(2024);
    for _ in 0..100 {
        let u = haar_su(4, &mut r);
        let j = random_coupling(&mut r);
        let p = synthesize(&u, &j).unwrap();
        assert!(playback(&p, &j).dist(&u) <= 1e-8);
        let d = diagonalize_coupling(&j).unwrap();
        let a = canonical_params(&u).unwrap().triple.to_array();
        let t = min_time(&a, &d.triple.to_array(), OrbitType::TwoQubit).unwrap().t;
        assert!((p.total_time - t).abs() <= 1e-9);
        assert!((p.segments.iter().map(|s| s.t).sum::<f64>() - p.total_time).abs() <= 1e-12);
        assert!(p.segments.windows(2).all(|w| w[0].t >= w[1].t));
        let hc = coupling_hamiltonian(&j);
        for s in &p.segments {
            assert!(is_local(&s.w, 1e-8));
            let in_frame = d.k.conjugate(&s.w.conjugate(&hc));
            assert!(in_frame.dist(&canonical_hamiltonian(s.point)) <= 1e-8);
        }
        assert!(is_local(&p.k_start, 1e-8) && is_local(&p.k_end, 1e-8));
    }
}

#[test]
fn commuting_segments_permute() {
    let mut r = rng(77);
    let mut checked = 0;
    while checked < 10 {
        let u = haar_su(4, &mut r);
        let j = random_coupling(&mut r);
        let p = synthesize(&u, &j).unwrap();
        if p.segments.len() < 2 {
            continue;
        }
        let mut q = p.clone();
        q.segments.swap(0, 1);
        q.segments.reverse();
        assert!(playback(&p, &j).dist(&playback(&q, &j)) <= 1e-10);
        checked += 1;
    }
}

#[test]
fn json_round_trip() {
    let mut r = rng(5);
    let j = random_coupling(&mut r);
    let p = synthesize(&haar_su(4, &mut r), &j).unwrap();
    let text = serde_json::to_string(&p).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in ["k_start", "segments", "k_end", "T", "residual"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let back: PulseProgram = serde_json::from_str(&text).unwrap();
    assert!(playback(&back, &j).dist(&playback(&p, &j)) <= 1e-14);
    assert!(back.k_start.dist(&p.k_start) <= 1e-15);
}
