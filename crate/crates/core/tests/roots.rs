use cartan::random::{random_vec, rng};
use cartan::roots::{compute_roots, CartanPair, RootSystem};

fn value_at(rs: &RootSystem, v: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = rs.roots.iter().map(|r| r.value(v)).collect();
    out.sort_by(f64::total_cmp);
    out
}

fn contains_functional(rs: &RootSystem, f: &[f64], mult: usize) -> bool {
    rs.roots.iter().any(|r| {
        r.multiplicity == mult
            && (r.value_fn.iter().zip(f).all(|(a, b)| (a - b).abs() <= 1e-10)
                || r.value_fn.iter().zip(f).all(|(a, b)| (a + b).abs() <= 1e-10))
    })
}

fn check_relations(pair: &CartanPair, rs: &RootSystem) {
    for r in &rs.roots {
        for (y, x) in r.p_parts.iter().zip(&r.k_parts) {
            assert!(pair.p.contains(y, 1e-10) && pair.k.contains(x, 1e-10));
            for (ai, &vi) in pair.a.elements().iter().zip(&r.value_fn) {
                assert!((&ai.commutator(y) - &x.scale_re(vi)).frobenius() <= 1e-8);
                assert!((&ai.commutator(x) + &y.scale_re(vi)).frobenius() <= 1e-8);
            }
            // value(a) = <a, [p, k]> in the normalization where |p| = |k| = 1
            let c = y.commutator(x);
            for (ai, &vi) in pair.a.elements().iter().zip(&r.value_fn) {
                assert!((ai.inner_re(&c) - vi).abs() <= 1e-8);
            }
        }
    }
    let dim: usize = rs.roots.iter().map(|r| r.multiplicity).sum::<usize>() + pair.a.len();
    assert_eq!(dim, pair.p.len());
    // p-parts of distinct roots are orthogonal under the Killing form
    for (i, r) in rs.roots.iter().enumerate() {
        for s in &rs.roots[i + 1..] {
            for y in &r.p_parts {
                for z in &s.p_parts {
                    assert!(cartan::kernel::killing_form(y, z, &pair.g).unwrap().abs() <= 1e-8);
                }
            }
        }
    }
}

#[test]
fn two_spin_roots() {
    let pair = CartanPair::two_spin();
    let rs = compute_roots(&pair).unwrap();
    assert_eq!(rs.roots.len(), 6);
    assert!(rs.roots.iter().all(|r| r.multiplicity == 1));
    let (al, be, ga) = (3.0, 2.0, 1.0);
    let mut want = vec![
        (ga - be) / 2.0,
        (ga + be) / 2.0,
        (ga - al) / 2.0,
        (ga + al) / 2.0,
        (be - al) / 2.0,
        (be + al) / 2.0,
    ];
    let got = value_at(&rs, &[al, be, ga]);
    let mut got_abs: Vec<f64> = got.iter().map(|v| v.abs()).collect();
    want.iter_mut().for_each(|v| *v = v.abs());
    want.sort_by(f64::total_cmp);
    got_abs.sort_by(f64::total_cmp);
    for (g, w) in got_abs.iter().zip(&want) {
        assert!((g - w).abs() <= 1e-10, "{got:?}");
    }
    for f in [[0.0, -0.5, 0.5], [0.0, 0.5, 0.5], [-0.5, 0.0, 0.5], [0.5, 0.0, 0.5], [-0.5, 0.5, 0.0], [0.5, 0.5, 0.0]] {
        assert!(contains_functional(&rs, &f, 1), "missing {f:?}");
    }
    check_relations(&pair, &rs);

    let fund = rs.fundamental_roots().unwrap();
    let mut fv: Vec<Vec<f64>> = fund.iter().map(|&i| rs.roots[i].value_fn.clone()).collect();
    fv.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut want = vec![vec![-0.5, 0.5, 0.0], vec![0.5, 0.5, 0.0], vec![0.0, -0.5, 0.5]];
    want.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for (g, w) in fv.iter().zip(&want) {
        assert!(g.iter().zip(w).all(|(a, b)| (a - b).abs() < 1e-10), "{fv:?}");
    }
}

#[test]
fn epr_roots() {
    let pair = CartanPair::epr();
    let rs = compute_roots(&pair).unwrap();
    check_relations(&pair, &rs);
    // a = alpha I_x + beta 2 I_x S_z acts as (alpha +/- beta) I_x on S_z = +/-1/2
    assert!(contains_functional(&rs, &[1.0, 1.0], 1));
    assert!(contains_functional(&rs, &[1.0, -1.0], 1));
    assert!(contains_functional(&rs, &[1.0, 0.0], 2));
    assert!(contains_functional(&rs, &[0.0, 1.0], 2));
    assert_eq!(rs.roots.len(), 4);
    let fund = rs.fundamental_roots().unwrap();
    let fv: Vec<&Vec<f64>> = fund.iter().map(|&i| &rs.roots[i].value_fn).collect();
    assert_eq!(fv.len(), 2);
    let has = |w: [f64; 2]| fv.iter().any(|v| (v[0] - w[0]).abs() < 1e-10 && (v[1] - w[1]).abs() < 1e-10);
    assert!(has([0.0, 1.0]) && has([1.0, -1.0]), "{fv:?}");
}

#[test]
fn su2n_roots() {
    for n in [2usize, 3] {
        let pair = CartanPair::su2n(n).unwrap();
        let rs = compute_roots(&pair).unwrap();
        check_relations(&pair, &rs);
        assert_eq!(rs.roots.len(), n * n);
        for i in 0..n {
            let mut f = vec![0.0; n];
            f[i] = 2.0;
            assert!(contains_functional(&rs, &f, 1));
            for j in i + 1..n {
                let mut f = vec![0.0; n];
                f[i] = 1.0;
                f[j] = 1.0;
                assert!(contains_functional(&rs, &f, 2));
                f[j] = -1.0;
                assert!(contains_functional(&rs, &f, 2));
            }
        }
        assert_eq!(rs.fundamental_roots().unwrap().len(), n);
        rs.cartan_integers().unwrap();
    }
}

#[test]
fn sun_son_roots() {
    let pair = CartanPair::sun_son(4).unwrap();
    let rs = compute_roots(&pair).unwrap();
    check_relations(&pair, &rs);
    assert_eq!(rs.roots.len(), 6);
    assert_eq!(rs.fundamental_roots().unwrap().len(), 3);
    assert_eq!(rs.reflection_closure(&[0.3, 0.7, -0.2], 1000).len(), 24);
}

#[test]
fn cartan_integers_admissible() {
    for pair in [CartanPair::two_spin(), CartanPair::epr()] {
        let rs = compute_roots(&pair).unwrap();
        let ci = rs.cartan_integers().unwrap();
        assert!(ci.max_deviation <= 1e-6);
        for i in 0..rs.roots.len() {
            assert_eq!(ci.matrix[i][i], 2);
        }
    }
}

#[test]
fn regular_elements() {
    let rs = compute_roots(&CartanPair::two_spin()).unwrap();
    assert!(rs.is_regular(&[3.0, 2.0, 1.0]));
    assert!(!rs.is_regular(&[1.0, 1.0, 0.0]));
    let v = rs.regular_element().unwrap();
    assert!(rs.roots.iter().all(|r| r.value(&v).abs() >= 1e-6));
}

#[test]
fn reflections() {
    let rs = compute_roots(&CartanPair::two_spin()).unwrap();
    let m = rs.roots[0].rep.clone();
    let neg = rs.reflect(&m, 0).unwrap();
    assert!(neg.iter().zip(&m).all(|(a, b)| (a + b).abs() < 1e-12));
    let mut r = rng(8);
    for _ in 0..20 {
        let v = random_vec(3, &mut r);
        for i in 0..rs.roots.len() {
            let w = rs.reflect(&rs.reflect(&v, i).unwrap(), i).unwrap();
            assert!(w.iter().zip(&v).all(|(a, b)| (a - b).abs() < 1e-12));
        }
    }
    // a vector orthogonal to the root is fixed
    let mut perp = random_vec(3, &mut r);
    let f = rs.inner(&m, &perp) / rs.inner(&m, &m);
    perp.iter_mut().zip(&m).for_each(|(p, mi)| *p -= f * mi);
    let w = rs.reflect(&perp, 0).unwrap();
    assert!(w.iter().zip(&perp).all(|(a, b)| (a - b).abs() < 1e-12));
}

#[test]
fn closure_and_chamber_reduction() {
    let rs = compute_roots(&CartanPair::two_spin()).unwrap();
    assert_eq!(rs.reflection_closure(&[0.31, 0.77, 1.3], 1000).len(), 24);
    let inside = rs.ordering.clone();
    let (z, word) = rs.reduce_to_chamber(&inside);
    assert!(word.is_empty() && z == inside);

    let dist = |a: &[f64]| {
        let d: Vec<f64> = a.iter().zip(&inside).map(|(x, y)| x - y).collect();
        rs.inner(&d, &d)
    };
    let mut r = rng(12);
    for k in 0..50 {
        let v: Vec<f64> =
            if k == 0 { inside.iter().map(|x| -x).collect() } else { random_vec(3, &mut r) };
        let (z, word) = rs.reduce_to_chamber(&v);
        assert!(word.len() <= 24);
        assert!(rs.roots.iter().all(|rt| rt.value(&z) >= -1e-12));
        let mut cur = v.clone();
        for &i in &word {
            let next = rs.reflect(&cur, i).unwrap();
            assert!(dist(&next) < dist(&cur));
            cur = next;
        }
        assert!(cur.iter().zip(&z).all(|(a, b)| (a - b).abs() < 1e-12));
    }
}
