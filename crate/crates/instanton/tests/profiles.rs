use instanton::{
    closed_form_profile, conserved_tr, conserved_tr_values, duality_residual, duality_residual_at, eminus3,
    hopf_printed, solve_bvp, BvpConfig, DualitySign, ProfileKind, ProfileTriple,
};
use proptest::prelude::*;

fn max_abs(r: [f64; 3]) -> f64 {
    r.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

fn residual_of(a: fn(f64) -> [f64; 3], sign: DualitySign, t: f64) -> f64 {
    // centred difference oracle, independent of the stored exact derivatives
    let h = 1e-5;
    let (p, m) = (a(t + h), a(t - h));
    let da = [0, 1, 2].map(|i| (p[i] - m[i]) / (2.0 * h));
    let v = a(t);
    let q = [v[1] * v[2] - v[0], v[2] * v[0] - v[1], v[0] * v[1] - v[2]];
    let k = [1, 2, 3].map(|i| instanton::coeff_k(i, t).unwrap());
    max_abs([0, 1, 2].map(|i| sign.factor() * 0.5 * k[i] * da[i] - q[i]))
}

#[test]
fn hopf_is_self_dual() {
    let hopf = closed_form_profile(ProfileKind::ClosedFormHopfSD).unwrap();
    for k in 1..100 {
        let t = 0.05 + 0.9 * k as f64 / 100.0;
        let r = duality_residual(&hopf, DualitySign::SelfDual, t, false).unwrap();
        assert!(max_abs(r) < 1e-12, "t={t}: {r:?}");
        assert!(residual_of(instanton::hopf_sd, DualitySign::SelfDual, t) < 1e-8);
    }
}

#[test]
fn quoted_hopf_fails_both_branches() {
    for sign in [DualitySign::SelfDual, DualitySign::AntiSelfDual] {
        assert!(residual_of(hopf_printed, sign, 0.5) > 0.1);
    }
}

#[test]
fn eminus3_needs_negation() {
    let e = closed_form_profile(ProfileKind::ClosedFormEminus3).unwrap();
    for t in [0.1, 0.35, 0.5, 0.77, 0.93] {
        let r = duality_residual(&e, DualitySign::AntiSelfDual, t, true).unwrap();
        assert!(max_abs(r) < 1e-12);
        let r = duality_residual(&e, DualitySign::AntiSelfDual, t, false).unwrap();
        assert!(max_abs(r) > 1e-2);
    }
}

#[test]
fn trivial_is_fixed_point() {
    let p = closed_form_profile(ProfileKind::ClosedFormTrivial).unwrap();
    for sign in [DualitySign::SelfDual, DualitySign::AntiSelfDual] {
        assert_eq!(duality_residual(&p, sign, 0.42, false).unwrap(), [0.0; 3]);
    }
}

fn flip(a: [f64; 3], pair: usize) -> [f64; 3] {
    let mut a = a;
    a[(pair + 1) % 3] *= -1.0;
    a[(pair + 2) % 3] *= -1.0;
    a
}

proptest! {
    #[test]
    fn two_sign_flips_preserve_solutions(t in 0.05f64..0.95, pair in 0usize..3) {
        let rhs = |s: DualitySign, v: [f64; 3]| instanton::asd_rhs(s, t, v).unwrap();
        for (sign, f) in [(DualitySign::SelfDual, instanton::hopf_sd as fn(f64) -> [f64; 3]), (DualitySign::AntiSelfDual, eminus3)] {
            let base = if sign == DualitySign::AntiSelfDual { f(t).map(|v| -v) } else { f(t) };
            let d0 = rhs(sign, base);
            let d1 = rhs(sign, flip(base, pair));
            let expect = flip(d0, pair);
            for i in 0..3 {
                prop_assert!((d1[i] - expect[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn conserved_trace_constant_on_closed_forms(t in 0.05f64..0.95) {
        prop_assert!((conserved_tr_values([1.0; 3], t).unwrap() - 0.125).abs() < 1e-12);
        prop_assert!((conserved_tr_values(eminus3(t), t).unwrap() - 1.125).abs() < 1e-12);
    }
}

#[test]
fn hopf_conserved_trace_is_constant() {
    let hopf = closed_form_profile(ProfileKind::ClosedFormHopfSD).unwrap();
    let a = conserved_tr(&hopf, 0.3).unwrap();
    let b = conserved_tr(&hopf, 0.7).unwrap();
    assert!((a - b).abs() < 1e-9, "{a} {b}");
}

fn sup_diff_up_to_signs(p: &ProfileTriple, f: fn(f64) -> [f64; 3]) -> (f64, [f64; 3]) {
    let mut best = (f64::INFINITY, [1.0; 3]);
    for mask in 0..8 {
        let s = [0, 1, 2].map(|i| if mask >> i & 1 == 1 { -1.0 } else { 1.0 });
        let d = p
            .points()
            .iter()
            .map(|pt| {
                let e = f(pt.t);
                max_abs([0, 1, 2].map(|i| pt.a[i] - s[i] * e[i]))
            })
            .fold(0.0, f64::max);
        if d < best.0 {
            best = (d, s);
        }
    }
    best
}

#[test]
fn bvp_n1_is_trivial() {
    let sol = solve_bvp(&BvpConfig::new(1)).unwrap();
    let (d, _) = sup_diff_up_to_signs(&sol.profile, |_| [1.0; 3]);
    assert!(d < 1e-8);
}

#[test]
fn bvp_n3_reproduces_eminus3() {
    let sol = solve_bvp(&BvpConfig::new(3)).unwrap();
    let (d, signs) = sup_diff_up_to_signs(&sol.profile, eminus3);
    assert!(d < 1e-7, "sup diff {d}");
    assert_eq!(signs, [1.0, 1.0, -1.0]);
    let (a0, a1) = sol.endpoint_values();
    assert!((a0[0] - 1.0).abs() < 1e-8);
    assert!((a1[1] + 3.0).abs() < 1e-8 && a1[0].abs() < 1e-8 && a1[2].abs() < 1e-8);

    let pts = sol.profile.points();
    let mut worst: f64 = 0.0;
    for k in 2..pts.len() - 2 {
        let r = duality_residual_at(&sol.profile, DualitySign::AntiSelfDual, k, false).unwrap();
        worst = worst.max(max_abs(r));
    }
    assert!(worst < 1e-8, "grid duality residual {worst:e}");

    let trs: Vec<f64> = pts.iter().step_by(4).map(|p| conserved_tr_values(p.a, p.t).unwrap()).collect();
    let spread = trs.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - trs.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(spread < 1e-6 * 1.125);
}

#[test]
fn grid_rejects_off_node() {
    let e = closed_form_profile(ProfileKind::ClosedFormEminus3).unwrap();
    let g = e.sampled(&[0.1, 0.2, 0.3, 0.4, 0.5, 0.6]).unwrap();
    assert!(duality_residual(&g, DualitySign::AntiSelfDual, 0.25, true).is_err());
    assert!(duality_residual(&g, DualitySign::AntiSelfDual, 0.3, true).is_ok());
}

#[test]
fn bvp_n5_converges() {
    let sol = solve_bvp(&BvpConfig::new(5)).unwrap();
    let (a0, a1) = sol.endpoint_values();
    assert!((a0[0] - 1.0).abs() < 1e-8);
    assert!((a1[1] + 5.0).abs() < 1e-8);
    let pts = sol.profile.points();
    let worst = (2..pts.len() - 2)
        .map(|k| max_abs(duality_residual_at(&sol.profile, DualitySign::AntiSelfDual, k, false).unwrap()))
        .fold(0.0, f64::max);
    assert!(worst < 1e-8, "grid duality residual {worst:e}, params {:?}", sol.params);
    let trs: Vec<f64> = pts.iter().map(|p| conserved_tr_values(p.a, p.t).unwrap()).collect();
    let (lo, hi) = trs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
    assert!(hi - lo < 1e-6 * hi.abs(), "{lo} {hi}");
}
