use instanton::eminus3_asd;
use isomonodromy::{
    common_eigenvector_defect, extract_y, isospectral_drift, jimbo_miwa_params, pair_invariants, schlesinger_integrate,
    schlesinger_residual, schlesinger_rhs, Branch, FuchsianFamily, IsoError,
};
use liealg::{commutator, TracelessMat2, C64};
use numerics::grid;
use proptest::prelude::*;
use twistor::{cross_ratio, fuchsian_data, FuchsianData};

fn trivial(_: f64) -> [f64; 3] {
    [1.0; 3]
}

fn family(f: fn(f64) -> [f64; 3], n: i32, len: usize) -> FuchsianFamily {
    let ts = grid::logit(0.05, 0.95, len);
    FuchsianFamily::build("test", n, &ts, |t| Ok(f(t))).unwrap()
}

fn max_residual(fam: &FuchsianFamily) -> f64 {
    (2..fam.len() - 2).map(|k| schlesinger_residual(fam, k).unwrap()).fold(0.0, f64::max)
}

fn mat(c: [(f64, f64); 3]) -> TracelessMat2 {
    TracelessMat2::from_su_coeffs(c.map(|(re, im)| C64::new(re, im)))
}

fn data(x: f64, a0: TracelessMat2, a1: TracelessMat2, ax: TracelessMat2) -> FuchsianData {
    FuchsianData { t: 0.5, x: C64::new(x, 0.0), a0, a1, ax, ainf: -(a0 + a1 + ax) }
}

#[test]
fn commuting_residues_are_stationary() {
    let d = TracelessMat2::x1();
    let f = data(2.5, d * 0.3, d * -1.2, d * 0.7);
    for m in schlesinger_rhs(&f).unwrap() {
        assert_eq!(m.frobenius(), 0.0);
    }
}

#[test]
fn fixed_poles_are_rejected() {
    let d = TracelessMat2::x1();
    let f = data(1.0, d, d, d);
    assert!(matches!(schlesinger_rhs(&f), Err(IsoError::BadDeformationParameter { .. })));
}

proptest! {
    #[test]
    fn rhs_keeps_sum_and_spectra(c in prop::array::uniform18(-2.0f64..2.0), x in 1.1f64..6.0) {
        let m = |o: usize| mat([(c[o], c[o + 1]), (c[o + 2], c[o + 3]), (c[o + 4], c[o + 5])]);
        let f = data(x, m(0), m(6), m(12));
        let d = schlesinger_rhs(&f).unwrap();
        prop_assert!((d[0] + d[1] + d[2]).frobenius() < 1e-12);
        for (a, da) in [(f.a0, d[0]), (f.a1, d[1]), (f.ax, d[2])] {
            let s = (a.mat() * da.mat()).trace();
            prop_assert!(s.norm() < 1e-11 * (1.0 + a.frobenius() * da.frobenius()));
        }
    }
}

#[test]
fn instanton_families_satisfy_schlesinger() {
    for (f, n) in [(trivial as fn(f64) -> [f64; 3], 1), (eminus3_asd, 3)] {
        let r = max_residual(&family(f, n, 201));
        assert!(r < 1e-6, "n={n}: {r:e}");
    }
}

#[test]
fn perturbed_residue_breaks_schlesinger() {
    let fam = family(trivial, 1, 201);
    let bumped = fam.map_residues(|_, p, a| if p == twistor::PoleLabel::Zero { a + TracelessMat2::x2() * 1e-3 } else { a });
    assert!(max_residual(&bumped) > 1e-4);
}

#[test]
fn schlesinger_residual_converges_at_fourth_order() {
    let r: Vec<f64> = [101, 201, 401].iter().map(|&n| max_residual(&family(eminus3_asd, 3, n))).collect();
    for w in r.windows(2) {
        let slope = (w[0] / w[1]).log2();
        assert!(slope > 3.5, "{r:?}");
    }
}

#[test]
fn spectra_are_constant() {
    let fam = family(trivial, 1, 51);
    for d in isospectral_drift(&fam).unwrap() {
        assert!(d < 1e-8);
    }
    let fam = family(eminus3_asd, 3, 51);
    assert!(isospectral_drift(&fam).unwrap()[3] < 1e-8);
    assert!((fam.samples[20].ainf.trace_sq() - 1.125).norm() < 1e-8);

    let scaled = fam.map_residues(|k, _, a| a * (1.0 + fam.samples[k].t));
    assert!(isospectral_drift(&scaled).unwrap().iter().all(|&d| d > 0.1));
}

#[test]
fn drift_needs_two_samples() {
    let fam = family(trivial, 1, 1);
    assert!(matches!(isospectral_drift(&fam), Err(IsoError::TooShort { .. })));
}

#[test]
fn apparent_singularity_is_a_common_eigenvector_point() {
    for f in [trivial as fn(f64) -> [f64; 3], eminus3_asd] {
        for t in [0.15, 0.4, 0.7, 0.9] {
            let d = fuchsian_data(f(t), t).unwrap();
            let ys: Vec<C64> = Branch::BOTH.iter().map(|&b| extract_y(&d, b).unwrap()).collect();
            assert!((ys[0] - ys[1]).norm() > 1e-6);
            for (&b, &y) in Branch::BOTH.iter().zip(&ys) {
                for p in [C64::ZERO, C64::ONE, d.x] {
                    assert!((y - p).norm() > 1e-6);
                }
                assert!(common_eigenvector_defect(&d, y, b).unwrap() < 1e-8);
                // the other point of the line is not a common eigenvector point
                assert!(common_eigenvector_defect(&d, y + 0.1, b).unwrap() > 1e-4);
            }
        }
    }
}

#[test]
fn diagonal_system_is_reducible() {
    let d = TracelessMat2::x1();
    let f = data(2.0, d * 0.3, d * 0.5, d * 0.1);
    assert_eq!(extract_y(&f, Branch::Plus), Err(IsoError::ReducibleSystem));
}

#[test]
fn parameters_of_instanton_families() {
    for (f, n) in [(trivial as fn(f64) -> [f64; 3], 1.0), (eminus3_asd, 3.0)] {
        for t in [0.2, 0.5, 0.8] {
            let d = fuchsian_data(f(t), t).unwrap();
            let mut alphas = vec![];
            for b in Branch::BOTH {
                let p = jimbo_miwa_params(&d, b).unwrap();
                assert!((p.beta.re + n * n / 8.0).abs() < 1e-10 && p.beta.im.abs() < 1e-10);
                assert!((p.gamma.re - n * n / 8.0).abs() < 1e-10);
                alphas.push(p.alpha.re);
            }
            alphas.sort_by(f64::total_cmp);
            let lo = (n - 2.0f64).powi(2) / 8.0;
            let hi = (n + 2.0f64).powi(2) / 8.0;
            assert!((alphas[0] - lo).abs() < 1e-10 && (alphas[1] - hi).abs() < 1e-10, "{alphas:?}");
        }
    }
}

#[test]
fn flow_is_trivial_on_zero_path() {
    let d = fuchsian_data([1.0; 3], 0.4).unwrap();
    assert_eq!(schlesinger_integrate(&d, d.x, 10).unwrap(), d);
}

#[test]
fn flow_reproduces_direct_construction() {
    for f in [trivial as fn(f64) -> [f64; 3], eminus3_asd] {
        let d0 = fuchsian_data(f(0.4), 0.4).unwrap();
        let d1 = fuchsian_data(f(0.6), 0.6).unwrap();
        let prop = schlesinger_integrate(&d0, d1.x, 50).unwrap();
        let (a, b) = (pair_invariants(&prop), pair_invariants(&d1));
        for k in 0..6 {
            assert!((a[k] - b[k]).norm() < 1e-7, "{k}: {} vs {}", a[k], b[k]);
        }
        let (a0, b0) = (pair_invariants(&d0), pair_invariants(&prop));
        for k in [0, 3, 5] {
            assert!((a0[k] - b0[k]).norm() < 1e-10);
        }
    }
}

#[test]
fn flow_refuses_paths_through_poles() {
    let d = fuchsian_data([1.0; 3], 0.4).unwrap();
    let r = schlesinger_integrate(&d, C64::new(1.0005, 0.0), 10);
    assert!(matches!(r, Err(IsoError::PathTooClose { .. })));
    assert!(cross_ratio(0.4).unwrap() > 1.0);
}

#[test]
fn wrong_profile_sign_is_not_isomonodromic_without_conjugation() {
    // a global sign flip changes the sign of dA/dx but not of the commutators
    let fam = family(|t| eminus3_asd(t).map(|v| -v), 3, 201);
    assert!(max_residual(&fam) > 1e-3);
    let _ = commutator(&TracelessMat2::x1(), &TracelessMat2::x2());
}
