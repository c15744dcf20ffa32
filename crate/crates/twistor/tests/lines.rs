use liealg::C64;
use proptest::prelude::*;
use twistor::*;

/// `μ₊` as the small root of `8t³μ² - 2(t⁴+18t²-27)μ + 8t³`, by Newton from
/// `μ = 0`, without using `μ₊μ₋ = 1`.
fn mu_plus_root(t: f64) -> f64 {
    let (a, b) = (8.0 * t * t * t, 2.0 * (t.powi(4) + 18.0 * t * t - 27.0));
    let mut m = 0.0;
    for _ in 0..60 {
        let step = (a * m * m - b * m + a) / (2.0 * a * m - b);
        m -= step;
        if step.abs() <= 1e-17 * m.abs() {
            break;
        }
    }
    m
}

#[test]
fn mu_product_is_one() {
    for k in 0..1000 {
        let t = (k + 1) as f64 / 1001.0;
        let (_, mm) = mu_pm(t);
        assert!((mu_plus_root(t) * mm - 1.0).abs() < 1e-12, "t = {t}");
    }
}

#[test]
fn poles_lie_on_the_divisor() {
    for t in [0.05, 0.3, 0.5, 0.77, 0.95] {
        let g = poles(t).unwrap();
        let scale = 8.0 * t.powi(3) * g.z[0].norm().powi(4);
        for z in g.z {
            assert!(delta(t, z).norm() < 1e-12 * scale.max(1.0));
        }
    }
}

#[test]
fn cross_ratio_increases() {
    let xs: Vec<f64> = (1..1000).map(|k| cross_ratio(k as f64 / 1000.0).unwrap()).collect();
    assert!(xs.windows(2).all(|w| w[0] < w[1]));
    assert!(xs.iter().all(|&x| x > 1.0));
}

#[test]
fn residue_oracle() {
    for k in 1..10 {
        let t = k as f64 / 10.0;
        let table = residue_closed_form(t).unwrap();
        for i in 0..3 {
            for p in PoleLabel::ALL {
                let q = residue_numeric(t, i, p).unwrap();
                assert!((q - table.get(i, p)).norm() < 1e-8);
            }
        }
    }
}

#[test]
fn residue_limits_at_one() {
    for i in [0, 2] {
        let (v, err) = residue_limit_t1(i, PoleLabel::Infinity).unwrap();
        assert!(v.norm() < 1e-6 && err < 1e-6);
    }
    let (v, err) = residue_limit_t1(1, PoleLabel::Infinity).unwrap();
    assert!(err < 1e-6);
    // the magnitude is 1/4; the sign depends on the branch of √μ₋ used
    // for z1, see `residue_closed_form`
    assert!((v - C64::new(0.0, -0.25)).norm() < 1e-6, "{v}");
}

proptest! {
    #[test]
    fn fuchsian_data_relations(a in prop::array::uniform3(-3.0f64..3.0), t in 0.02f64..0.98) {
        let f = fuchsian_data(a, t).unwrap();
        let scale = f.residues().iter().map(|m| m.frobenius()).fold(1.0, f64::max);
        prop_assert!(f.sum_defect() < 1e-12);
        prop_assert!(f.reality_defect() < 1e-11 * scale);
        let ctr = -2.0 * (0..3).map(|i| a[i] * a[i] * residue_closed_form(t).unwrap().get(i, PoleLabel::Infinity).powi(2)).sum::<C64>();
        prop_assert!((f.ainf.trace_sq() - ctr).norm() < 1e-11 * scale * scale);
    }

    #[test]
    fn numeric_residues_sum_to_zero(t in 0.05f64..0.95, i in 0usize..3) {
        let s: C64 = PoleLabel::ALL.iter().map(|&p| residue_numeric(t, i, p).unwrap()).sum();
        prop_assert!(s.norm() < 1e-9);
    }
}

#[test]
fn off_line_parameters_are_rejected() {
    assert!(matches!(fuchsian_data([1.0; 3], 1.0), Err(TwistorError::DegenerateLine { .. })));
    let g = poles(0.4).unwrap();
    assert!(matches!(connection_form([1.0; 3], 0.4, g.z[1]), Err(TwistorError::OnDivisor { .. })));
}
