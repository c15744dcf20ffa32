//! Acceptance suite: one pass/fail line per criterion, then a single
//! assertion over all of them.

use std::time::{Duration, Instant};

use cli::pipeline::{pvi_checks, sample_grid, verify};
use cli::{Command, RunConfig};
use instanton::{
    asd_rhs, duality_residual_at, eminus3, eminus3_asd, eminus3_deriv, hopf_sd, hopf_sd_deriv, solve_bvp, BvpConfig,
    DualitySign, ProfileKind, ProfileTriple,
};
use isomonodromy::{
    isospectral_drift, jimbo_miwa_params, pair_invariants, schlesinger_integrate, schlesinger_residual_detail, Branch,
    FuchsianFamily, PviParams,
};
use liealg::C64;
use numerics::grid;
use painleve::{pvi_max_residual, DeltaVariant, PviSample};
use rand::{rngs::StdRng, Rng, SeedableRng};
use twistor::{fuchsian_data, mu_pm, residue_closed_form, residue_limit_t1, residue_numeric, PoleLabel};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn trivial(_: f64) -> [f64; 3] {
    [1.0; 3]
}

fn closed(n: i32) -> fn(f64) -> [f64; 3] {
    if n == 1 {
        trivial
    } else {
        eminus3_asd
    }
}

fn family(f: fn(f64) -> [f64; 3], n: i32, len: usize) -> FuchsianFamily {
    let ts = grid::logit(0.05, 0.95, len);
    FuchsianFamily::build("acceptance", n, &ts, |t| Ok(f(t))).unwrap()
}

fn max_abs(v: [f64; 3]) -> f64 {
    v.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

fn duality_defect(sign: DualitySign, a: [f64; 3], da: [f64; 3], t: f64) -> f64 {
    let k = [1, 2, 3].map(|i| instanton::coeff_k(i, t).unwrap());
    let rhs = asd_rhs(sign, t, a).unwrap();
    // compare ±½K ȧ with a_j a_k - a_i through the solved form
    (0..3).map(|i| (0.5 * k[i] * (da[i] - rhs[i])).abs()).fold(0.0, f64::max)
}

fn criterion_1() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    let (mut sd, mut asd) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let t = rng.gen_range(0.05..0.95);
        sd = sd.max(duality_defect(DualitySign::SelfDual, hopf_sd(t), hopf_sd_deriv(t), t));
        let neg = eminus3(t).map(|v| -v);
        let dneg = eminus3_deriv(t).map(|v| -v);
        asd = asd.max(duality_defect(DualitySign::AntiSelfDual, neg, dneg, t));
    }
    outcome(sd < 1e-12 && asd < 1e-12, format!("Hopf SD residual {sd:.2e}, -E_-3 ASD residual {asd:.2e} (< 1e-12)"))
}

/// `μ₊` as the small root of the divisor quadratic, by Newton from 0.
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

fn criterion_2() -> Outcome {
    let (mut lib, mut indep) = (0.0f64, 0.0f64);
    for k in 1..=1000 {
        let t = k as f64 / 1001.0;
        let (mp, mm) = mu_pm(t);
        lib = lib.max((mp * mm - 1.0).abs());
        indep = indep.max((mu_plus_root(t) * mm - 1.0).abs());
    }
    outcome(
        lib < 1e-12 && indep < 1e-12,
        format!("max |mu+ mu- - 1| = {lib:.2e} (library), {indep:.2e} (mu+ as divisor root) (< 1e-12)"),
    )
}

fn criterion_3() -> Outcome {
    let mut oracle = 0.0f64;
    for k in 1..10 {
        let t = k as f64 / 10.0;
        let table = residue_closed_form(t).unwrap();
        for i in 0..3 {
            for p in PoleLabel::ALL {
                oracle = oracle.max((residue_numeric(t, i, p).unwrap() - table.get(i, p)).norm());
            }
        }
    }
    let (a1, e1) = residue_limit_t1(0, PoleLabel::Infinity).unwrap();
    let (a2, e2) = residue_limit_t1(1, PoleLabel::Infinity).unwrap();
    let (a3, e3) = residue_limit_t1(2, PoleLabel::Infinity).unwrap();
    let target = C64::new(0.0, 0.25);
    let lim_err = [(a1 - C64::new(0.0, 0.0)).norm(), (a2 - target).norm(), a3.norm()];
    let extrap = e1.max(e2).max(e3);
    let pass = oracle < 1e-8 && lim_err.iter().all(|&e| e < 1e-6) && extrap < 1e-6;
    outcome(
        pass,
        format!(
            "quadrature oracle {oracle:.2e} (< 1e-8); t->1 limits a1 = {a1:.3e}, a2 = {a2:.9}, a3 = {a3:.3e}; \
             |a2 - i/4| = {:.3e}, extrapolation error {extrap:.1e} (< 1e-6)",
            lim_err[1]
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut pass = true;
    let mut parts = vec![];
    for n in [1, 3] {
        let fam = family(closed(n), n, 201);
        let drift = isospectral_drift(&fam).unwrap().into_iter().fold(0.0, f64::max);
        let expected = f64::from(n * n) / 8.0;
        let tr = fam.samples.iter().map(|s| (s.ainf.trace_sq() - expected).norm()).fold(0.0, f64::max);
        pass &= drift < 1e-8 && tr < 1e-8;
        parts.push(format!("n={n}: drift {drift:.2e}, |tr(Ainf^2) - n^2/8| {tr:.2e}"));
    }
    outcome(pass, format!("{} (< 1e-8)", parts.join("; ")))
}

fn schlesinger_max(fam: &FuchsianFamily) -> (f64, f64) {
    (2..fam.len() - 2).fold((0.0, 0.0), |(s, a), k| {
        let r = schlesinger_residual_detail(fam, k).unwrap();
        (f64::max(s, r.value()), f64::max(a, r.gauge_reduced))
    })
}

fn criterion_5() -> Outcome {
    let mut pass = true;
    let mut parts = vec![];
    for n in [1, 3] {
        let (scaled, abs) = schlesinger_max(&family(closed(n), n, 201));
        pass &= scaled < 1e-6;
        parts.push(format!("n={n}: residual {scaled:.2e} (absolute {abs:.2e})"));
    }
    let mut prop = 0.0f64;
    for n in [1, 3] {
        let f = closed(n);
        for (t0, t1) in [(0.4, 0.6), (0.2, 0.3), (0.6, 0.85)] {
            let d0 = fuchsian_data(f(t0), t0).unwrap();
            let d1 = fuchsian_data(f(t1), t1).unwrap();
            let p = schlesinger_integrate(&d0, d1.x, 50).unwrap();
            let (a, b) = (pair_invariants(&p), pair_invariants(&d1));
            prop = prop.max((0..6).map(|k| (a[k] - b[k]).norm()).fold(0.0, f64::max));
        }
    }
    pass &= prop < 1e-7;
    outcome(pass, format!("{} (< 1e-6); propagation oracle {prop:.2e} (< 1e-7)", parts.join("; ")))
}

fn criterion_6() -> Outcome {
    let fam = family(eminus3_asd, 3, 201);
    let mid = fam.len() / 2;
    let p: Vec<PviParams> = Branch::BOTH.iter().map(|&b| jimbo_miwa_params(&fam.samples[mid], b).unwrap()).collect();
    let mut alphas = [p[0].alpha.re, p[1].alpha.re];
    alphas.sort_by(f64::total_cmp);
    let alpha_ok = (alphas[0] - 0.125).abs() < 1e-7 && (alphas[1] - 3.125).abs() < 1e-7;
    let beta = p[0].beta.re;
    let gamma = p[0].gamma.re;
    let delta = p[0].delta.re;
    let bg_ok = (beta + 1.125).abs() < 1e-7 && (gamma - 1.125).abs() < 1e-7;
    let hits: Vec<&str> =
        DeltaVariant::BOTH.iter().filter(|v| (v.delta(3) - delta).abs() < 1e-7).map(|v| v.name()).collect();
    let mut spread = 0.0f64;
    for s in &fam.samples {
        for (i, &b) in Branch::BOTH.iter().enumerate() {
            let q = jimbo_miwa_params(s, b).unwrap();
            spread = spread.max(q.max_diff(&p[i]));
        }
    }
    let pass = alpha_ok && bg_ok && hits.len() == 1 && spread < 1e-7;
    outcome(
        pass,
        format!(
            "alpha = {{{:.10}, {:.10}}}, beta = {beta:.10}, gamma = {gamma:.10}, delta = {delta:.10} selects {hits:?} \
             (intro -5/8, theorem -1); spread over samples {spread:.2e} (< 1e-7)",
            alphas[0], alphas[1]
        ),
    )
}

fn criterion_7() -> Outcome {
    let fam = family(eminus3_asd, 3, 201);
    let mid = fam.len() / 2;
    let (mut res, mut integ, mut rej_res, mut rej_int) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for b in Branch::BOTH {
        let s = PviSample::from_family(&fam, b).unwrap();
        let p = jimbo_miwa_params(&fam.samples[mid], b).unwrap();
        let (r, _, i) = pvi_checks(&s, &p).unwrap();
        let wrong = PviParams { delta: C64::new(DeltaVariant::TheoremDelta.delta(3), 0.0), ..p };
        let (rr, _, ri) = pvi_checks(&s, &wrong).unwrap();
        res = res.max(r);
        integ = integ.max(i);
        rej_res = rej_res.max(rr);
        rej_int = rej_int.max(ri);
    }
    let pass = res < 1e-5 && integ < 1e-6 && rej_res > 1e-4 && rej_int > 1e-4;
    outcome(
        pass,
        format!(
            "PVI residual {res:.2e} (< 1e-5), single-step integration {integ:.2e} (< 1e-6); \
             rejected delta: residual {rej_res:.2e}, integration {rej_int:.2e} (> 1e-4)"
        ),
    )
}

fn criterion_8() -> Outcome {
    let sol = match solve_bvp(&BvpConfig::new(5)) {
        Ok(s) => s,
        Err(e) => return outcome(false, format!("solve_bvp failed: {e}")),
    };
    let (a0, a1) = sol.endpoint_values();
    let bc = [(a0[0] - 1.0).abs(), (a1[1] + 5.0).abs(), a1[0].abs(), a1[2].abs()].into_iter().fold(0.0, f64::max);
    let ts = sample_grid(0.05, 0.95, 201);
    let fam = FuchsianFamily::from_values("bvp", 5, &ts, &sol.sample(&ts).unwrap()).unwrap();
    let tr = fam.samples.iter().map(|s| (s.ainf.trace_sq() - 25.0 / 8.0).norm()).fold(0.0, f64::max);
    let mut cfg = RunConfig::new(Command::Verify, 5);
    cfg.tol = Some(1e-5);
    let report = verify(&cfg).unwrap();
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
    let pass = bc < 1e-8 && tr < 1e-6 && report.passed;
    outcome(
        pass,
        format!(
            "converged in {} iterations (defect {:.1e}); boundary data {bc:.2e} (< 1e-8); |tr(Ainf^2) - 25/8| {tr:.2e} \
             (< 1e-6); suite at 1e-5: schlesinger {:.2e}, drift {:.2e}, pvi {:.2e}, delta {:?}, failed checks {failed:?}",
            sol.iters,
            sol.defect,
            report.schlesinger_max_residual,
            report.isospectral_drift.iter().copied().fold(0.0, f64::max),
            report.branches.iter().map(|b| b.pvi_max_residual).fold(0.0, f64::max),
            report.delta_variant,
        ),
    )
}

/// Least-squares slope of `log r` against `log h`, with `h ∝ 1/(len-1)`.
fn slope(lens: &[usize], r: &[f64]) -> f64 {
    let xs: Vec<f64> = lens.iter().map(|&l| -((l - 1) as f64).ln()).collect();
    let ys: Vec<f64> = r.iter().map(|v| v.ln()).collect();
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}

fn criterion_9() -> Outcome {
    let lens = [51, 101, 201, 401];
    let mut suites: Vec<(&str, Vec<f64>)> = vec![];
    let duality: Vec<f64> = lens
        .iter()
        .map(|&l| {
            let g = ProfileTriple::closed(ProfileKind::ClosedFormEminus3, 3).sampled(&grid::cosine(0.05, 0.95, l)).unwrap();
            (2..l - 2)
                .map(|k| max_abs(duality_residual_at(&g, DualitySign::AntiSelfDual, k, true).unwrap()))
                .fold(0.0, f64::max)
        })
        .collect();
    suites.push(("duality E-3", duality));
    for n in [1, 3] {
        let r = lens.iter().map(|&l| schlesinger_max(&family(closed(n), n, l)).0).collect();
        suites.push((if n == 1 { "schlesinger n=1" } else { "schlesinger n=3" }, r));
    }
    let pvi = lens
        .iter()
        .map(|&l| {
            let fam = family(eminus3_asd, 3, l);
            Branch::BOTH
                .iter()
                .map(|&b| {
                    let s = PviSample::from_family(&fam, b).unwrap();
                    let p = jimbo_miwa_params(&fam.samples[l / 2], b).unwrap();
                    pvi_max_residual(&s, &p).unwrap()
                })
                .fold(0.0, f64::max)
        })
        .collect();
    suites.push(("pvi n=3", pvi));
    let mut pass = true;
    let mut parts = vec![];
    for (name, r) in &suites {
        let s = slope(&lens, r);
        pass &= s >= 3.0;
        parts.push(format!("{name} slope {s:.2} ({:.1e} -> {:.1e})", r[0], r[r.len() - 1]));
    }
    outcome(pass, format!("{} (>= 3, grids {lens:?})", parts.join("; ")))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome, Duration); 9] = [
        ("closed-form duality", criterion_1, Duration::from_secs(1)),
        ("mu-product identity", criterion_2, Duration::from_secs(1)),
        ("residue-table oracle", criterion_3, Duration::from_secs(10)),
        ("conserved quantities", criterion_4, Duration::from_secs(5)),
        ("Schlesinger verification", criterion_5, Duration::from_secs(30)),
        ("PVI parameters", criterion_6, Duration::from_secs(5)),
        ("PVI closure", criterion_7, Duration::from_secs(30)),
        ("BVP end-to-end n=5", criterion_8, Duration::from_secs(300)),
        ("convergence order", criterion_9, Duration::from_secs(120)),
    ];
    let mut failed = vec![];
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let took = start.elapsed();
        let pass = o.pass && took <= *limit;
        println!(
            "criterion {}: {} [{name}] {} ({:.2} s, limit {} s)",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            took.as_secs_f64(),
            limit.as_secs()
        );
        if !pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
