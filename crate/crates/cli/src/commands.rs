use isomonodromy::{jimbo_miwa_params, FuchsianFamily, PviParams};
use liealg::TracelessMat2;
use log::info;
use painleve::{pvi_integrate_through, pvi_residual, DeltaVariant, PviSample};
use serde_json::{json, Value};
use twistor::{mu_pm, FuchsianData};

use crate::output::{csv, emit, json as to_json, sibling};
use crate::pipeline::{sample_grid, verify, ProfileSource, SIGN_CONVENTION};
use crate::{CliError, Command, DeltaPreference, Format, RunConfig};

/// Run one command and map the outcome to the process exit code, printing
/// a JSON diagnostic on stderr for failures.
pub fn run(cfg: &RunConfig) -> i32 {
    let res = cfg.validate().and_then(|_| match cfg.command {
        Command::Profile => cmd_profile(cfg),
        Command::Trace => cmd_trace(cfg),
        Command::Verify => cmd_verify(cfg),
        Command::PviIntegrate => cmd_pvi_integrate(cfg),
    });
    match res {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.diagnostic());
            e.exit_code()
        }
    }
}

fn grid(cfg: &RunConfig) -> Vec<f64> {
    sample_grid(cfg.t_min, cfg.t_max, cfg.samples)
}

/// Profile `(a1, a2, a3)` on the sample grid.
pub fn cmd_profile(cfg: &RunConfig) -> Result<(), CliError> {
    let src = ProfileSource::for_n(cfg.n)?;
    let ts = grid(cfg);
    let vals = src.sample(&ts)?;
    let body = match cfg.format {
        Format::Csv => csv(&["t", "a1", "a2", "a3"], ts.iter().zip(&vals).map(|(&t, a)| vec![t, a[0], a[1], a[2]])),
        Format::Json => {
            let points: Vec<Value> =
                ts.iter().zip(&vals).map(|(&t, a)| json!({"t": t, "a1": a[0], "a2": a[1], "a3": a[2]})).collect();
            to_json(&json!({"n": cfg.n, "kind": src.kind(), "sign_convention": SIGN_CONVENTION, "points": points}))?
        }
    };
    emit(cfg.output_path.as_deref(), &body)
}

fn matrix_json(m: &TracelessMat2) -> Value {
    let e = |r, c| {
        let z = m.entry(r, c);
        json!([z.re, z.im])
    };
    json!([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
}

fn fuchsian_json(f: &FuchsianData) -> Value {
    json!({
        "t": f.t,
        "x": {"re": f.x.re, "im": f.x.im},
        "residues": {
            "p0": matrix_json(&f.a0),
            "p1": matrix_json(&f.a1),
            "px": matrix_json(&f.ax),
            "pinf": matrix_json(&f.ainf),
        }
    })
}

fn branch_params(fam: &FuchsianFamily, b: painleve::Branch, pref: DeltaPreference) -> Result<(PviParams, Option<DeltaVariant>), CliError> {
    let p = jimbo_miwa_params(&fam.samples[fam.len() / 2], b)?;
    let v = match pref {
        DeltaPreference::Auto => None,
        DeltaPreference::Intro => Some(DeltaVariant::IntroDelta),
        DeltaPreference::Theorem => Some(DeltaVariant::TheoremDelta),
    };
    let p = v.map_or(p, |v| PviParams { delta: liealg::C64::new(v.delta(fam.n), 0.0), ..p });
    Ok((p, v))
}

fn params_json(p: &PviParams) -> Value {
    json!({"alpha": p.alpha.re, "beta": p.beta.re, "gamma": p.gamma.re, "delta": p.delta.re})
}

fn pvi_rows(s: &PviSample, residual: impl Fn(usize) -> Option<f64>) -> Vec<Vec<f64>> {
    s.points
        .iter()
        .enumerate()
        .map(|(k, q)| vec![q.t, q.x.re, q.x.im, q.y.re, q.y.im, residual(k).unwrap_or(f64::NAN)])
        .collect()
}

const PVI_HEADER: [&str; 6] = ["t", "x_re", "x_im", "y_re", "y_im", "residual_abs"];

fn pvi_body(format: Format, rows: &[Vec<f64>], meta: Value) -> Result<String, CliError> {
    Ok(match format {
        Format::Csv => csv(&PVI_HEADER, rows.iter().cloned()),
        Format::Json => {
            let points: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let mut o = serde_json::Map::new();
                    for (h, v) in PVI_HEADER.iter().zip(r) {
                        o.insert(h.to_string(), if v.is_finite() { json!(v) } else { Value::Null });
                    }
                    Value::Object(o)
                })
                .collect();
            let mut m = meta;
            m["points"] = Value::Array(points);
            to_json(&m)?
        }
    })
}

/// Twistor-line trace (`x`, `tr(A_p²)`, `μ±`) to `--out`; with `--out`,
/// also one PVI trace per eigenvalue branch next to it.
pub fn cmd_trace(cfg: &RunConfig) -> Result<(), CliError> {
    let src = ProfileSource::for_n(cfg.n)?;
    let ts = grid(cfg);
    let fam = src.family(cfg.n, &ts)?;
    let body = match cfg.format {
        Format::Csv => {
            let header = [
                "t", "x_re", "x_im", "trA0sq", "trA1sq", "trAxsq", "trAinfsq", "mu_plus", "mu_minus", "mu_product",
            ];
            let rows = fam.samples.iter().map(|f| {
                let (mp, mm) = mu_pm(f.t);
                let tr = f.residues().map(|a| a.trace_sq().re);
                vec![f.t, f.x.re, f.x.im, tr[0], tr[1], tr[2], tr[3], mp, mm, mp * mm]
            });
            csv(&header, rows)
        }
        Format::Json => {
            let samples: Vec<Value> = fam.samples.iter().map(fuchsian_json).collect();
            to_json(&json!({"n": cfg.n, "kind": src.kind(), "samples": samples}))?
        }
    };
    emit(cfg.output_path.as_deref(), &body)?;
    if let Some(out) = cfg.output_path.as_deref() {
        for b in painleve::Branch::BOTH {
            let s = PviSample::from_family(&fam, b)?;
            let (p, v) = branch_params(&fam, b, cfg.delta_variant)?;
            let len = s.len();
            let rows = pvi_rows(&s, |k| (2..len - 2).contains(&k).then(|| pvi_residual(&s, &p, k).ok().map(|r| r.norm())).flatten());
            let meta = json!({"n": cfg.n, "branch": b.name(), "params": params_json(&p), "delta_variant": v.map(|v| v.name())});
            let path = sibling(out, &format!("pvi_{}", b.name()), cfg.format.extension());
            emit(Some(&path), &pvi_body(cfg.format, &rows, meta)?)?;
        }
    }
    Ok(())
}

/// Full verification suite for one `n`; the report is written before the
/// exit status is decided.
pub fn cmd_verify(cfg: &RunConfig) -> Result<(), CliError> {
    let report = verify(cfg)?;
    emit(cfg.output_path.as_deref(), &to_json(&serde_json::to_value(&report)?)?)?;
    if report.passed {
        info!("verification passed for n = {}", cfg.n);
        Ok(())
    } else {
        let failed: Vec<String> =
            report.checks.iter().filter(|c| !c.pass).map(|c| format!("{} = {:e} (threshold {:e})", c.name, c.value, c.threshold)).collect();
        Err(CliError::VerificationFailed(failed.join("; ")))
    }
}

/// Integrate PVI from the apparent singularity at the first interior sample
/// through the remaining sample points; `residual_abs` is the distance to
/// the apparent singularity extracted at the same `x`.
pub fn cmd_pvi_integrate(cfg: &RunConfig) -> Result<(), CliError> {
    let src = ProfileSource::for_n(cfg.n)?;
    let ts = grid(cfg);
    let fam = src.family(cfg.n, &ts)?;
    let s = PviSample::from_family(&fam, cfg.branch)?;
    let (p, v) = branch_params(&fam, cfg.branch, cfg.delta_variant)?;
    let k0 = 2;
    let (y0, yp0) = s.slope(k0)?;
    let xs: Vec<_> = s.points[k0..].iter().map(|q| q.x).collect();
    let states = pvi_integrate_through(&p, s.points[k0].x, y0, yp0, &xs)?;
    let rows: Vec<Vec<f64>> = s.points[k0..]
        .iter()
        .zip(&states)
        .map(|(q, &(y, _))| vec![q.t, q.x.re, q.x.im, y.re, y.im, (y - q.y).norm()])
        .collect();
    let meta = json!({
        "n": cfg.n,
        "branch": cfg.branch.name(),
        "params": params_json(&p),
        "delta_variant": v.map(|v| v.name()),
        "seed": {"t": s.points[k0].t, "y_re": y0.re, "y_im": y0.im, "yp_re": yp0.re, "yp_im": yp0.im},
    });
    emit(cfg.output_path.as_deref(), &pvi_body(cfg.format, &rows, meta)?)
}

