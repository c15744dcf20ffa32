//! Two-sided shooting for the anti-self-dual boundary-value problem.

use log::{debug, info};
use numerics::{grid, newton_fd, Dopri5, NewtonError, NewtonOptions};

use crate::series::t1_resonance_order;
use crate::{
    asd_rhs, endpoint_series, DualitySign, EndpointSeries, InstantonError, ProfilePoint, ProfileTriple, Side,
};

#[derive(Debug, Clone, PartialEq)]
pub struct BvpConfig {
    /// Bundle label; the solution has `a2(1) = -n`.
    pub n: i32,
    pub grid_size: usize,
    pub match_point: f64,
    pub series_order: usize,
    pub newton_tol: f64,
    pub max_iter: usize,
    /// Offset of the series launch points from `t = 0` and `t = 1`.
    pub eps: f64,
    /// The stored profile grid is cosine-clustered on
    /// `[grid_margin, 1 - grid_margin]`. Nodes much closer to the endpoints
    /// make grid residuals noise-dominated, since `K_1 ~ 1/t` and
    /// `K_2 ~ 1/(1-t)` amplify differentiation error there.
    pub grid_margin: f64,
    pub rtol: f64,
    pub atol: f64,
    /// Starting values `(p, q, v)`; a coarse scan is used when `None`.
    pub initial_guess: Option<[f64; 3]>,
}

impl BvpConfig {
    pub fn new(n: i32) -> Self {
        Self {
            n,
            // 201 nodes for |n| <= 3, then 100 more per step of 2 in |n|
            grid_size: 100 * (n.unsigned_abs() as usize).saturating_sub(1).max(2) + 1,
            match_point: 0.5,
            series_order: (t1_resonance_order(n) + 8).max(12),
            newton_tol: 1e-10,
            max_iter: 50,
            eps: 1e-4,
            grid_margin: 1e-2,
            rtol: 1e-11,
            atol: 1e-12,
            initial_guess: None,
        }
    }

    fn validate(&self) -> Result<(), InstantonError> {
        let bad = |m: &str| Err(InstantonError::InvalidConfig(m.into()));
        if self.n % 2 == 0 {
            return bad("n must be odd");
        }
        if self.grid_size < 64 {
            return bad("grid_size must be at least 64");
        }
        if !(self.match_point > self.eps && self.match_point < 1.0 - self.eps) {
            return bad("match_point must lie strictly between the launch points");
        }
        if !(self.grid_margin >= self.eps && self.grid_margin < 0.5) {
            return bad("grid_margin must lie in [eps, 0.5)");
        }
        if self.series_order < 3 || self.series_order <= t1_resonance_order(self.n) {
            return bad("series_order must be at least 3 and above the t = 1 resonance order");
        }
        Ok(())
    }
}

/// A converged shooting solution.
#[derive(Debug, Clone, PartialEq)]
pub struct BvpSolution {
    pub cfg: BvpConfig,
    /// `(p, q, v)`: `a2(0) = a3(0) = p`, `q` the order-1 free coefficient at
    /// `t = 0`, `v` the free coefficient at `t = 1`.
    pub params: [f64; 3],
    pub defect: f64,
    pub iters: usize,
    pub left: EndpointSeries,
    pub right: EndpointSeries,
    /// Samples on cosine-clustered nodes in `[grid_margin, 1 - grid_margin]`.
    pub profile: ProfileTriple,
}

impl BvpSolution {
    /// Profile values at increasing `ts` in `(0, 1)`, by integrating from the
    /// series launch points towards the match point.
    pub fn sample(&self, ts: &[f64]) -> Result<Vec<[f64; 3]>, InstantonError> {
        sample_with(&self.cfg, &self.left, &self.right, ts)
    }

    /// Sampled profile on the given nodes.
    pub fn profile_on(&self, ts: &[f64]) -> Result<ProfileTriple, InstantonError> {
        let vals = self.sample(ts)?;
        let pts = ts.iter().zip(vals).map(|(&t, a)| ProfilePoint { t, a }).collect();
        ProfileTriple::from_grid(self.cfg.n, pts)
    }

    /// Boundary values read off the endpoint series: `(a(0), a(1))`.
    pub fn endpoint_values(&self) -> ([f64; 3], [f64; 3]) {
        (self.left.coeffs[0], self.right.coeffs[0])
    }
}

fn integrator(cfg: &BvpConfig, max_steps: usize) -> Dopri5 {
    Dopri5 { rtol: cfg.rtol, atol: cfg.atol, max_steps, h0: None }
}

fn rhs(t: f64, y: &[f64], dy: &mut [f64]) -> Result<(), String> {
    if y.iter().any(|v| v.abs() > 1e8) {
        return Err("profile blew up".into());
    }
    let d = asd_rhs(DualitySign::AntiSelfDual, t, [y[0], y[1], y[2]]).map_err(|e| e.to_string())?;
    dy.copy_from_slice(&d);
    Ok(())
}

fn sample_with(
    cfg: &BvpConfig,
    left: &EndpointSeries,
    right: &EndpointSeries,
    ts: &[f64],
) -> Result<Vec<[f64; 3]>, InstantonError> {
    let ode = integrator(cfg, 1_000_000);
    let tm = cfg.match_point;
    let (t_lo, t_hi) = (cfg.eps, 1.0 - cfg.eps);
    let mut out = vec![[0.0; 3]; ts.len()];

    let left_idx: Vec<usize> = (0..ts.len()).filter(|&k| ts[k] <= tm).collect();
    let right_idx: Vec<usize> = (0..ts.len()).filter(|&k| ts[k] > tm).rev().collect();

    // Both branches always integrate exactly to the match point with dense
    // output, so the sampled trajectory is the one the shooting defect saw.
    let mut run = |idx: &[usize], series: &EndpointSeries, t_start: f64, inside: &dyn Fn(f64) -> bool| -> Result<(), InstantonError> {
        let (near, far): (Vec<usize>, Vec<usize>) = idx.iter().partition(|&&k| !inside(ts[k]));
        for k in near {
            out[k] = series.eval_t(ts[k]);
        }
        if far.is_empty() {
            return Ok(());
        }
        let targets: Vec<f64> = far.iter().map(|&k| ts[k]).collect();
        let y0 = series.eval_t(t_start);
        let sol = ode.solve_dense(rhs, t_start, &y0, tm, &targets)?;
        for (k, y) in far.iter().zip(sol) {
            out[*k] = [y[0], y[1], y[2]];
        }
        Ok(())
    };
    run(&left_idx, left, t_lo, &|t| t >= t_lo)?;
    run(&right_idx, right, t_hi, &|t| t <= t_hi)?;
    Ok(out)
}

fn series_pair(cfg: &BvpConfig, th: &[f64]) -> Result<(EndpointSeries, EndpointSeries), InstantonError> {
    let left = endpoint_series(cfg.n, Side::T0, cfg.series_order, &th[0..2])?;
    let right = endpoint_series(cfg.n, Side::T1, cfg.series_order, &th[2..3])?;
    Ok((left, right))
}

fn defect(cfg: &BvpConfig, th: &[f64], max_steps: usize) -> Result<Vec<f64>, InstantonError> {
    let (left, right) = series_pair(cfg, th)?;
    let ode = integrator(cfg, max_steps);
    let tm = cfg.match_point;
    let yl = ode.solve_dense(rhs, cfg.eps, &left.eval_t(cfg.eps), tm, &[tm])?;
    let yr = ode.solve_dense(rhs, 1.0 - cfg.eps, &right.eval_t(1.0 - cfg.eps), tm, &[tm])?;
    Ok((0..3).map(|i| yl[0][i] - yr[0][i]).collect())
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Coarse grid search for starting values of `(p, q, v)`.
fn scan(cfg: &BvpConfig) -> Vec<([f64; 3], f64)> {
    let n = cfg.n.unsigned_abs() as f64;
    let ps = grid::uniform(-n, n, 2 * n as usize + 1);
    let qs = grid::uniform(-2.0 * n, 2.0 * n, 4 * n as usize + 1);
    let vs = grid::uniform(-n, n, 2 * n as usize + 1);
    let mut found = Vec::new();
    for &p in &ps {
        for &q in &qs {
            for &v in &vs {
                if let Ok(d) = defect(cfg, &[p, q, v], 5_000) {
                    let dn = norm(&d);
                    if dn.is_finite() {
                        found.push(([p, q, v], dn));
                    }
                }
            }
        }
    }
    found.sort_by(|a, b| a.1.total_cmp(&b.1));
    found.truncate(8);
    found
}

/// Solve the boundary-value problem for the anti-self-dual profile with
/// `a1(0) = 1`, `a2(1) = -n`.
///
/// Series branches are launched at `eps` from each endpoint and integrated
/// to the match point; the three free series parameters are fitted by
/// damped Newton on the match-point defect.
pub fn solve_bvp(cfg: &BvpConfig) -> Result<BvpSolution, InstantonError> {
    cfg.validate()?;
    let starts: Vec<[f64; 3]> = match cfg.initial_guess {
        Some(g) => vec![g],
        None => scan(cfg).into_iter().map(|(g, d)| {
            debug!("scan candidate {g:?} defect {d:e}");
            g
        }).collect(),
    };
    let opts = NewtonOptions { tol: cfg.newton_tol, max_iter: cfg.max_iter, fd_step: 1e-6 };
    let mut best: Option<(usize, f64)> = None;
    for g in starts {
        let r = newton_fd(
            |th| defect(cfg, th, 200_000).map_err(|e| e.to_string()),
            &g,
            opts,
        );
        match r {
            Ok(rep) => {
                info!("shooting converged: params {:?}, defect {:e}, {} iterations", rep.x, rep.defect, rep.iters);
                let th = [rep.x[0], rep.x[1], rep.x[2]];
                let (left, right) = series_pair(cfg, &th)?;
                let nodes = grid::cosine(cfg.grid_margin, 1.0 - cfg.grid_margin, cfg.grid_size);
                let vals = sample_with(cfg, &left, &right, &nodes)?;
                let pts = nodes.iter().zip(vals).map(|(&t, a)| ProfilePoint { t, a }).collect();
                let profile = ProfileTriple::from_grid(cfg.n, pts)?;
                return Ok(BvpSolution {
                    cfg: cfg.clone(),
                    params: th,
                    defect: rep.defect,
                    iters: rep.iters,
                    left,
                    right,
                    profile,
                });
            }
            Err(NewtonError::NoConvergence { iters, defect, .. }) | Err(NewtonError::SingularJacobian { iter: iters, defect, .. }) => {
                debug!("start {g:?} failed: defect {defect:e}");
                if best.is_none_or(|b| defect < b.1) {
                    best = Some((iters, defect));
                }
            }
            Err(NewtonError::Eval(msg)) => debug!("start {g:?} failed: {msg}"),
        }
    }
    let (iters, defect) = best.unwrap_or((0, f64::INFINITY));
    Err(InstantonError::NoConvergence { iters, defect })
}
