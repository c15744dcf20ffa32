//! Damped Newton iteration with a forward-difference Jacobian.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NewtonError {
    #[error("no convergence after {iters} iterations (last defect {defect:e})")]
    NoConvergence { iters: usize, defect: f64, x: Vec<f64> },
    #[error("singular Jacobian at iteration {iter}")]
    SingularJacobian { iter: usize, defect: f64, x: Vec<f64> },
    #[error("residual evaluation failed: {0}")]
    Eval(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Forward-difference step, scaled by `max(1, |x_j|)`.
    pub fd_step: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self { tol: 1e-10, max_iter: 50, fd_step: 1e-6 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonReport {
    pub x: Vec<f64>,
    pub defect: f64,
    pub iters: usize,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Solve `f(x) = 0` for square systems. Each step backtracks (halving, at most
/// 20 times) until the defect norm decreases.
pub fn newton_fd<F>(mut f: F, x0: &[f64], opts: NewtonOptions) -> Result<NewtonReport, NewtonError>
where
    F: FnMut(&[f64]) -> Result<Vec<f64>, String>,
{
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut fx = f(&x).map_err(NewtonError::Eval)?;
    let mut defect = norm(&fx);
    for iter in 0..opts.max_iter {
        if defect <= opts.tol {
            return Ok(NewtonReport { x, defect, iters: iter });
        }
        let mut jac = DMatrix::<f64>::zeros(fx.len(), n);
        for j in 0..n {
            let h = opts.fd_step * x[j].abs().max(1.0);
            let mut xp = x.clone();
            xp[j] += h;
            let fp = f(&xp).map_err(NewtonError::Eval)?;
            for i in 0..fx.len() {
                jac[(i, j)] = (fp[i] - fx[i]) / h;
            }
        }
        let rhs = DVector::from_iterator(fx.len(), fx.iter().map(|v| -v));
        let step = jac
            .clone()
            .lu()
            .solve(&rhs)
            .filter(|s| s.iter().all(|v| v.is_finite()))
            .ok_or_else(|| NewtonError::SingularJacobian { iter, defect, x: x.clone() })?;

        let mut lam = 1.0;
        let mut accepted = false;
        for _ in 0..20 {
            let xt: Vec<f64> = x.iter().zip(step.iter()).map(|(a, s)| a + lam * s).collect();
            if let Ok(ft) = f(&xt) {
                let dt = norm(&ft);
                if dt.is_finite() && dt < defect {
                    x = xt;
                    fx = ft;
                    defect = dt;
                    accepted = true;
                    break;
                }
            }
            lam *= 0.5;
        }
        if !accepted {
            return Err(NewtonError::NoConvergence { iters: iter + 1, defect, x });
        }
    }
    if defect <= opts.tol {
        Ok(NewtonReport { x, defect, iters: opts.max_iter })
    } else {
        Err(NewtonError::NoConvergence { iters: opts.max_iter, defect, x })
    }
}
