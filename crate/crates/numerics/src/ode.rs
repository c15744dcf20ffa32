//! Adaptive Dormand-Prince 5(4) integrator for real first-order systems.
//!
//! Complex systems are integrated by the callers as interleaved real/imag
//! parts. [`Dopri5::solve`] steps exactly onto each requested time;
//! [`Dopri5::solve_dense`] steps independently of the outputs and
//! interpolates them, so the computed trajectory does not depend on where it
//! is sampled.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OdeError {
    #[error("step size underflow at t = {t} (h = {h:e})")]
    StepSizeUnderflow { t: f64, h: f64 },
    #[error("maximum number of steps ({steps}) exceeded at t = {t}")]
    MaxSteps { t: f64, steps: usize },
    #[error("right-hand side failed at t = {t}: {msg}")]
    Rhs { t: f64, msg: String },
    #[error("output times must be monotone in the direction of integration")]
    BadOutputTimes,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    /// Initial step; chosen automatically when `None`.
    pub h0: Option<f64>,
}

impl Default for Dopri5 {
    fn default() -> Self {
        Self { rtol: 1e-11, atol: 1e-12, max_steps: 1_000_000, h0: None }
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// b - b* (5th minus embedded 4th order weights)
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
// continuous extension (Hairer, Norsett & Wanner)
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

struct Stepper<'a, F> {
    f: F,
    cfg: &'a Dopri5,
    n: usize,
    t: f64,
    y: Vec<f64>,
    /// Stage derivatives; `k[0]` is `f(t, y)` at the current point.
    k: Vec<Vec<f64>>,
    ynew: Vec<f64>,
    tmp: Vec<f64>,
    steps: usize,
}

impl<'a, F> Stepper<'a, F>
where
    F: FnMut(f64, &[f64], &mut [f64]) -> Result<(), String>,
{
    fn new(mut f: F, cfg: &'a Dopri5, t0: f64, y0: &[f64]) -> Result<Self, OdeError> {
        let n = y0.len();
        let mut k = vec![vec![0.0; n]; 7];
        eval(&mut f, t0, y0, &mut k[0])?;
        Ok(Self { f, cfg, n, t: t0, y: y0.to_vec(), k, ynew: vec![0.0; n], tmp: vec![0.0; n], steps: 0 })
    }

    /// Attempt a step of size `hh`; fills the stages and `ynew` and returns
    /// the scaled error norm.
    fn attempt(&mut self, hh: f64) -> Result<f64, OdeError> {
        let (n, t) = (self.n, self.t);
        let (y, tmp, f) = (&self.y, &mut self.tmp, &mut self.f);
        let (k1, rest) = self.k.split_first_mut().expect("seven stages");
        let [k2, k3, k4, k5, k6, k7] = rest else { unreachable!() };

        for i in 0..n {
            tmp[i] = y[i] + hh * A21 * k1[i];
        }
        eval(f, t + C2 * hh, tmp, k2)?;
        for i in 0..n {
            tmp[i] = y[i] + hh * (A31 * k1[i] + A32 * k2[i]);
        }
        eval(f, t + C3 * hh, tmp, k3)?;
        for i in 0..n {
            tmp[i] = y[i] + hh * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        }
        eval(f, t + C4 * hh, tmp, k4)?;
        for i in 0..n {
            tmp[i] = y[i] + hh * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        }
        eval(f, t + C5 * hh, tmp, k5)?;
        for i in 0..n {
            tmp[i] = y[i] + hh * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        }
        eval(f, t + hh, tmp, k6)?;
        for i in 0..n {
            self.ynew[i] = y[i] + hh * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
        }
        eval(f, t + hh, &self.ynew, k7)?;

        let mut err = 0.0;
        for i in 0..n {
            let e = hh * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = self.cfg.atol + self.cfg.rtol * y[i].abs().max(self.ynew[i].abs());
            err += (e / sc).powi(2);
        }
        Ok((err / n.max(1) as f64).sqrt())
    }

    /// Dense-output interpolant of the last attempted step at fraction `theta`.
    fn interpolate(&self, hh: f64, theta: f64) -> Vec<f64> {
        let th1 = 1.0 - theta;
        let k = &self.k;
        (0..self.n)
            .map(|i| {
                let r2 = self.ynew[i] - self.y[i];
                let r3 = hh * k[0][i] - r2;
                let r4 = r2 - hh * k[6][i] - r3;
                let r5 = hh * (D1 * k[0][i] + D3 * k[2][i] + D4 * k[3][i] + D5 * k[4][i] + D6 * k[5][i] + D7 * k[6][i]);
                self.y[i] + theta * (r2 + th1 * (r3 + theta * (r4 + th1 * r5)))
            })
            .collect()
    }

    fn accept(&mut self, t_new: f64) {
        self.t = t_new;
        std::mem::swap(&mut self.y, &mut self.ynew);
        let (a, b) = self.k.split_at_mut(6);
        a[0].copy_from_slice(&b[0]);
    }

    /// Take one accepted step towards `target` (never past it), starting
    /// from the trial size `*h`, which is updated for the next step. Returns
    /// the size of the accepted step.
    fn advance(&mut self, h: &mut f64, target: f64, dir: f64) -> Result<f64, OdeError> {
        loop {
            if self.steps >= self.cfg.max_steps {
                return Err(OdeError::MaxSteps { t: self.t, steps: self.steps });
            }
            self.steps += 1;
            let last = (self.t + *h - target) * dir >= 0.0;
            let hh = if last { target - self.t } else { *h };
            if hh.abs() <= 1e-15 * self.t.abs().max(1.0) {
                if last {
                    self.t = target;
                    return Ok(0.0);
                }
                return Err(OdeError::StepSizeUnderflow { t: self.t, h: hh });
            }
            let err = self.attempt(hh)?;
            if err <= 1.0 {
                let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                if !last || fac < 1.0 {
                    *h = hh * fac;
                }
                return Ok(hh);
            }
            *h = hh * (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
            if h.abs() < 1e-14 * self.t.abs().max(1e-300) {
                return Err(OdeError::StepSizeUnderflow { t: self.t, h: *h });
            }
        }
    }
}

fn eval<F>(f: &mut F, t: f64, y: &[f64], dy: &mut [f64]) -> Result<(), OdeError>
where
    F: FnMut(f64, &[f64], &mut [f64]) -> Result<(), String>,
{
    f(t, y, dy).map_err(|msg| OdeError::Rhs { t, msg })?;
    if dy.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(OdeError::Rhs { t, msg: "non-finite derivative".into() })
    }
}

fn check_monotone(t0: f64, ts: &[f64], dir: f64) -> Result<(), OdeError> {
    let mut prev = t0;
    for &tt in ts {
        if (tt - prev) * dir < 0.0 {
            return Err(OdeError::BadOutputTimes);
        }
        prev = tt;
    }
    Ok(())
}

impl Dopri5 {
    pub fn with_tol(rtol: f64, atol: f64) -> Self {
        Self { rtol, atol, ..Self::default() }
    }

    /// Integrate `y' = f(t, y)` from `(t0, y0)` and return the state at each
    /// time in `t_out`, which must be monotone away from `t0` (either
    /// direction).
    pub fn solve<F>(&self, f: F, t0: f64, y0: &[f64], t_out: &[f64]) -> Result<Vec<Vec<f64>>, OdeError>
    where
        F: FnMut(f64, &[f64], &mut [f64]) -> Result<(), String>,
    {
        let mut out = Vec::with_capacity(t_out.len());
        let Some(&t_last) = t_out.last() else {
            return Ok(out);
        };
        let dir = if t_last >= t0 { 1.0 } else { -1.0 };
        check_monotone(t0, t_out, dir)?;
        let mut st = Stepper::new(f, self, t0, y0)?;
        let mut h = self.h0.unwrap_or_else(|| self.initial_step(y0, &st.k[0], (t_last - t0).abs())) * dir;
        for &target in t_out {
            while (target - st.t) * dir > 0.0 {
                let hh = st.advance(&mut h, target, dir)?;
                if hh != 0.0 {
                    let last = (st.t + hh - target) * dir >= 0.0;
                    st.accept(if last { target } else { st.t + hh });
                }
            }
            out.push(st.y.clone());
        }
        Ok(out)
    }

    /// Integrate from `t0` to `t_end` and return interpolated states at
    /// `t_out`, which must be monotone and lie between `t0` and `t_end`.
    ///
    /// The step sequence depends only on `(t0, y0, t_end)`, so different
    /// output sets see the same trajectory.
    pub fn solve_dense<F>(&self, f: F, t0: f64, y0: &[f64], t_end: f64, t_out: &[f64]) -> Result<Vec<Vec<f64>>, OdeError>
    where
        F: FnMut(f64, &[f64], &mut [f64]) -> Result<(), String>,
    {
        let dir = if t_end >= t0 { 1.0 } else { -1.0 };
        check_monotone(t0, t_out, dir)?;
        if t_out.last().is_some_and(|&t| (t - t_end) * dir > 0.0) {
            return Err(OdeError::BadOutputTimes);
        }
        let mut out = Vec::with_capacity(t_out.len());
        let mut pending = t_out.iter().copied().peekable();
        while pending.next_if(|&t| t == t0).is_some() {
            out.push(y0.to_vec());
        }
        let mut st = Stepper::new(f, self, t0, y0)?;
        let mut h = self.h0.unwrap_or_else(|| self.initial_step(y0, &st.k[0], (t_end - t0).abs())) * dir;
        while pending.peek().is_some() && (t_end - st.t) * dir > 0.0 {
            let hh = st.advance(&mut h, t_end, dir)?;
            if hh == 0.0 {
                break;
            }
            let t_new = if (st.t + hh - t_end) * dir >= 0.0 { t_end } else { st.t + hh };
            while let Some(tt) = pending.next_if(|&tt| (tt - t_new) * dir <= 0.0) {
                out.push(if tt == t_new { st.ynew.clone() } else { st.interpolate(hh, (tt - st.t) / hh) });
            }
            st.accept(t_new);
        }
        for _ in pending {
            out.push(st.y.clone());
        }
        Ok(out)
    }

    fn initial_step(&self, y: &[f64], dy: &[f64], span: f64) -> f64 {
        let mut d0 = 0.0;
        let mut d1 = 0.0;
        for i in 0..y.len() {
            let sc = self.atol + self.rtol * y[i].abs();
            d0 += (y[i] / sc).powi(2);
            d1 += (dy[i] / sc).powi(2);
        }
        let h = if d0 < 1e-10 || d1 < 1e-10 { 1e-6 } else { 0.01 * (d0 / d1).sqrt() };
        h.min(span.max(1e-300)).max(1e-12 * span)
    }
}
