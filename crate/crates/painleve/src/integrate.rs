use std::cell::Cell;

use isomonodromy::PviParams;
use liealg::C64;
use numerics::{grid, Dopri5, OdeError};

use crate::{pvi_second_derivative, PainleveError, PviPoint, PviSample};

const EVENT_TOL: f64 = 1e-8;

/// Integrate Painlevé VI along the straight path from `x0` to `x1`, starting
/// from `y(x0) = y0`, `y'(x0) = yp0`.
///
/// The result holds `steps + 1` equally spaced points with `t` the path
/// parameter in `[0, 1]`; the last point is at `x1`. A zero-length path
/// returns the seed alone. Reaching `|y|`, `|y-1|` or `|y-x|` below 1e-8
/// stops the integration with [`PainleveError::SingularityEncountered`].
pub fn pvi_integrate(
    p: &PviParams,
    x0: C64,
    y0: C64,
    yp0: C64,
    x1: C64,
    steps: usize,
) -> Result<PviSample, PainleveError> {
    let dx = x1 - x0;
    if dx == C64::new(0.0, 0.0) {
        let seed = PviPoint { t: 0.0, x: x0, y: y0 };
        return PviSample::new(vec![seed], vec![dx], vec![C64::new(0.0, 0.0)]);
    }
    let ss = grid::uniform(0.0, 1.0, steps.max(1) + 1);
    let states = integrate_segment(p, x0, y0, yp0, x1, &ss)?;
    let points = ss
        .iter()
        .zip(&states)
        .map(|(&s, &(y, _))| PviPoint { t: s, x: if s == 1.0 { x1 } else { x0 + dx * s }, y })
        .collect();
    let n = ss.len();
    PviSample::new(points, vec![dx; n], vec![C64::new(0.0, 0.0); n])
}

/// `(y, y')` at each of `xs`, integrating along the straight path from `x0`
/// to the last entry of `xs`. The points must lie on that segment in order.
pub fn pvi_integrate_through(
    p: &PviParams,
    x0: C64,
    y0: C64,
    yp0: C64,
    xs: &[C64],
) -> Result<Vec<(C64, C64)>, PainleveError> {
    let Some(&x1) = xs.last() else {
        return Ok(vec![]);
    };
    let dx = x1 - x0;
    if dx == C64::new(0.0, 0.0) {
        return Ok(vec![(y0, yp0); xs.len()]);
    }
    let ss: Vec<f64> = xs.iter().map(|&x| ((x - x0) / dx).re.clamp(0.0, 1.0)).collect();
    integrate_segment(p, x0, y0, yp0, x1, &ss)
}

fn integrate_segment(
    p: &PviParams,
    x0: C64,
    y0: C64,
    yp0: C64,
    x1: C64,
    ss: &[f64],
) -> Result<Vec<(C64, C64)>, PainleveError> {
    let dx = x1 - x0;
    let hit: Cell<Option<(&'static str, C64, C64)>> = Cell::new(None);
    let rhs = |s: f64, u: &[f64], du: &mut [f64]| -> Result<(), String> {
        let x = x0 + dx * s;
        let y = C64::new(u[0], u[1]);
        let yp = C64::new(u[2], u[3]);
        for (v, what) in [(y, "y = 0"), (y - 1.0, "y = 1"), (y - x, "y = x")] {
            if v.norm() < EVENT_TOL {
                hit.set(Some((what, x, y)));
                return Err(what.to_string());
            }
        }
        let ypp = pvi_second_derivative(p, x, y, yp).map_err(|e| e.to_string())?;
        let (a, b) = (yp * dx, ypp * dx);
        du.copy_from_slice(&[a.re, a.im, b.re, b.im]);
        Ok(())
    };
    let ode = Dopri5 { rtol: 1e-11, atol: 1e-13, ..Dopri5::default() };
    let out = match ode.solve_dense(rhs, 0.0, &[y0.re, y0.im, yp0.re, yp0.im], 1.0, ss) {
        Ok(v) => v,
        Err(OdeError::Rhs { .. }) if hit.get().is_some() => {
            let (what, x, y) = hit.get().unwrap();
            return Err(PainleveError::SingularityEncountered { what, x, y });
        }
        Err(e) => return Err(e.into()),
    };
    Ok(out.iter().map(|u| (C64::new(u[0], u[1]), C64::new(u[2], u[3]))).collect())
}
