use isomonodromy::{extract_y, Branch, FuchsianFamily, PviParams};
use liealg::C64;
use numerics::Stencil5;

use crate::{pvi_second_derivative, PainleveError};

const EXCLUDED_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PviPoint {
    /// Underlying curve parameter (line parameter or path parameter).
    pub t: f64,
    pub x: C64,
    pub y: C64,
}

/// A transcendent sampled along a curve `t ↦ x(t)`, with the exact
/// derivatives of `x(t)` used to turn `t`-differences into `x`-derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct PviSample {
    pub points: Vec<PviPoint>,
    pub dxdt: Vec<C64>,
    pub d2xdt2: Vec<C64>,
}

impl PviSample {
    /// Checks `t` strictly increasing, `x` pairwise distinct and off
    /// `{0, 1}`, and `y` off `{0, 1, x}`.
    pub fn new(points: Vec<PviPoint>, dxdt: Vec<C64>, d2xdt2: Vec<C64>) -> Result<Self, PainleveError> {
        if dxdt.len() != points.len() || d2xdt2.len() != points.len() {
            return Err(PainleveError::LengthMismatch { points: points.len(), derivs: dxdt.len().min(d2xdt2.len()) });
        }
        for (i, p) in points.iter().enumerate() {
            if i > 0 && points[i - 1].t >= p.t {
                return Err(PainleveError::NonMonotone { index: i });
            }
            if points[..i].iter().any(|q| q.x == p.x) {
                return Err(PainleveError::NonMonotone { index: i });
            }
            for (v, what) in [(p.x, "x = 0"), (p.x - 1.0, "x = 1")] {
                if v.norm() < EXCLUDED_TOL {
                    return Err(PainleveError::SingularArgument { what, x: p.x, y: p.y });
                }
            }
            for (v, what) in [(p.y, "0"), (p.y - 1.0, "1"), (p.y - p.x, "x")] {
                if v.norm() < EXCLUDED_TOL {
                    return Err(PainleveError::ExcludedValue { index: i, y: p.y, what });
                }
            }
        }
        Ok(Self { points, dxdt, d2xdt2 })
    }

    /// The apparent singularity of each member of `fam` for `branch`.
    pub fn from_family(fam: &FuchsianFamily, branch: Branch) -> Result<Self, PainleveError> {
        let points = fam
            .samples
            .iter()
            .map(|s| Ok(PviPoint { t: s.t, x: s.x, y: extract_y(s, branch)? }))
            .collect::<Result<Vec<_>, PainleveError>>()?;
        let c = |v: &[f64]| v.iter().map(|&d| C64::new(d, 0.0)).collect();
        Self::new(points, c(&fam.dxdt), c(&fam.d2xdt2))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ts(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.t).collect()
    }

    /// `(y, dy/dx)` at sample `k` from the centred 5-point stencil.
    pub fn slope(&self, k: usize) -> Result<(C64, C64), PainleveError> {
        let (yp, _) = self.derivs(k)?;
        Ok((self.points[k].y, yp))
    }

    fn derivs(&self, k: usize) -> Result<(C64, C64), PainleveError> {
        let st = Stencil5::centered(&self.ts(), k).ok_or(PainleveError::NoStencil { k })?;
        let yt: C64 = st.apply1(|j| self.points[j].y);
        let ytt: C64 = st.apply2(|j| self.points[j].y);
        let (xt, xtt) = (self.dxdt[k], self.d2xdt2[k]);
        let yp = yt / xt;
        Ok((yp, (ytt - yp * xtt) / (xt * xt)))
    }
}

/// `y''` from finite differences minus the Painlevé VI right-hand side
/// evaluated with the finite-difference `y'`, at sample `k`.
pub fn pvi_residual(sample: &PviSample, p: &PviParams, k: usize) -> Result<C64, PainleveError> {
    let (yp, ypp) = sample.derivs(k)?;
    let pt = sample.points[k];
    Ok(ypp - pvi_second_derivative(p, pt.x, pt.y, yp)?)
}

/// `|pvi_residual| / max(1, |y''|)`: absolute where `y''` is `O(1)`,
/// relative near `x = 1` where the right-hand side is large.
pub fn pvi_residual_scaled(sample: &PviSample, p: &PviParams, k: usize) -> Result<f64, PainleveError> {
    let (yp, ypp) = sample.derivs(k)?;
    let pt = sample.points[k];
    let rhs = pvi_second_derivative(p, pt.x, pt.y, yp)?;
    Ok((ypp - rhs).norm() / rhs.norm().max(1.0))
}

/// Largest scaled residual over all samples with a centred stencil.
pub fn pvi_max_residual(sample: &PviSample, p: &PviParams) -> Result<f64, PainleveError> {
    (2..sample.len().saturating_sub(2)).try_fold(0.0, |m, k| Ok(f64::max(m, pvi_residual_scaled(sample, p, k)?)))
}
