//! Residues `α_{i,p}` of the scalar forms `α_i dλ` at the four poles.

use std::f64::consts::PI;

use liealg::{C64, I};

use crate::{alpha_inv_tangent, mobius_normalize, poles, LineGeometry, PoleLabel, TwistorError};

/// `alpha[i][p]` for `i = 0, 1, 2` (forms `α_1..α_3`) and `p` indexed by
/// [`PoleLabel::index`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueTable {
    pub t: f64,
    pub alpha: [[C64; 4]; 3],
}

impl ResidueTable {
    pub fn get(&self, i: usize, p: PoleLabel) -> C64 {
        self.alpha[i][p.index()]
    }

    /// Largest entrywise difference to another table.
    pub fn max_diff(&self, o: &ResidueTable) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..3 {
            for p in 0..4 {
                m = m.max((self.alpha[i][p] - o.alpha[i][p]).norm());
            }
        }
        m
    }

    /// Fill a table from the three residues at `0` using the pairing pattern
    /// `α₁: (a, ā, ā, a)`, `α₂: (a, a, -a, -a)`, `α₃: (a, -a, a, -a)` over
    /// `(0, 1, x, ∞)`.
    fn from_zero_residues(t: f64, a1: C64, a2: C64, a3: C64) -> Self {
        ResidueTable {
            t,
            alpha: [[a1, a1.conj(), a1.conj(), a1], [a2, a2, -a2, -a2], [a3, -a3, a3, -a3]],
        }
    }
}

/// Closed-form residues.
///
/// With `μ = μ₊ - μ₋` and `z1 = -√μ₋`:
/// `α_{1,0} = -i(t²-1)(t²-9)/(16t³μ)`,
/// `α_{2,0} = (μ₋+1)t(t+1)(t-3)/(8t³μ z1)`,
/// `α_{3,0} = i(μ₋-1)t(t-1)(t+3)/(8t³μ z1)`,
/// and the other poles follow by the pairing pattern.
pub fn residue_closed_form(t: f64) -> Result<ResidueTable, TwistorError> {
    let g = poles(t)?;
    let mu = g.mu_diff();
    let t3 = t * t * t;
    let z1 = g.z[0];
    let a1 = -I * ((t * t - 1.0) * (t * t - 9.0) / (16.0 * t3 * mu));
    let a2 = (g.mu_minus + 1.0) * (t * (t + 1.0) * (t - 3.0)) / (z1 * (8.0 * t3 * mu));
    let a3 = I * (g.mu_minus - 1.0) * (t * (t - 1.0) * (t + 3.0)) / (z1 * (8.0 * t3 * mu));
    Ok(ResidueTable::from_zero_residues(t, a1, a2, a3))
}

/// The commonly quoted residue formulas (overall sign of `α_{1,0}`,
/// `t²` denominators, `μ₊` in `α_{3,0}`). Kept for diagnostics.
pub fn residue_printed(t: f64) -> Result<ResidueTable, TwistorError> {
    let g = poles(t)?;
    let mu = g.mu_diff();
    let t2 = t * t;
    let t3 = t2 * t;
    let z1 = g.z[0];
    let a1 = I * ((t * t - 1.0) * (t * t - 9.0) / (16.0 * t3 * mu));
    let a2 = (g.mu_minus + 1.0) * (t * (t + 1.0) * (t - 3.0)) / (z1 * (8.0 * t2 * mu));
    let a3 = I * (g.mu_plus - 1.0) * (t * (t - 1.0) * (t + 3.0)) / (z1 * (8.0 * t2 * mu));
    Ok(ResidueTable::from_zero_residues(t, a1, a2, a3))
}

const QUAD_POINTS: usize = 256;
const QUAD_AGREE: f64 = 1e-7;

/// Residue of `α_i` (`i` in `0..3`) at pole `p` by contour quadrature in the
/// normalized coordinate (chart `w = 1/ζ` at `∞`).
///
/// Circle radius is `1e-2` times the smallest pole separation in the chart;
/// the trapezoid rule uses 256 nodes and is cross-checked with 512.
pub fn residue_numeric(t: f64, i: usize, p: PoleLabel) -> Result<C64, TwistorError> {
    let g = poles(t)?;
    let coarse = contour(&g, i, p, QUAD_POINTS)?;
    let fine = contour(&g, i, p, 2 * QUAD_POINTS)?;
    let diff = (coarse - fine).norm();
    if diff > QUAD_AGREE {
        return Err(TwistorError::QuadratureFailure { t, diff });
    }
    Ok(fine)
}

fn contour(g: &LineGeometry, i: usize, p: PoleLabel, n: usize) -> Result<C64, TwistorError> {
    let tinv = mobius_normalize(g)?.inverse();
    let t = g.t;
    let x = g.x;
    // form coefficient in the normalized coordinate
    let form = |zeta: C64| -> Result<C64, TwistorError> {
        let lam = tinv.apply(zeta).ok_or(TwistorError::DegenerateLine { t })?;
        Ok(alpha_inv_tangent(t, lam)?[i] * tinv.derivative(zeta))
    };
    let min_sep = |pts: &[C64]| {
        let mut m = f64::INFINITY;
        for a in 0..pts.len() {
            for b in a + 1..pts.len() {
                m = m.min((pts[a] - pts[b]).norm());
            }
        }
        m
    };
    let (center, radius, chart_inf) = match p {
        PoleLabel::Infinity => (C64::ZERO, 1e-2 * min_sep(&[C64::ZERO, C64::ONE, x.inv()]), true),
        _ => {
            let c = [C64::ZERO, C64::ONE, x][p.index()];
            (c, 1e-2 * min_sep(&[C64::ZERO, C64::ONE, x]), false)
        }
    };
    let mut acc = C64::ZERO;
    for k in 0..n {
        let e = C64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
        let s = center + e * radius;
        let val = if chart_inf {
            form(s.inv())? * (-(s * s).inv())
        } else {
            form(s)?
        };
        acc += val * e * radius;
    }
    Ok(acc / n as f64)
}

/// Limit of `α_{i,p}(t)` as `t → 1`, with an error estimate.
///
/// The residues are analytic in `s = √(1-t)` near `t = 1`, so the closed
/// form is sampled at `s = 0.1·2^-k` and extrapolated to `s = 0` by
/// Neville's scheme. The estimate is the change from the previous diagonal
/// entry.
pub fn residue_limit_t1(i: usize, p: PoleLabel) -> Result<(C64, f64), TwistorError> {
    const LEVELS: usize = 6;
    let s: Vec<f64> = (0..LEVELS).map(|k| 0.1 / f64::powi(2.0, k as i32)).collect();
    let mut tab = Vec::with_capacity(LEVELS);
    for &sk in &s {
        tab.push(residue_closed_form(1.0 - sk * sk)?.get(i, p));
    }
    let mut prev = tab[LEVELS - 1];
    for m in 1..LEVELS {
        for j in (m..LEVELS).rev() {
            // value at s = 0 of the interpolant through s[j-m..=j]
            tab[j] = (tab[j] * s[j - m] - tab[j - 1] * s[j]) / (s[j - m] - s[j]);
        }
        if m < LEVELS - 1 {
            prev = tab[LEVELS - 1];
        }
    }
    let est = tab[LEVELS - 1];
    Ok((est, (est - prev).norm()))
}
