//! The reduced duality equations `±½K_i ȧ_i = a_j a_k - a_i`.

use numerics::Stencil5;

use crate::{InstantonError, ProfileTriple};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualitySign {
    /// `+½K_i ȧ_i = a_j a_k - a_i`
    SelfDual,
    /// `-½K_i ȧ_i = a_j a_k - a_i`
    AntiSelfDual,
}

impl DualitySign {
    pub fn factor(self) -> f64 {
        match self {
            DualitySign::SelfDual => 1.0,
            DualitySign::AntiSelfDual => -1.0,
        }
    }
}

/// `K_1 = (t²-1)(t²-9)/(4t)`, `K_2 = 4t(t-3)(t+1)/((t+3)(t-1))`,
/// `K_3 = 4t(t+3)(t-1)/((t-3)(t+1))`.
pub fn coeff_k(index: usize, t: f64) -> Result<f64, InstantonError> {
    let (num, den) = match index {
        1 => ((t * t - 1.0) * (t * t - 9.0), 4.0 * t),
        2 => (4.0 * t * (t - 3.0) * (t + 1.0), (t + 3.0) * (t - 1.0)),
        3 => (4.0 * t * (t + 3.0) * (t - 1.0), (t - 3.0) * (t + 1.0)),
        _ => return Err(InstantonError::InvalidConfig(format!("K index {index} not in 1..=3"))),
    };
    if den == 0.0 {
        return Err(InstantonError::PoleAtEndpoint { index, t });
    }
    Ok(num / den)
}

fn ks(t: f64) -> Result<[f64; 3], InstantonError> {
    let mut k = [0.0; 3];
    for (i, slot) in k.iter_mut().enumerate() {
        *slot = coeff_k(i + 1, t)?;
    }
    Ok(k)
}

fn quad(a: [f64; 3]) -> [f64; 3] {
    [a[1] * a[2] - a[0], a[2] * a[0] - a[1], a[0] * a[1] - a[2]]
}

/// `(ȧ_1, ȧ_2, ȧ_3)` from the duality equations.
pub fn asd_rhs(sign: DualitySign, t: f64, a: [f64; 3]) -> Result<[f64; 3], InstantonError> {
    let k = ks(t)?;
    let q = quad(a);
    let mut out = [0.0; 3];
    for i in 0..3 {
        if k[i].abs() < 1e-14 {
            return Err(InstantonError::DegenerateCoefficient { index: i + 1, t });
        }
        out[i] = 2.0 * q[i] / (sign.factor() * k[i]);
    }
    Ok(out)
}

fn residual_from(sign: DualitySign, t: f64, a: [f64; 3], da: [f64; 3], negate: bool) -> Result<[f64; 3], InstantonError> {
    let g = if negate { -1.0 } else { 1.0 };
    let a = a.map(|v| g * v);
    let da = da.map(|v| g * v);
    let k = ks(t)?;
    let q = quad(a);
    Ok([0, 1, 2].map(|i| sign.factor() * 0.5 * k[i] * da[i] - q[i]))
}

/// `r_i = ±½K_i ȧ_i - (a_j a_k - a_i)` at `t`.
///
/// Closed forms use exact derivatives; grids need `t` to be an interior node
/// and use the nonuniform 5-point stencil. With `global_negation` the test
/// is applied to `-a`.
pub fn duality_residual(
    profile: &ProfileTriple,
    sign: DualitySign,
    t: f64,
    global_negation: bool,
) -> Result<[f64; 3], InstantonError> {
    if let Some(da) = profile.exact_deriv(t) {
        return residual_from(sign, t, profile.eval(t)?, da, global_negation);
    }
    let k = profile.node_index(t).ok_or(InstantonError::NotOnGrid { t })?;
    duality_residual_at(profile, sign, k, global_negation)
}

/// Grid residual at node index `k` (`2 <= k <= len-3`).
pub fn duality_residual_at(
    profile: &ProfileTriple,
    sign: DualitySign,
    k: usize,
    global_negation: bool,
) -> Result<[f64; 3], InstantonError> {
    let pts = profile.points();
    let ts = profile.ts();
    let st = Stencil5::centered(&ts, k).ok_or(InstantonError::NotOnGrid { t: ts.get(k).copied().unwrap_or(f64::NAN) })?;
    let da = [0, 1, 2].map(|i| st.apply1(|j| pts[j].a[i]));
    residual_from(sign, ts[k], pts[k].a, da, global_negation)
}
