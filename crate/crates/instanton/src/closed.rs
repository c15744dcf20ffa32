//! Closed-form profiles.

use crate::{ProfileKind, ProfileTriple};

/// The closed-form profile of the requested kind with its `n` label
/// (`1` trivial, `-1` Hopf, `3` for the `E₋₃` bundle since `a2(1) = -3`).
pub fn closed_form_profile(kind: ProfileKind) -> Option<ProfileTriple> {
    let n = match kind {
        ProfileKind::ClosedFormTrivial => 1,
        ProfileKind::ClosedFormHopfSD => -1,
        ProfileKind::ClosedFormEminus3 => 3,
        ProfileKind::NumericGrid => return None,
    };
    Some(ProfileTriple::closed(kind, n))
}

/// Self-dual Hopf profile, `((t²-9), -2t(t-3), -2t(t+3)) / (t²+3)`.
///
/// This is the form that solves the self-dual equations for the `K_i`
/// used here. The commonly quoted form has `a2` and `a3` exchanged, which
/// corresponds to the parametrization `t ↦ -t`; see [`hopf_printed`].
pub fn hopf_sd(t: f64) -> [f64; 3] {
    let d = t * t + 3.0;
    [(t * t - 9.0) / d, -2.0 * t * (t - 3.0) / d, -2.0 * t * (t + 3.0) / d]
}

pub fn hopf_sd_deriv(t: f64) -> [f64; 3] {
    let d2 = (t * t + 3.0).powi(2);
    [24.0 * t / d2, -6.0 * (t * t + 2.0 * t - 3.0) / d2, 6.0 * (t * t - 2.0 * t - 3.0) / d2]
}

/// Hopf profile with `a2 = -2t(t+3)/(t²+3)`, `a3 = -2t(t-3)/(t²+3)`, as
/// commonly quoted. It does not satisfy either duality branch here.
pub fn hopf_printed(t: f64) -> [f64; 3] {
    let h = hopf_sd(t);
    [h[0], h[2], h[1]]
}

/// `E₋₃` profile as quoted: `(3(1-t²), -6(t+1), -6(t-1)) / (t²+3)`.
///
/// Negating an odd number of components gives a solution of the
/// anti-self-dual branch.
pub fn eminus3(t: f64) -> [f64; 3] {
    let d = t * t + 3.0;
    [3.0 * (1.0 - t * t) / d, -6.0 * (t + 1.0) / d, -6.0 * (t - 1.0) / d]
}

pub fn eminus3_deriv(t: f64) -> [f64; 3] {
    let d2 = (t * t + 3.0).powi(2);
    [-24.0 * t / d2, 6.0 * (t * t + 2.0 * t - 3.0) / d2, 6.0 * (t * t - 2.0 * t - 3.0) / d2]
}

/// The anti-self-dual `E₋₃` profile normalized by the boundary data
/// `a1(0) = 1`, `a2(1) = -3`: `(a1, a2, -a3)` of [`eminus3`]. This is the
/// representative the boundary-value solver returns for `n = 3`.
pub fn eminus3_asd(t: f64) -> [f64; 3] {
    let e = eminus3(t);
    [e[0], e[1], -e[2]]
}
