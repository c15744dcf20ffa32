//! SU(2)-invariant connections on S⁴ along the orbit parameter `t ∈ (0, 1)`.
//!
//! An invariant connection is `Σ a_i(t) X_i ⊗ σ_i`; (anti-)self-duality
//! reduces to `±½K_i ȧ_i = a_j a_k - a_i` with `(i, j, k)` cyclic.

mod bvp;
mod closed;
mod equations;
mod profile;
mod series;

pub use bvp::{solve_bvp, BvpConfig, BvpSolution};
pub use closed::{closed_form_profile, eminus3, eminus3_asd, eminus3_deriv, hopf_printed, hopf_sd, hopf_sd_deriv};
pub use equations::{asd_rhs, coeff_k, duality_residual, duality_residual_at, DualitySign};
pub use profile::{ProfileKind, ProfilePoint, ProfileTriple};
pub use series::{endpoint_series, EndpointSeries, Side};

use numerics::OdeError;
use thiserror::Error;
use twistor::{residue_closed_form, PoleLabel, TwistorError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InstantonError {
    #[error("K_{index} has a pole at t = {t}")]
    PoleAtEndpoint { index: usize, t: f64 },
    #[error("K_{index} is degenerate (|K| < 1e-14) at t = {t}")]
    DegenerateCoefficient { index: usize, t: f64 },
    #[error("no analytic branch: recursion blocked at order {order} (incompatibility {residual:e})")]
    NoAnalyticBranch { order: usize, residual: f64 },
    #[error("wrong number of free series parameters: expected {expected}, got {got}")]
    ParameterCount { expected: usize, got: usize },
    #[error("shooting did not converge after {iters} iterations (defect {defect:e})")]
    NoConvergence { iters: usize, defect: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("t = {t} is not a node of the profile grid with a 5-point stencil")]
    NotOnGrid { t: f64 },
    #[error(transparent)]
    Ode(#[from] OdeError),
    #[error(transparent)]
    Twistor(#[from] TwistorError),
}

/// `tr(A_∞²) = -2 Σ a_i² α_{i,∞}²` for profile values `a` at `t`.
///
/// Cross terms drop out because `tr(X_i X_j) = 0` for `i ≠ j`.
pub fn conserved_tr_values(a: [f64; 3], t: f64) -> Result<f64, InstantonError> {
    let table = residue_closed_form(t)?;
    let s: f64 = (0..3)
        .map(|i| {
            let al = table.get(i, PoleLabel::Infinity);
            (al * al).re * a[i] * a[i]
        })
        .sum();
    Ok(-2.0 * s)
}

/// [`conserved_tr_values`] at `t` for a closed form or a grid node.
pub fn conserved_tr(profile: &ProfileTriple, t: f64) -> Result<f64, InstantonError> {
    conserved_tr_values(profile.eval(t)?, t)
}

