//! Painlevé VI: the right-hand side, residuals of a sampled transcendent,
//! a direct integrator and the parameter formulas for the instanton
//! families.

mod equation;
mod integrate;
mod sample;

pub use equation::{params_from_n, pvi_second_derivative, DeltaVariant};
pub use integrate::{pvi_integrate, pvi_integrate_through};
pub use isomonodromy::{Branch, PviParams};
pub use sample::{pvi_max_residual, pvi_residual, pvi_residual_scaled, PviPoint, PviSample};

use isomonodromy::IsoError;
use liealg::C64;
use numerics::OdeError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PainleveError {
    #[error("singular argument: {what} at x = {x}, y = {y}")]
    SingularArgument { what: &'static str, x: C64, y: C64 },
    #[error("integration reached a singularity ({what}) at x = {x}, y = {y}")]
    SingularityEncountered { what: &'static str, x: C64, y: C64 },
    #[error("sample {index} breaks monotonicity in t or repeats x")]
    NonMonotone { index: usize },
    #[error("sample index {k} has no centred 5-point stencil")]
    NoStencil { k: usize },
    #[error("sample {index}: y = {y} coincides with {what}")]
    ExcludedValue { index: usize, y: C64, what: &'static str },
    #[error("sample length mismatch: {points} points, {derivs} derivative entries")]
    LengthMismatch { points: usize, derivs: usize },
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error(transparent)]
    Ode(#[from] OdeError),
}
