//! Isomonodromic families of Fuchsian systems with poles `0, 1, x, ∞`.
//!
//! A family is built by sampling the twistor-line residues of a profile
//! along `t`. The Schlesinger equations are checked by finite differences,
//! the residue spectra are checked for constancy, and the apparent
//! singularity `y(x)` and the Painlevé VI parameters are read off.

mod family;
mod jimbo_miwa;
mod schlesinger;

pub use family::FuchsianFamily;
pub use jimbo_miwa::{common_eigenvector_defect, extract_y, jimbo_miwa_params, Branch, PviParams};
pub use schlesinger::{
    isospectral_drift, pair_invariants, schlesinger_integrate, schlesinger_residual, schlesinger_residual_detail,
    schlesinger_rhs, SchlesingerResidual,
};

use instanton::InstantonError;
use liealg::{LieError, C64};
use numerics::OdeError;
use thiserror::Error;
use twistor::TwistorError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IsoError {
    #[error("deformation parameter x = {x} is at a fixed pole")]
    BadDeformationParameter { x: C64 },
    #[error("x is not strictly monotone along the family at sample {index}")]
    NonMonotone { index: usize },
    #[error("family has {len} samples; at least {needed} are needed")]
    TooShort { len: usize, needed: usize },
    #[error("sample index {k} has no centred 5-point stencil")]
    NoStencil { k: usize },
    #[error("every residue shares the eigenvector of A_inf; the system is reducible")]
    ReducibleSystem,
    #[error("apparent singularity is undetermined (affine coefficients {c0:e}, {c1:e})")]
    IndeterminateY { c0: f64, c1: f64 },
    #[error("apparent singularity y = {y} sits on the pole {pole}")]
    ExcludedValue { y: C64, pole: &'static str },
    #[error("apparent singularity fails the a posteriori check: |N(y)| = {defect:e}")]
    RootCheck { defect: f64 },
    #[error("path from {from} to {to} passes within {dist:e} of a fixed pole")]
    PathTooClose { from: C64, to: C64, dist: f64 },
    #[error("least-squares gauge fit failed")]
    GaugeFit,
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Twistor(#[from] TwistorError),
    #[error(transparent)]
    Instanton(#[from] InstantonError),
    #[error(transparent)]
    Ode(#[from] OdeError),
}
