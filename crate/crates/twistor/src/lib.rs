//! Data attached to the twistor lines `P_t`, `0 < t < 1`.
//!
//! Each line meets the anticanonical quartic in four points. After a Möbius
//! normalization these become the poles `0, 1, x, ∞` of a logarithmic
//! connection whose residues are read off from the profile functions.

mod action;
mod fuchsian;
mod line;
mod residues;

pub use action::{
    alpha_inv_tangent, alpha_inv_tangent_printed, alpha_inv_tangent_solve, alpha_matrix, alpha_matrix_printed,
    basis_to_su, delta, line_point, tangent_vector, DIVISOR_TOL,
};
pub use fuchsian::{connection_form, connection_form_normalized, fuchsian_data, FuchsianData};
pub use line::{cross_ratio, cross_ratio_derivs, mobius_normalize, mu_pm, poles, x_minus_one, LineGeometry, Mobius};
pub use residues::{residue_closed_form, residue_limit_t1, residue_numeric, residue_printed, ResidueTable};

use liealg::{LieError, C64};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TwistorError {
    #[error("point lies on the divisor: t = {t}, lambda = {lam}, |Delta| = {delta:e}")]
    OnDivisor { t: f64, lam: C64, delta: f64 },
    #[error("degenerate twistor line at t = {t}")]
    DegenerateLine { t: f64 },
    #[error("residue quadrature did not converge at t = {t} (refinements differ by {diff:e})")]
    QuadratureFailure { t: f64, diff: f64 },
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Labels of the four normalized poles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PoleLabel {
    Zero,
    One,
    X,
    Infinity,
}

impl PoleLabel {
    pub const ALL: [PoleLabel; 4] = [PoleLabel::Zero, PoleLabel::One, PoleLabel::X, PoleLabel::Infinity];

    /// Position in [`PoleLabel::ALL`], also the index of the matching `z_k`
    /// (`z1 -> 0`, `z2 -> 1`, `z3 -> x`, `z4 -> ∞`).
    pub fn index(self) -> usize {
        match self {
            PoleLabel::Zero => 0,
            PoleLabel::One => 1,
            PoleLabel::X => 2,
            PoleLabel::Infinity => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PoleLabel::Zero => "0",
            PoleLabel::One => "1",
            PoleLabel::X => "x",
            PoleLabel::Infinity => "inf",
        }
    }
}
