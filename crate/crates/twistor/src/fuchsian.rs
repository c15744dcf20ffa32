//! The connection family and its normalized Fuchsian residues.

use liealg::{TracelessMat2, C64};

use crate::{alpha_inv_tangent, mobius_normalize, poles, residue_closed_form, PoleLabel, TwistorError};

/// Residues of the normalized system `Σ A_p dζ/(ζ - p)` with poles `0, 1, x`
/// and `A_∞ = -(A_0 + A_1 + A_x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuchsianData {
    pub t: f64,
    pub x: C64,
    pub a0: TracelessMat2,
    pub a1: TracelessMat2,
    pub ax: TracelessMat2,
    pub ainf: TracelessMat2,
}

impl FuchsianData {
    pub fn get(&self, p: PoleLabel) -> TracelessMat2 {
        match p {
            PoleLabel::Zero => self.a0,
            PoleLabel::One => self.a1,
            PoleLabel::X => self.ax,
            PoleLabel::Infinity => self.ainf,
        }
    }

    pub fn residues(&self) -> [TracelessMat2; 4] {
        [self.a0, self.a1, self.ax, self.ainf]
    }

    /// `|A_0 + A_1 + A_x + A_∞|` relative to the largest residue norm.
    pub fn sum_defect(&self) -> f64 {
        let s = self.a0 + self.a1 + self.ax + self.ainf;
        let scale = self.residues().iter().map(|a| a.frobenius()).fold(0.0, f64::max);
        s.frobenius() / scale.max(f64::MIN_POSITIVE)
    }

    /// Largest of `|A_x + A_0†|` and `|A_∞ + A_1†|`.
    pub fn reality_defect(&self) -> f64 {
        let d1 = (self.ax + self.a0.adjoint()).frobenius();
        let d2 = (self.ainf + self.a1.adjoint()).frobenius();
        d1.max(d2)
    }

    /// The matrix coefficient `Σ A_p/(ζ - p)` at a finite non-pole point.
    pub fn at(&self, zeta: C64) -> TracelessMat2 {
        self.a0 * (zeta.inv()) + self.a1 * ((zeta - 1.0).inv()) + self.ax * ((zeta - self.x).inv())
    }
}

/// `A(t, λ) = -Σ a_i α_i(t, λ) X_i` in the line parameter `λ`.
pub fn connection_form(a: [f64; 3], t: f64, lam: C64) -> Result<TracelessMat2, TwistorError> {
    let al = alpha_inv_tangent(t, lam)?;
    Ok(TracelessMat2::from_su_coeffs([al[0] * -a[0], al[1] * -a[1], al[2] * -a[2]]))
}

/// The same form pulled back to the normalized coordinate `ζ = T(λ)`.
pub fn connection_form_normalized(a: [f64; 3], t: f64, zeta: C64) -> Result<TracelessMat2, TwistorError> {
    let g = poles(t)?;
    let tinv = mobius_normalize(&g)?.inverse();
    let lam = tinv.apply(zeta).ok_or(TwistorError::DegenerateLine { t })?;
    Ok(connection_form(a, t, lam)? * tinv.derivative(zeta))
}

/// Residues `A_p = -Σ a_i α_{i,p} X_i` at the four normalized poles.
pub fn fuchsian_data(a: [f64; 3], t: f64) -> Result<FuchsianData, TwistorError> {
    let table = residue_closed_form(t)?;
    let g = poles(t)?;
    let res = |p: PoleLabel| {
        TracelessMat2::from_su_coeffs([
            table.get(0, p) * -a[0],
            table.get(1, p) * -a[1],
            table.get(2, p) * -a[2],
        ])
    };
    Ok(FuchsianData {
        t,
        x: g.x,
        a0: res(PoleLabel::Zero),
        a1: res(PoleLabel::One),
        ax: res(PoleLabel::X),
        ainf: res(PoleLabel::Infinity),
    })
}
