//! Poles of `P_t`, the Möbius normalization and the cross ratio.

use liealg::C64;

use crate::{PoleLabel, TwistorError};

/// Per-line geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineGeometry {
    pub t: f64,
    pub mu_plus: C64,
    pub mu_minus: C64,
    /// `z1 = -√μ₋, z2 = -√μ₊, z3 = √μ₊, z4 = √μ₋` (principal roots).
    pub z: [C64; 4],
    pub mobius: Mobius,
    pub x: C64,
}

impl LineGeometry {
    pub fn pole(&self, p: PoleLabel) -> C64 {
        self.z[p.index()]
    }

    /// `μ₊ - μ₋ = √((t²-1)(t²-9)³) / (4t³)`.
    pub fn mu_diff(&self) -> f64 {
        let t = self.t;
        disc_sqrt(t) / (4.0 * t * t * t)
    }
}

fn check_t(t: f64) -> Result<(), TwistorError> {
    if t > 0.0 && t < 1.0 {
        Ok(())
    } else {
        Err(TwistorError::DegenerateLine { t })
    }
}

fn disc_sqrt(t: f64) -> f64 {
    let a = t * t - 9.0;
    ((t * t - 1.0) * a * a * a).sqrt()
}

/// `μ₊` and `μ₋`. `μ₋` uses the printed quotient, where no cancellation
/// occurs; `μ₊` then comes from `μ₊μ₋ = 1`, because the printed numerator of
/// `μ₊` cancels to about 1e-13 relative accuracy.
pub fn mu_pm(t: f64) -> (f64, f64) {
    let b = t.powi(4) + 18.0 * t * t - 27.0;
    let mm = (b - disc_sqrt(t)) / (8.0 * t * t * t);
    (1.0 / mm, mm)
}

/// Intersection points of `P_t` with the divisor.
pub fn poles(t: f64) -> Result<LineGeometry, TwistorError> {
    check_t(t)?;
    let (mp, mm) = mu_pm(t);
    let (mu_plus, mu_minus) = (C64::new(mp, 0.0), C64::new(mm, 0.0));
    let sp = mu_plus.sqrt();
    let sm = mu_minus.sqrt();
    let z = [-sm, -sp, sp, sm];
    let mobius = mobius_from(z)?;
    let x = C64::new(cross_ratio(t)?, 0.0);
    Ok(LineGeometry { t, mu_plus, mu_minus, z, mobius, x })
}

/// A Möbius map `ζ ↦ (aζ + b)/(cζ + d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mobius {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl Mobius {
    /// `None` for the image `∞`.
    pub fn apply(&self, z: C64) -> Option<C64> {
        let den = self.c * z + self.d;
        if den.norm() == 0.0 {
            return None;
        }
        Some((self.a * z + self.b) / den)
    }

    pub fn inverse(&self) -> Mobius {
        Mobius { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Derivative `(ad - bc)/(cζ + d)²`.
    pub fn derivative(&self, z: C64) -> C64 {
        let den = self.c * z + self.d;
        (self.a * self.d - self.b * self.c) / (den * den)
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }
}

fn mobius_from(z: [C64; 4]) -> Result<Mobius, TwistorError> {
    let (z1, z2, z4) = (z[0], z[1], z[3]);
    let m = Mobius { a: z2 - z4, b: -z1 * (z2 - z4), c: z2 - z1, d: -z4 * (z2 - z1) };
    Ok(m)
}

/// `T(ζ) = ((ζ - z1)(z2 - z4)) / ((ζ - z4)(z2 - z1))`, sending `z1, z2, z4`
/// to `0, 1, ∞`.
pub fn mobius_normalize(g: &LineGeometry) -> Result<Mobius, TwistorError> {
    for i in 0..4 {
        for j in i + 1..4 {
            if (g.z[i] - g.z[j]).norm() < 1e-12 {
                return Err(TwistorError::DegenerateLine { t: g.t });
            }
        }
    }
    mobius_from(g.z)
}

/// `x = (t+1)(t-3)³ / ((t-1)(t+3)³)`.
pub fn cross_ratio(t: f64) -> Result<f64, TwistorError> {
    check_t(t)?;
    Ok((t + 1.0) * (t - 3.0).powi(3) / ((t - 1.0) * (t + 3.0).powi(3)))
}

/// `x - 1 = 16t³ / ((1-t)(t+3)³)`, free of cancellation near `t = 0`.
pub fn x_minus_one(t: f64) -> Result<f64, TwistorError> {
    check_t(t)?;
    Ok(16.0 * t * t * t / ((1.0 - t) * (t + 3.0).powi(3)))
}

/// `(x, x - 1, dx/dt, d²x/dt²)`, all in closed form.
pub fn cross_ratio_derivs(t: f64) -> Result<(f64, f64, f64, f64), TwistorError> {
    let x = cross_ratio(t)?;
    let xm1 = x_minus_one(t)?;
    // logarithmic derivative of x - 1
    let g = 9.0 / (t * (t + 3.0)) + 1.0 / (1.0 - t);
    let gp = -3.0 / (t * t) + 1.0 / ((1.0 - t) * (1.0 - t)) + 3.0 / ((t + 3.0) * (t + 3.0));
    Ok((x, xm1, xm1 * g, xm1 * (g * g + gp)))
}
