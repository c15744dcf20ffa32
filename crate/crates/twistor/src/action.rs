//! The infinitesimal SL(2) action on binary cubics and its inverse along `P_t`.
//!
//! Coordinates `(λ, μ, ζ)` describe the cubic `λx³ + √3ζx²y + √3μxy² + y³`.
//! Matrices act on coefficient vectors in the complex basis
//! `B = {-iX1, (X2+iX3)/2, -(X2-iX3)/2}` and return tangent vectors in
//! `(∂λ, ∂μ, ∂ζ)`.

use liealg::{solve3, Mat3, C64, I};

use crate::TwistorError;

/// `|Δ|` at or below this counts as lying on the divisor.
pub const DIVISOR_TOL: f64 = 1e-13;

fn s3() -> f64 {
    3f64.sqrt()
}

/// Matrix of the infinitesimal action at `(λ, μ, ζ)`.
///
/// Derived from `g·p = p∘g⁻¹`; its determinant on the line
/// `(λ, λt/√3, t/√3)` is `-Δ(t, λ)`.
pub fn alpha_matrix(lam: C64, mu: C64, zeta: C64) -> Mat3 {
    let r = s3();
    Mat3::new([
        [lam * -6.0, zeta * r, -lam * mu * r],
        [mu * -2.0, C64::new(r, 0.0), zeta * 2.0 - mu * mu * r],
        [zeta * -4.0, mu * 2.0, lam * r - mu * zeta * r],
    ])
}

/// The commonly quoted form of the matrix, which has the two
/// off-diagonal entries of the first row exchanged. Kept for diagnostics.
pub fn alpha_matrix_printed(lam: C64, mu: C64, zeta: C64) -> Mat3 {
    let mut m = alpha_matrix(lam, mu, zeta);
    m.m[0].swap(1, 2);
    m
}

/// Convert coefficients in the `B` basis to the `X1, X2, X3` basis.
pub fn basis_to_su(b: [C64; 3]) -> [C64; 3] {
    [-I * b[0], (b[1] - b[2]) * 0.5, I * (b[1] + b[2]) * 0.5]
}

/// Homogeneous point of `P_t` with affine parameter `λ`.
pub fn line_point(t: f64, lam: C64) -> (C64, C64, C64) {
    let r = s3();
    (lam, lam * (t / r), C64::new(t / r, 0.0))
}

/// Tangent `∂λ + (t/√3)∂μ` of `P_t`.
pub fn tangent_vector(t: f64) -> [C64; 3] {
    [C64::ONE, C64::new(t / s3(), 0.0), C64::ZERO]
}

/// `Δ(t, λ) = (8t³λ⁴ - 2(t⁴+18t²-27)λ² + 8t³)/3`.
pub fn delta(t: f64, lam: C64) -> C64 {
    let t3 = t * t * t;
    let l2 = lam * lam;
    (l2 * l2 * (8.0 * t3) - l2 * (2.0 * (t.powi(4) + 18.0 * t * t - 27.0)) + 8.0 * t3) / 3.0
}

fn numerators(t: f64, lam: C64) -> [C64; 3] {
    let l2 = lam * lam;
    [
        I * lam * ((t * t - 1.0) * (t * t - 9.0) / 2.0),
        -(l2 + 1.0) * (t * (t + 1.0) * (t - 3.0)),
        I * (C64::ONE - l2) * (t * (t - 1.0) * (t + 3.0)),
    ]
}

fn checked_delta(t: f64, lam: C64) -> Result<C64, TwistorError> {
    let d = delta(t, lam);
    if d.norm() <= DIVISOR_TOL || !d.re.is_finite() || !d.im.is_finite() {
        return Err(TwistorError::OnDivisor { t, lam, delta: d.norm() });
    }
    Ok(d)
}

/// `X`-coefficients of `α⁻¹(T)` at the point of `P_t` with parameter `λ`:
/// `2/(3Δ) · (i(t²-1)(t²-9)λ/2, -t(t+1)(t-3)(λ²+1), it(t-1)(t+3)(1-λ²))`.
pub fn alpha_inv_tangent(t: f64, lam: C64) -> Result<[C64; 3], TwistorError> {
    let d = checked_delta(t, lam)?;
    let f = C64::new(2.0, 0.0) / (d * 3.0);
    Ok(numerators(t, lam).map(|n| n * f))
}

/// The same coefficients with the commonly quoted prefactor `-1/(3Δ)`, which is
/// `-1/2` times the exact inverse. Kept for diagnostics.
pub fn alpha_inv_tangent_printed(t: f64, lam: C64) -> Result<[C64; 3], TwistorError> {
    let d = checked_delta(t, lam)?;
    let f = -C64::ONE / (d * 3.0);
    Ok(numerators(t, lam).map(|n| n * f))
}

/// Independent route: solve `α(p) b = T` with a 3x3 solve and change basis.
pub fn alpha_inv_tangent_solve(t: f64, lam: C64) -> Result<[C64; 3], TwistorError> {
    checked_delta(t, lam)?;
    let (l, m, z) = line_point(t, lam);
    let b = solve3(&alpha_matrix(l, m, z), tangent_vector(t))?;
    Ok(basis_to_su(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn zero_point_matrix() {
        let m = alpha_matrix(C64::ZERO, C64::ZERO, C64::ZERO);
        for r in 0..3 {
            for k in 0..3 {
                let expect = if (r, k) == (1, 1) { 3f64.sqrt() } else { 0.0 };
                assert!((m.m[r][k] - c(expect)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn det_is_minus_delta() {
        for &(t, lr, li) in &[(0.5, 1.0, 0.0), (0.3, 0.2, 0.7), (0.81, -1.3, 0.4)] {
            let lam = C64::new(lr, li);
            let (l, m, z) = line_point(t, lam);
            let det = alpha_matrix(l, m, z).det();
            assert!((det + delta(t, lam)).norm() < 1e-12, "t={t}");
            // the typeset matrix fails the identity
            let det_p = alpha_matrix_printed(l, m, z).det();
            assert!((det_p + delta(t, lam)).norm() > 1e-3);
        }
    }

    #[test]
    fn delta_at_zero() {
        let t = 0.37;
        assert!((delta(t, C64::ZERO) - c(8.0 * t * t * t / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn closed_form_matches_solve() {
        let v = alpha_inv_tangent(0.5, C64::ONE).unwrap();
        let w = alpha_inv_tangent_solve(0.5, C64::ONE).unwrap();
        for k in 0..3 {
            assert!((v[k] - w[k]).norm() < 1e-10);
        }
        let p = alpha_inv_tangent_printed(0.5, C64::ONE).unwrap();
        for k in 0..3 {
            assert!((v[k] + p[k] * 2.0).norm() < 1e-12);
        }
    }

    #[test]
    fn first_coefficient_vanishes_at_zero() {
        let v = alpha_inv_tangent(0.4, C64::ZERO).unwrap();
        assert_eq!(v[0], C64::ZERO);
    }
}
