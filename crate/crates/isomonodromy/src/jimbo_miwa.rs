use liealg::{eigen2, Eigen2, C64};
use twistor::FuchsianData;

use crate::IsoError;

/// Which eigenvalue `±λ` of `A_∞` the apparent singularity is tied to.
/// `Plus` is the canonical eigenvalue of [`liealg::eigen2`] (`Re λ >= 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Plus, Branch::Minus];

    pub fn name(self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }
}

/// Painlevé VI parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PviParams {
    pub alpha: C64,
    pub beta: C64,
    pub gamma: C64,
    pub delta: C64,
}

impl PviParams {
    pub fn real(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Self {
        let c = |v: f64| C64::new(v, 0.0);
        Self { alpha: c(alpha), beta: c(beta), gamma: c(gamma), delta: c(delta) }
    }

    /// Largest entrywise difference.
    pub fn max_diff(&self, o: &PviParams) -> f64 {
        [self.alpha - o.alpha, self.beta - o.beta, self.gamma - o.gamma, self.delta - o.delta]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

fn branch_eigen(f: &FuchsianData, branch: Branch) -> Result<Eigen2, IsoError> {
    let e = eigen2(&f.ainf)?;
    Ok(match branch {
        Branch::Plus => e,
        Branch::Minus => e.swapped(),
    })
}

/// The point `y ≠ 0, 1, x, ∞` at which `A(ζ) = Σ A_p/(ζ-p)` has the
/// branch eigenvector `v` of `A_∞` as an eigenvector.
///
/// With `P = (v, v')` and `b_p = (P⁻¹A_pP)₂₁`, the condition is
/// `Σ b_p/(ζ-p) = 0`. Since `Σ b_p = -(P⁻¹A_∞P)₂₁ = 0` the numerator
/// `N(ζ) = b_0(ζ-1)(ζ-x) + b_1ζ(ζ-x) + b_xζ(ζ-1)` is affine and `y` is its
/// root.
pub fn extract_y(f: &FuchsianData, branch: Branch) -> Result<C64, IsoError> {
    let e = branch_eigen(f, branch)?;
    let p = e.p();
    let b: Vec<C64> = [f.a0, f.a1, f.ax]
        .iter()
        .map(|a| a.conjugate_by(&p).map(|m| m.m[1][0]))
        .collect::<Option<_>>()
        .ok_or(IsoError::ReducibleSystem)?;
    let scale = [f.a0, f.a1, f.ax].iter().map(|a| a.frobenius()).fold(0.0, f64::max);
    let bmax = b.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if bmax < 1e-12 * scale.max(f64::MIN_POSITIVE) {
        return Err(IsoError::ReducibleSystem);
    }
    let x = f.x;
    let c0 = b[0] * x;
    let c1 = -b[0] * (x + 1.0) - b[1] * x - b[2];
    if c1.norm() < 1e-12 * bmax * (1.0 + x.norm()) {
        return Err(IsoError::IndeterminateY { c0: c0.norm(), c1: c1.norm() });
    }
    let y = -c0 / c1;
    let numer = |z: C64| b[0] * (z - 1.0) * (z - x) + b[1] * z * (z - x) + b[2] * z * (z - 1.0);
    let defect = numer(y).norm();
    if defect > 1e-10 * bmax * (1.0 + y.norm()).powi(2) {
        return Err(IsoError::RootCheck { defect });
    }
    for (pole, name) in [(C64::ZERO, "0"), (C64::ONE, "1"), (x, "x")] {
        if (y - pole).norm() < 1e-10 * (1.0 + pole.norm()) {
            return Err(IsoError::ExcludedValue { y, pole: name });
        }
    }
    Ok(y)
}

/// `|A(y)v - (v†A(y)v) v| / |A(y)|` for the unit branch eigenvector `v` of
/// `A_∞`; zero when `v` is an eigenvector of `A(y)`.
pub fn common_eigenvector_defect(f: &FuchsianData, y: C64, branch: Branch) -> Result<f64, IsoError> {
    let v = branch_eigen(f, branch)?.v_plus;
    let a = f.at(y);
    let w = a.mat().mul_vec(v);
    let eta = v[0].conj() * w[0] + v[1].conj() * w[1];
    let r = [w[0] - eta * v[0], w[1] - eta * v[1]];
    Ok((r[0].norm_sqr() + r[1].norm_sqr()).sqrt() / a.frobenius().max(f64::MIN_POSITIVE))
}

/// `α = ½(2λ-1)²`, `β = 2 det A_0`, `γ = -2 det A_1`, `δ = ½(1 + 4 det A_x)`
/// with `λ` the branch eigenvalue of `A_∞`.
pub fn jimbo_miwa_params(f: &FuchsianData, branch: Branch) -> Result<PviParams, IsoError> {
    let lam = branch_eigen(f, branch)?.lambda;
    let s = lam * 2.0 - 1.0;
    Ok(PviParams {
        alpha: s * s * 0.5,
        beta: f.a0.det() * 2.0,
        gamma: f.a1.det() * -2.0,
        delta: (f.ax.det() * 4.0 + 1.0) * 0.5,
    })
}
