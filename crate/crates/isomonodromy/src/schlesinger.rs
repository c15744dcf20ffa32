use liealg::{commutator, TracelessMat2, C64, I};
use nalgebra::{DMatrix, DVector};
use numerics::{Dopri5, Stencil5};
use twistor::FuchsianData;

use crate::{FuchsianFamily, IsoError};

const POLE_TOL: f64 = 1e-12;

/// `(dA_0/dx, dA_1/dx, dA_x/dx)` from the Schlesinger equations
/// `dA_0/dx = [A_0, A_x]/x`, `dA_1/dx = [A_1, A_x]/(x-1)`, with `dA_x/dx`
/// fixed by `A_∞` being constant.
pub fn schlesinger_rhs(f: &FuchsianData) -> Result<[TracelessMat2; 3], IsoError> {
    rhs_parts(f.x, &f.a0, &f.a1, &f.ax)
}

fn rhs_parts(x: C64, a0: &TracelessMat2, a1: &TracelessMat2, ax: &TracelessMat2) -> Result<[TracelessMat2; 3], IsoError> {
    if x.norm() < POLE_TOL || (x - 1.0).norm() < POLE_TOL {
        return Err(IsoError::BadDeformationParameter { x });
    }
    let d0 = commutator(a0, ax) * x.inv();
    let d1 = commutator(a1, ax) * (x - 1.0).inv();
    Ok([d0, d1, -(d0 + d1)])
}

/// Finite-difference Schlesinger check at one sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchlesingerResidual {
    /// `Σ_i |dA_i/dx - S_i|` with `S_i` the Schlesinger right-hand side.
    pub raw: f64,
    /// The same after removing the best infinitesimal conjugation
    /// `[Ω, A_i]`, i.e. the Schlesinger defect modulo a moving gauge.
    pub gauge_reduced: f64,
    /// `max(1, Σ_i |S_i|)`.
    pub scale: f64,
    /// Coefficients of `Ω` in the basis `X1, X2, X3`.
    pub omega: [C64; 3],
}

impl SchlesingerResidual {
    /// `gauge_reduced / scale`: absolute where the Schlesinger terms are
    /// `O(1)`, relative where `1/x` or `1/(x-1)` makes them large.
    pub fn value(&self) -> f64 {
        self.gauge_reduced / self.scale
    }
}

/// Schlesinger residual at sample `k` (`2 <= k <= len-3`).
///
/// `dA/dx` is obtained by the 5-point stencil in `t` and the exact `dx/dt`.
/// The residues built from twistor lines are not in the gauge where `A_∞`
/// is constant, so the family satisfies `dA_i/dx = S_i + [Ω, A_i]` for some
/// `Ω(x)`; the gauge-reduced value is the verification quantity.
pub fn schlesinger_residual_detail(fam: &FuchsianFamily, k: usize) -> Result<SchlesingerResidual, IsoError> {
    let ts = fam.ts();
    let st = Stencil5::centered(&ts, k).ok_or(IsoError::NoStencil { k })?;
    let s = &fam.samples;
    let inv = 1.0 / fam.dxdt[k];
    let deriv = [
        st.apply1(|j| s[j].a0) * inv,
        st.apply1(|j| s[j].a1) * inv,
        st.apply1(|j| s[j].ax) * inv,
    ];
    let rhs = schlesinger_rhs(&s[k])?;
    let a = [s[k].a0, s[k].a1, s[k].ax];
    let r: [TracelessMat2; 3] = [0, 1, 2].map(|i| deriv[i] - rhs[i]);
    let raw = r.iter().map(|m| m.frobenius()).sum();

    let omega = fit_gauge(&a, &r)?;
    let om = TracelessMat2::from_su_coeffs(omega);
    let gauge_reduced = (0..3).map(|i| (r[i] - commutator(&om, &a[i])).frobenius()).sum();
    let scale = rhs.iter().map(|m| m.frobenius()).sum::<f64>().max(1.0);
    Ok(SchlesingerResidual { raw, gauge_reduced, scale, omega })
}

/// Scaled gauge-reduced Schlesinger residual at sample `k`; see
/// [`SchlesingerResidual::value`].
pub fn schlesinger_residual(fam: &FuchsianFamily, k: usize) -> Result<f64, IsoError> {
    Ok(schlesinger_residual_detail(fam, k)?.value())
}

fn entries(m: &TracelessMat2) -> [C64; 4] {
    [m.entry(0, 0), m.entry(0, 1), m.entry(1, 0), m.entry(1, 1)]
}

/// Least-squares `Ω` minimizing `Σ_i |R_i - [Ω, A_i]|²`, as a real problem
/// in the six real coordinates of `Ω = Σ ω_j X_j`.
fn fit_gauge(a: &[TracelessMat2; 3], r: &[TracelessMat2; 3]) -> Result<[C64; 3], IsoError> {
    let basis = [TracelessMat2::x1(), TracelessMat2::x2(), TracelessMat2::x3()];
    let mut m = DMatrix::<f64>::zeros(24, 6);
    let mut rhs = DVector::<f64>::zeros(24);
    for i in 0..3 {
        for (j, x) in basis.iter().enumerate() {
            let c = entries(&commutator(x, &a[i]));
            for e in 0..4 {
                let row = 8 * i + 2 * e;
                // ω = u + iv contributes u·c + v·(i c)
                let ic = I * c[e];
                m[(row, j)] = c[e].re;
                m[(row + 1, j)] = c[e].im;
                m[(row, j + 3)] = ic.re;
                m[(row + 1, j + 3)] = ic.im;
            }
        }
        let re = entries(&r[i]);
        for e in 0..4 {
            rhs[8 * i + 2 * e] = re[e].re;
            rhs[8 * i + 2 * e + 1] = re[e].im;
        }
    }
    // normal equations with one step of iterative refinement
    let mtm = m.transpose() * &m;
    let chol = mtm.cholesky().ok_or(IsoError::GaugeFit)?;
    let mut sol = chol.solve(&(m.transpose() * &rhs));
    let corr = chol.solve(&(m.transpose() * (&rhs - &m * &sol)));
    sol += corr;
    Ok([0, 1, 2].map(|j| C64::new(sol[j], sol[j + 3])))
}

/// `max - min` (as the diameter of the set of values) of `tr(A_p²)` over
/// the family, for `p = 0, 1, x, ∞`.
pub fn isospectral_drift(fam: &FuchsianFamily) -> Result<[f64; 4], IsoError> {
    if fam.len() < 2 {
        return Err(IsoError::TooShort { len: fam.len(), needed: 2 });
    }
    let mut out = [0.0; 4];
    for (p, slot) in out.iter_mut().enumerate() {
        let vals: Vec<C64> = fam.samples.iter().map(|s| s.residues()[p].trace_sq()).collect();
        for (i, u) in vals.iter().enumerate() {
            for v in &vals[i + 1..] {
                *slot = f64::max(*slot, (u - v).norm());
            }
        }
    }
    Ok(out)
}

/// Conjugation invariants `tr(A_i A_j)` for
/// `(i, j) ∈ {(0,0), (0,1), (0,x), (1,1), (1,x), (x,x)}`.
pub fn pair_invariants(f: &FuchsianData) -> [C64; 6] {
    let a = [f.a0.mat(), f.a1.mat(), f.ax.mat()];
    let tr = |i: usize, j: usize| (a[i] * a[j]).trace();
    [tr(0, 0), tr(0, 1), tr(0, 2), tr(1, 1), tr(1, 2), tr(2, 2)]
}

fn segment_distance(p: C64, a: C64, b: C64) -> f64 {
    let d = b - a;
    if d.norm_sqr() == 0.0 {
        return (p - a).norm();
    }
    let s = (((p - a) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0);
    (p - (a + d * s)).norm()
}

fn pack(a: &[TracelessMat2; 3]) -> Vec<f64> {
    let mut v = Vec::with_capacity(18);
    for m in a {
        for z in [m.entry(0, 0), m.entry(0, 1), m.entry(1, 0)] {
            v.push(z.re);
            v.push(z.im);
        }
    }
    v
}

fn unpack(v: &[f64]) -> [TracelessMat2; 3] {
    let z = |k: usize| C64::new(v[2 * k], v[2 * k + 1]);
    [0, 1, 2].map(|i| TracelessMat2::from_entries(z(3 * i), z(3 * i + 1), z(3 * i + 2)))
}

/// Integrate the Schlesinger equations along the straight path from `f0.x`
/// to `x_target` (adaptive Dormand-Prince, relative tolerance 1e-11).
///
/// `steps` sets the initial step as a fraction `1/steps` of the path. The
/// result carries `t = NaN`, since the flow does not know the line
/// parameter.
pub fn schlesinger_integrate(f0: &FuchsianData, x_target: C64, steps: usize) -> Result<FuchsianData, IsoError> {
    let dist = segment_distance(C64::ZERO, f0.x, x_target).min(segment_distance(C64::ONE, f0.x, x_target));
    if dist <= 1e-3 {
        return Err(IsoError::PathTooClose { from: f0.x, to: x_target, dist });
    }
    if x_target == f0.x {
        return Ok(*f0);
    }
    let dx = x_target - f0.x;
    let ode = Dopri5 { rtol: 1e-11, atol: 1e-13, max_steps: 1_000_000, h0: Some(1.0 / steps.max(1) as f64) };
    let rhs = |s: f64, y: &[f64], dy: &mut [f64]| -> Result<(), String> {
        let a = unpack(y);
        let d = rhs_parts(f0.x + dx * s, &a[0], &a[1], &a[2]).map_err(|e| e.to_string())?;
        dy.copy_from_slice(&pack(&d.map(|m| m * dx)));
        Ok(())
    };
    let y = ode.solve(rhs, 0.0, &pack(&[f0.a0, f0.a1, f0.ax]), &[1.0])?;
    let [a0, a1, ax] = unpack(&y[0]);
    Ok(FuchsianData { t: f64::NAN, x: x_target, a0, a1, ax, ainf: -(a0 + a1 + ax) })
}
