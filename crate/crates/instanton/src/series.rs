//! Power-series solutions of the anti-self-dual system at the singular
//! endpoints `t = 0` and `t = 1`.
//!
//! In polynomial form the system reads `P_i(t) ȧ_i = Q_i(t)(a_j a_k - a_i)`
//! with
//! `P_1 = -(t²-1)(t²-9)`, `Q_1 = 8t`,
//! `P_2 = -2t(t-3)(t+1)`, `Q_2 = (t+3)(t-1)`,
//! `P_3 = -2t(t+3)(t-1)`, `Q_3 = (t-3)(t+1)`.
//! In the local variable `s` (`t = s` or `t = 1 - s`) coefficients are
//! solved order by order. Each order is an affine 3x3 system; where it is
//! singular (a resonance) the kernel direction carries a free parameter.

use nalgebra::{Matrix3, Vector3};

use crate::InstantonError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `t = s`; boundary data `a1(0) = 1`.
    T0,
    /// `t = 1 - s`; boundary data `a2(1) = -n` (and `a1(1) = a3(1) = 0` for `|n| > 1`).
    T1,
}

/// Truncated series `a(s) = Σ_k c_k s^k` around one endpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct EndpointSeries {
    pub side: Side,
    pub coeffs: Vec<[f64; 3]>,
}

impl EndpointSeries {
    /// Local variable for a given `t`.
    pub fn local(&self, t: f64) -> f64 {
        match self.side {
            Side::T0 => t,
            Side::T1 => 1.0 - t,
        }
    }

    pub fn eval_s(&self, s: f64) -> [f64; 3] {
        let mut out = [0.0; 3];
        for c in self.coeffs.iter().rev() {
            for i in 0..3 {
                out[i] = out[i] * s + c[i];
            }
        }
        out
    }

    pub fn eval_t(&self, t: f64) -> [f64; 3] {
        self.eval_s(self.local(t))
    }

    /// Coefficients of the polynomial residual `P_i ȧ_i - Q_i(a_j a_k - a_i)`
    /// in powers of `s`, up to `max_order`.
    pub fn residual_coeffs(&self, max_order: usize) -> [Vec<f64>; 3] {
        residual_series(self.side, &self.coeffs, max_order)
    }

    /// Number of free parameters the series takes on this side.
    pub fn param_count(side: Side) -> usize {
        match side {
            Side::T0 => 2,
            Side::T1 => 1,
        }
    }
}

type Poly = Vec<f64>;

fn poly_mul(a: &[f64], b: &[f64], cap: usize) -> Poly {
    let mut out = vec![0.0; (a.len() + b.len()).saturating_sub(1).min(cap.saturating_add(1))];
    for (i, x) in a.iter().enumerate() {
        if *x == 0.0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j < out.len() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Expand a polynomial in `t` (low to high) in powers of `s`.
fn in_local(p: &[f64], side: Side) -> Poly {
    let sub: Poly = match side {
        Side::T0 => vec![0.0, 1.0],
        Side::T1 => vec![1.0, -1.0],
    };
    let mut out: Poly = vec![0.0];
    for c in p.iter().rev() {
        out = poly_mul(&out, &sub, usize::MAX);
        out[0] += c;
    }
    out
}

fn coefficient_polys(side: Side) -> ([Poly; 3], [Poly; 3]) {
    // in t, low to high
    let p1 = vec![-9.0, 0.0, 10.0, 0.0, -1.0]; // -(t²-1)(t²-9)
    let p2 = vec![0.0, 6.0, 4.0, -2.0]; // -2t(t-3)(t+1) = -2t³ + 4t² + 6t
    let p3 = vec![0.0, 6.0, -4.0, -2.0]; // -2t(t+3)(t-1) = -2t³ - 4t² + 6t
    let q1 = vec![0.0, 8.0];
    let q2 = vec![-3.0, 2.0, 1.0];
    let q3 = vec![-3.0, -2.0, 1.0];
    (
        [in_local(&p1, side), in_local(&p2, side), in_local(&p3, side)],
        [in_local(&q1, side), in_local(&q2, side), in_local(&q3, side)],
    )
}

fn residual_series(side: Side, c: &[[f64; 3]], max_order: usize) -> [Vec<f64>; 3] {
    let (p, q) = coefficient_polys(side);
    let dir = match side {
        Side::T0 => 1.0,
        Side::T1 => -1.0,
    };
    let comp = |i: usize| -> Poly { c.iter().map(|v| v[i]).collect() };
    let a = [comp(0), comp(1), comp(2)];
    // da/dt in powers of s
    let da: [Poly; 3] = [0, 1, 2].map(|i| {
        (1..a[i].len()).map(|k| dir * k as f64 * a[i][k]).collect::<Poly>()
    });
    let mut out: [Vec<f64>; 3] = [vec![0.0; max_order + 1], vec![0.0; max_order + 1], vec![0.0; max_order + 1]];
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let mut quad = poly_mul(&a[j], &a[k], max_order);
        quad.resize(quad.len().max(a[i].len()).min(max_order + 1), 0.0);
        for (m, v) in a[i].iter().enumerate().take(quad.len()) {
            quad[m] -= v;
        }
        let lhs = poly_mul(&p[i], &da[i], max_order);
        let rhs = poly_mul(&q[i], &quad, max_order);
        for (m, v) in lhs.iter().enumerate() {
            out[i][m] += v;
        }
        for (m, v) in rhs.iter().enumerate() {
            out[i][m] -= v;
        }
    }
    out
}

fn valuation(p: &[f64]) -> usize {
    p.iter().position(|v| v.abs() > 1e-300).unwrap_or(usize::MAX / 4)
}

/// Order offset `d_i`: the coefficient `c_k` first enters equation `i` at
/// order `k + d_i`.
fn offsets(side: Side) -> [isize; 3] {
    let (p, q) = coefficient_polys(side);
    [0, 1, 2].map(|i| (valuation(&p[i]) as isize - 1).min(valuation(&q[i]) as isize))
}

/// Order at which the `t = 1` branch has its free parameter.
pub fn t1_resonance_order(n: i32) -> usize {
    ((n.unsigned_abs() as usize).saturating_sub(1)) / 2
}

/// Series coefficients `c_0..c_order` of the analytic branch at an endpoint.
///
/// `params` supplies the free parameters in order of appearance:
/// at `t = 0`, `c_0 = (1, p, p)` and a resonance at order 1 along
/// `(0, 1, -1)` with parameter `q`, so `params = [p, q]`;
/// at `t = 1`, `c_0 = (0, -n, 0)` and one resonance at order `(|n|-1)/2`
/// along `(1, 0, -sgn n)` (for `|n| = 1` this is order 0: `c_0 = (w, -n, -nw)`),
/// so `params = [v]`.
pub fn endpoint_series(n: i32, side: Side, order: usize, params: &[f64]) -> Result<EndpointSeries, InstantonError> {
    let expected = EndpointSeries::param_count(side);
    if params.len() != expected {
        return Err(InstantonError::ParameterCount { expected, got: params.len() });
    }
    if n % 2 == 0 {
        return Err(InstantonError::InvalidConfig(format!("n = {n} must be odd")));
    }
    let nf = n as f64;
    let mut free = params.iter().copied();
    let mut c: Vec<[f64; 3]> = Vec::with_capacity(order + 1);
    let c0 = match side {
        Side::T0 => {
            let p = free.next().unwrap_or(0.0);
            [1.0, p, p]
        }
        Side::T1 => {
            if n.abs() == 1 {
                let w = free.next().unwrap_or(0.0);
                [w, -nf, -nf * w]
            } else {
                [0.0, -nf, 0.0]
            }
        }
    };
    c.push(c0);
    let d = offsets(side);
    let max_ord = |k: usize| (k as isize + d.iter().copied().max().unwrap_or(0)).max(0) as usize;

    for k in 1..=order {
        let eq = |c: &Vec<[f64; 3]>| -> [f64; 3] {
            let r = residual_series(side, c, max_ord(k));
            [0, 1, 2].map(|i| {
                let m = k as isize + d[i];
                if m < 0 { 0.0 } else { r[i][m as usize] }
            })
        };
        c.push([0.0; 3]);
        let base = eq(&c);
        let mut m = Matrix3::zeros();
        for j in 0..3 {
            c[k] = [0.0; 3];
            c[k][j] = 1.0;
            let e = eq(&c);
            for i in 0..3 {
                m[(i, j)] = e[i] - base[i];
            }
        }
        let rhs = Vector3::new(-base[0], -base[1], -base[2]);
        let svd = m.svd(true, true);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        let sol = if smin > 1e-10 * smax {
            m.lu().solve(&rhs).ok_or(InstantonError::NoAnalyticBranch { order: k, residual: f64::NAN })?
        } else {
            let part = svd.solve(&rhs, 1e-10 * smax).map_err(|_| InstantonError::NoAnalyticBranch { order: k, residual: f64::NAN })?;
            let incompat = (m * part - rhs).norm();
            if incompat > 1e-9 * (1.0 + rhs.norm()) {
                return Err(InstantonError::NoAnalyticBranch { order: k, residual: incompat });
            }
            let theta = free.next().ok_or(InstantonError::ParameterCount { expected: expected + 1, got: expected })?;
            part + null_vector(&m) * theta
        };
        c[k] = [sol[0], sol[1], sol[2]];
    }
    if free.next().is_some() {
        // the resonance carrying the last parameter lies beyond `order`
        return Err(InstantonError::InvalidConfig(format!(
            "series order {order} is below the resonance order on side {side:?}"
        )));
    }
    Ok(EndpointSeries { side, coeffs: c })
}

/// Kernel direction of a rank-2 matrix, scaled so the component of largest
/// magnitude is `+1` (first one on ties).
fn null_vector(m: &Matrix3<f64>) -> Vector3<f64> {
    let rows = [m.row(0).transpose(), m.row(1).transpose(), m.row(2).transpose()];
    let mut best = Vector3::zeros();
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        let v = rows[a].cross(&rows[b]);
        if v.norm() > best.norm() {
            best = v;
        }
    }
    let mut idx = 0;
    for i in 1..3 {
        if best[i].abs() > best[idx].abs() * (1.0 + 1e-12) {
            idx = i;
        }
    }
    best / best[idx]
}
