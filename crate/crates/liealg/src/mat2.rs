use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::{finite, LieError, C64, DEFAULT_TOL, I, TRACE_TOL};

/// A general complex 2x2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m: [[C64; 2]; 2],
}

impl Mat2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Self { m: [[a, b], [c, d]] }
    }

    pub fn zero() -> Self {
        Self::new(C64::ZERO, C64::ZERO, C64::ZERO, C64::ZERO)
    }

    pub fn identity() -> Self {
        Self::new(C64::ONE, C64::ZERO, C64::ZERO, C64::ONE)
    }

    /// Matrix whose columns are `u` and `v`.
    pub fn from_columns(u: [C64; 2], v: [C64; 2]) -> Self {
        Self::new(u[0], v[0], u[1], v[1])
    }

    pub fn trace(&self) -> C64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> C64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::new(
            self.m[0][0].conj(),
            self.m[1][0].conj(),
            self.m[0][1].conj(),
            self.m[1][1].conj(),
        )
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.norm() == 0.0 || !finite(d) {
            return None;
        }
        Some(Self::new(self.m[1][1] / d, -self.m[0][1] / d, -self.m[1][0] / d, self.m[0][0] / d))
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.m[0][0] * s, self.m[0][1] * s, self.m[1][0] * s, self.m[1][1] * s)
    }

    pub fn mul_vec(&self, v: [C64; 2]) -> [C64; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    pub fn frobenius(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|z| finite(*z))
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.m[0][0] + o.m[0][0],
            self.m[0][1] + o.m[0][1],
            self.m[1][0] + o.m[1][0],
            self.m[1][1] + o.m[1][1],
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + o.scale(-C64::ONE)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let a = &self.m;
        let b = &o.m;
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

/// A traceless complex 2x2 matrix, i.e. an element of sl(2, C).
///
/// Internally stored as full entries; construction from arbitrary entries
/// checks the trace against [`TRACE_TOL`] on the scale of the largest entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracelessMat2(Mat2);

impl TracelessMat2 {
    pub fn new(m: Mat2) -> Result<Self, LieError> {
        if !m.is_finite() {
            return Err(LieError::NonFinite);
        }
        let tr = m.trace().norm();
        if tr > TRACE_TOL * m.max_abs() {
            return Err(LieError::NotTraceless(tr));
        }
        Ok(Self(m))
    }

    /// `[[a, b], [c, -a]]`; traceless by construction.
    pub fn from_entries(a: C64, b: C64, c: C64) -> Self {
        Self(Mat2::new(a, b, c, -a))
    }

    pub fn zero() -> Self {
        Self(Mat2::zero())
    }

    pub fn x1() -> Self {
        Self::from_entries(I, C64::ZERO, C64::ZERO)
    }

    pub fn x2() -> Self {
        Self::from_entries(C64::ZERO, C64::ONE, -C64::ONE)
    }

    pub fn x3() -> Self {
        Self::from_entries(C64::ZERO, I, I)
    }

    /// `c[0] X1 + c[1] X2 + c[2] X3`.
    pub fn from_su_coeffs(c: [C64; 3]) -> Self {
        Self::from_entries(I * c[0], c[1] + I * c[2], -c[1] + I * c[2])
    }

    /// Coordinates in the basis `X1, X2, X3` (which spans sl(2, C) over C).
    pub fn su_coeffs(&self) -> [C64; 3] {
        let m = &self.0.m;
        [-I * m[0][0], (m[0][1] - m[1][0]) * 0.5, -I * (m[0][1] + m[1][0]) * 0.5]
    }

    pub fn mat(&self) -> Mat2 {
        self.0
    }

    pub fn entry(&self, r: usize, c: usize) -> C64 {
        self.0.m[r][c]
    }

    pub fn scale(&self, s: C64) -> Self {
        Self(self.0.scale(s))
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// Conjugate by an invertible matrix: `P^-1 A P`.
    pub fn conjugate_by(&self, p: &Mat2) -> Option<Mat2> {
        Some(p.inverse()? * self.0 * *p)
    }

    pub fn frobenius(&self) -> f64 {
        self.0.frobenius()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.max_abs()
    }

    pub fn det(&self) -> C64 {
        det2(self)
    }

    pub fn trace_sq(&self) -> C64 {
        trace_sq(self)
    }
}

impl Add for TracelessMat2 {
    type Output = TracelessMat2;
    fn add(self, o: Self) -> Self {
        Self(self.0 + o.0)
    }
}

impl AddAssign for TracelessMat2 {
    fn add_assign(&mut self, o: Self) {
        self.0 = self.0 + o.0;
    }
}

impl Sub for TracelessMat2 {
    type Output = TracelessMat2;
    fn sub(self, o: Self) -> Self {
        Self(self.0 - o.0)
    }
}

impl Neg for TracelessMat2 {
    type Output = TracelessMat2;
    fn neg(self) -> Self {
        self.scale(-C64::ONE)
    }
}

impl Mul<C64> for TracelessMat2 {
    type Output = TracelessMat2;
    fn mul(self, s: C64) -> Self {
        self.scale(s)
    }
}

impl Mul<f64> for TracelessMat2 {
    type Output = TracelessMat2;
    fn mul(self, s: f64) -> Self {
        self.scale_re(s)
    }
}

impl From<TracelessMat2> for Mat2 {
    fn from(a: TracelessMat2) -> Mat2 {
        a.0
    }
}

/// `AB - BA`, exactly traceless.
pub fn commutator(a: &TracelessMat2, b: &TracelessMat2) -> TracelessMat2 {
    let p = a.0 * b.0;
    let q = b.0 * a.0;
    let d = p - q;
    TracelessMat2::from_entries(
        (d.m[0][0] - d.m[1][1]) * 0.5,
        d.m[0][1],
        d.m[1][0],
    )
}

pub fn det2(a: &TracelessMat2) -> C64 {
    a.0.det()
}

/// `tr(A^2)`, which is `2 lambda^2` for eigenvalues `+-lambda`.
pub fn trace_sq(a: &TracelessMat2) -> C64 {
    let m = &a.0.m;
    (m[0][0] * m[0][0] + m[0][1] * m[1][0]) * 2.0
}

/// Eigen-decomposition of a non-nilpotent traceless matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigen2 {
    /// Canonical eigenvalue: `Re >= 0`, ties broken by `Im >= 0`.
    pub lambda: C64,
    pub v_plus: [C64; 2],
    pub v_minus: [C64; 2],
}

impl Eigen2 {
    /// `P = (v_plus, v_minus)`, so `P^-1 A P = diag(lambda, -lambda)`.
    pub fn p(&self) -> Mat2 {
        Mat2::from_columns(self.v_plus, self.v_minus)
    }

    /// The same decomposition with the roles of `+-lambda` exchanged.
    pub fn swapped(&self) -> Eigen2 {
        Eigen2 { lambda: -self.lambda, v_plus: self.v_minus, v_minus: self.v_plus }
    }
}

pub fn eigen2(a: &TracelessMat2) -> Result<Eigen2, LieError> {
    eigen2_with_tol(a, DEFAULT_TOL)
}

pub fn eigen2_with_tol(a: &TracelessMat2, tol: f64) -> Result<Eigen2, LieError> {
    let t2 = trace_sq(a);
    let scale = a.frobenius().powi(2);
    if t2.norm() <= tol * scale || scale == 0.0 {
        return Err(LieError::DegenerateMatrix(t2.norm()));
    }
    let mut lambda = (-a.det()).sqrt();
    if lambda.re < 0.0 || (lambda.re == 0.0 && lambda.im < 0.0) {
        lambda = -lambda;
    }
    Ok(Eigen2 {
        lambda,
        v_plus: eigvec(a, lambda),
        v_minus: eigvec(a, -lambda),
    })
}

/// Unit eigenvector for eigenvalue `mu`, phased so its largest component is
/// real and positive.
fn eigvec(a: &TracelessMat2, mu: C64) -> [C64; 2] {
    let m = &a.0.m;
    let (d, b, c) = (m[0][0], m[0][1], m[1][0]);
    let u = [b, mu - d];
    let w = [mu + d, c];
    let n2 = |v: &[C64; 2]| v[0].norm_sqr() + v[1].norm_sqr();
    let v = if n2(&u) >= n2(&w) { u } else { w };
    let big = if v[0].norm() >= v[1].norm() { v[0] } else { v[1] };
    let phase = big.conj() / big.norm();
    let norm = n2(&v).sqrt();
    [v[0] * phase / norm, v[1] * phase / norm]
}
