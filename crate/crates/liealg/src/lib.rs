//! Small exact-size complex linear algebra for sl(2, C).
//!
//! Everything here is a `Copy` value type. The 2x2 eigensolve is closed form
//! and the 3x3 solve is plain Gaussian elimination with partial pivoting.

mod mat2;
mod mat3;

pub use mat2::{commutator, det2, eigen2, eigen2_with_tol, trace_sq, Eigen2, Mat2, TracelessMat2};
pub use mat3::{solve3, solve3_with_tol, Mat3};
pub use num_complex::Complex64;

use thiserror::Error;

/// Shorthand for the scalar type used throughout the workspace.
pub type C64 = Complex64;

/// The imaginary unit.
pub const I: C64 = C64::new(0.0, 1.0);

/// Default relative tolerance for degeneracy tests.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Tolerance used to accept a matrix as traceless, relative to its largest entry.
pub const TRACE_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LieError {
    #[error("degenerate matrix: |tr(A^2)| = {0:e} is within tolerance of zero")]
    DegenerateMatrix(f64),
    #[error("singular 3x3 matrix: |det| = {det:e} below bound {bound:e}")]
    SingularMatrix { det: f64, bound: f64 },
    #[error("matrix is not traceless: |tr| = {0:e}")]
    NotTraceless(f64),
    #[error("non-finite matrix entry")]
    NonFinite,
}

/// The fixed su(2) basis.
///
/// `X1 = diag(i, -i)`, `X2 = [[0, 1], [-1, 0]]`, `X3 = [[0, i], [i, 0]]`.
/// They satisfy `[X1, X2] = 2 X3` cyclically and `tr(Xk^2) = -2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuBasis {
    pub x1: TracelessMat2,
    pub x2: TracelessMat2,
    pub x3: TracelessMat2,
}

impl SuBasis {
    pub fn new() -> Self {
        Self {
            x1: TracelessMat2::x1(),
            x2: TracelessMat2::x2(),
            x3: TracelessMat2::x3(),
        }
    }

    pub fn get(&self, k: usize) -> TracelessMat2 {
        match k {
            0 => self.x1,
            1 => self.x2,
            2 => self.x3,
            _ => panic!("su(2) basis index {k} out of range"),
        }
    }
}

impl Default for SuBasis {
    fn default() -> Self {
        Self::new()
    }
}

pub(crate) fn finite(z: C64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
