use crate::{LieError, C64, DEFAULT_TOL};

/// A complex 3x3 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3 {
    pub m: [[C64; 3]; 3],
}

impl Mat3 {
    pub const fn new(m: [[C64; 3]; 3]) -> Self {
        Self { m }
    }

    pub fn identity() -> Self {
        let mut m = [[C64::ZERO; 3]; 3];
        for (k, row) in m.iter_mut().enumerate() {
            row[k] = C64::ONE;
        }
        Self { m }
    }

    pub fn diag(d: [C64; 3]) -> Self {
        let mut m = [[C64::ZERO; 3]; 3];
        for k in 0..3 {
            m[k][k] = d[k];
        }
        Self { m }
    }

    pub fn det(&self) -> C64 {
        let a = &self.m;
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    }

    pub fn mul_vec(&self, v: [C64; 3]) -> [C64; 3] {
        let mut out = [C64::ZERO; 3];
        for (r, o) in out.iter_mut().enumerate() {
            *o = (0..3).map(|c| self.m[r][c] * v[c]).sum();
        }
        out
    }

    pub fn mul(&self, o: &Mat3) -> Mat3 {
        let mut m = [[C64::ZERO; 3]; 3];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                *x = (0..3).map(|k| self.m[r][k] * o.m[k][c]).sum();
            }
        }
        Mat3 { m }
    }

    pub fn frobenius(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

pub fn solve3(m: &Mat3, b: [C64; 3]) -> Result<[C64; 3], LieError> {
    solve3_with_tol(m, b, DEFAULT_TOL)
}

/// Solve `M x = b` by Gaussian elimination with partial pivoting.
///
/// Fails with `SingularMatrix` when `|det M| <= tol * |M|^3`.
pub fn solve3_with_tol(m: &Mat3, b: [C64; 3], tol: f64) -> Result<[C64; 3], LieError> {
    let det = m.det().norm();
    let bound = tol * m.frobenius().powi(3);
    if !(det > bound) {
        return Err(LieError::SingularMatrix { det, bound });
    }
    let mut a = m.m;
    let mut x = b;
    for col in 0..3 {
        let piv = (col..3)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .unwrap_or(col);
        a.swap(col, piv);
        x.swap(col, piv);
        for r in col + 1..3 {
            let f = a[r][col] / a[col][col];
            for c in col..3 {
                let v = a[col][c];
                a[r][c] -= f * v;
            }
            let v = x[col];
            x[r] -= f * v;
        }
    }
    for r in (0..3).rev() {
        let s: C64 = (r + 1..3).map(|c| a[r][c] * x[c]).sum();
        x[r] = (x[r] - s) / a[r][r];
    }
    Ok(x)
}
