//! Finite-difference weights on arbitrary nodes (Fornberg's recursion).

/// Weights `w[m][j]` such that `f^(m)(x0) ~ sum_j w[m][j] f(nodes[j])`
/// for `m = 0..=max_deriv`.
pub fn fd_weights(nodes: &[f64], x0: f64, max_deriv: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; n]; max_deriv + 1];
    if n == 0 {
        return c;
    }
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(max_deriv);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// First- and second-derivative weights of a 5-point stencil centred on a
/// sample of a strictly monotone grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Stencil5 {
    /// Index of the first of the five nodes.
    pub start: usize,
    pub d1: [f64; 5],
    pub d2: [f64; 5],
}

impl Stencil5 {
    /// Centred stencil at interior index `k` (`2 <= k <= len-3`).
    pub fn centered(nodes: &[f64], k: usize) -> Option<Self> {
        if k < 2 || k + 2 >= nodes.len() {
            return None;
        }
        Some(Self::at(nodes, k - 2, nodes[k]))
    }

    /// Stencil on `nodes[start..start+5]` evaluated at `x0`.
    pub fn at(nodes: &[f64], start: usize, x0: f64) -> Self {
        let w = fd_weights(&nodes[start..start + 5], x0, 2);
        let mut d1 = [0.0; 5];
        let mut d2 = [0.0; 5];
        d1.copy_from_slice(&w[1]);
        d2.copy_from_slice(&w[2]);
        Self { start, d1, d2 }
    }

    /// Apply first-derivative weights to values produced by `f(index)`.
    pub fn apply1<T, F>(&self, mut f: F) -> T
    where
        T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
        F: FnMut(usize) -> T,
    {
        let mut acc = f(self.start) * self.d1[0];
        for j in 1..5 {
            acc = acc + f(self.start + j) * self.d1[j];
        }
        acc
    }

    pub fn apply2<T, F>(&self, mut f: F) -> T
    where
        T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
        F: FnMut(usize) -> T,
    {
        let mut acc = f(self.start) * self.d2[0];
        for j in 1..5 {
            acc = acc + f(self.start + j) * self.d2[j];
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn uniform_central_weights() {
        let w = fd_weights(&[-2.0, -1.0, 0.0, 1.0, 2.0], 0.0, 2);
        let d1 = [1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0];
        let d2 = [-1.0 / 12.0, 4.0 / 3.0, -5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0];
        for j in 0..5 {
            assert_abs_diff_eq!(w[1][j], d1[j], epsilon = 1e-14);
            assert_abs_diff_eq!(w[2][j], d2[j], epsilon = 1e-14);
        }
    }

    #[test]
    fn exact_on_quartics() {
        let xs = [0.1, 0.13, 0.2, 0.31, 0.33];
        let f = |x: f64| 3.0 * x.powi(4) - x.powi(3) + 2.0 * x - 1.0;
        let df = |x: f64| 12.0 * x.powi(3) - 3.0 * x * x + 2.0;
        let ddf = |x: f64| 36.0 * x * x - 6.0 * x;
        let s = Stencil5::centered(&xs, 2).unwrap();
        let d1: f64 = s.apply1(|i| f(xs[i]));
        let d2: f64 = s.apply2(|i| f(xs[i]));
        assert_abs_diff_eq!(d1, df(0.2), epsilon = 1e-10);
        assert_abs_diff_eq!(d2, ddf(0.2), epsilon = 1e-8);
    }

    #[test]
    fn centered_bounds() {
        let xs = [0.0, 1.0, 2.0, 3.0, 4.0, 5.0];
        assert!(Stencil5::centered(&xs, 1).is_none());
        assert!(Stencil5::centered(&xs, 2).is_some());
        assert!(Stencil5::centered(&xs, 3).is_some());
        assert!(Stencil5::centered(&xs, 4).is_none());
    }
}
