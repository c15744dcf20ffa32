//! Sample grids on an interval.

use std::f64::consts::PI;

/// `n` equally spaced points from `a` to `b` inclusive.
pub fn uniform(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect(),
    }
}

/// Cosine-clustered nodes `a + (b-a)(1 - cos(pi k/(n-1)))/2`, denser at both ends.
pub fn cosine(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => (0..n)
            .map(|k| {
                let s = 0.5 * (1.0 - (PI * k as f64 / (n - 1) as f64).cos());
                a + (b - a) * s
            })
            .collect(),
    }
}

/// Nodes uniform in `s = ln(t/(1-t))` between `a` and `b`, for `0 < a < b < 1`.
/// Spacing is proportional to `t(1-t)`, i.e. geometric towards both ends.
pub fn logit(a: f64, b: f64, n: usize) -> Vec<f64> {
    let l = |t: f64| (t / (1.0 - t)).ln();
    let mut g: Vec<f64> = uniform(l(a), l(b), n).into_iter().map(|s| 1.0 / (1.0 + (-s).exp())).collect();
    // pin the endpoints exactly
    if let Some(first) = g.first_mut() {
        *first = a;
    }
    if n > 1 {
        g[n - 1] = b;
    }
    g
}

pub fn strictly_increasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[0] < w[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_and_order() {
        for g in [uniform(0.1, 0.9, 11), cosine(0.1, 0.9, 11), logit(0.1, 0.9, 11)] {
            assert_eq!(g.len(), 11);
            assert!((g[0] - 0.1).abs() < 1e-15 && (g[10] - 0.9).abs() < 1e-15);
            assert!(strictly_increasing(&g));
        }
    }

    #[test]
    fn cosine_clusters_at_ends() {
        let g = cosine(0.0, 1.0, 21);
        assert!(g[1] - g[0] < g[11] - g[10]);
        let g = logit(0.05, 0.95, 201);
        assert!(g[1] - g[0] < 0.25 * (g[101] - g[100]));
        assert!((g[100] - 0.5).abs() < 1e-15);
    }
}
