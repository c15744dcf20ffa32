use crate::closed::{eminus3, eminus3_deriv, hopf_sd, hopf_sd_deriv};
use crate::InstantonError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    ClosedFormTrivial,
    ClosedFormHopfSD,
    ClosedFormEminus3,
    NumericGrid,
}

impl ProfileKind {
    pub fn name(self) -> &'static str {
        match self {
            ProfileKind::ClosedFormTrivial => "trivial",
            ProfileKind::ClosedFormHopfSD => "hopf_sd",
            ProfileKind::ClosedFormEminus3 => "eminus3",
            ProfileKind::NumericGrid => "numeric_grid",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoint {
    pub t: f64,
    pub a: [f64; 3],
}

/// Profile functions `(a1, a2, a3)(t)`, either in closed form or sampled.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileTriple {
    pub kind: ProfileKind,
    /// Label `n`, with `a2(1) = -n` for the boundary-value solutions.
    pub n: i32,
    pub grid: Option<Vec<ProfilePoint>>,
}

impl ProfileTriple {
    pub fn closed(kind: ProfileKind, n: i32) -> Self {
        Self { kind, n, grid: None }
    }

    /// Wrap sampled values; `t` must be strictly increasing inside `(0, 1)`.
    pub fn from_grid(n: i32, points: Vec<ProfilePoint>) -> Result<Self, InstantonError> {
        let ok = points.windows(2).all(|w| w[0].t < w[1].t) && points.iter().all(|p| p.t > 0.0 && p.t < 1.0);
        if !ok {
            return Err(InstantonError::InvalidConfig("grid t-values must increase strictly inside (0, 1)".into()));
        }
        Ok(Self { kind: ProfileKind::NumericGrid, n, grid: Some(points) })
    }

    pub fn points(&self) -> &[ProfilePoint] {
        self.grid.as_deref().unwrap_or(&[])
    }

    pub fn ts(&self) -> Vec<f64> {
        self.points().iter().map(|p| p.t).collect()
    }

    /// Index of a grid node equal to `t` (to 1e-14 relative).
    pub fn node_index(&self, t: f64) -> Option<usize> {
        let pts = self.points();
        let k = pts.partition_point(|p| p.t < t * (1.0 - 1e-14));
        (k < pts.len() && (pts[k].t - t).abs() <= 1e-14 * t.abs()).then_some(k)
    }

    /// Values at `t`: any `t` for closed forms, grid nodes for sampled data.
    pub fn eval(&self, t: f64) -> Result<[f64; 3], InstantonError> {
        match self.kind {
            ProfileKind::ClosedFormTrivial => Ok([1.0; 3]),
            ProfileKind::ClosedFormHopfSD => Ok(hopf_sd(t)),
            ProfileKind::ClosedFormEminus3 => Ok(eminus3(t)),
            ProfileKind::NumericGrid => {
                let k = self.node_index(t).ok_or(InstantonError::NotOnGrid { t })?;
                Ok(self.points()[k].a)
            }
        }
    }

    /// Exact derivative for closed forms; `None` for grids.
    pub fn exact_deriv(&self, t: f64) -> Option<[f64; 3]> {
        match self.kind {
            ProfileKind::ClosedFormTrivial => Some([0.0; 3]),
            ProfileKind::ClosedFormHopfSD => Some(hopf_sd_deriv(t)),
            ProfileKind::ClosedFormEminus3 => Some(eminus3_deriv(t)),
            ProfileKind::NumericGrid => None,
        }
    }

    /// Sample a closed form on the given nodes.
    pub fn sampled(&self, ts: &[f64]) -> Result<ProfileTriple, InstantonError> {
        let pts = ts
            .iter()
            .map(|&t| Ok(ProfilePoint { t, a: self.eval(t)? }))
            .collect::<Result<Vec<_>, InstantonError>>()?;
        ProfileTriple::from_grid(self.n, pts)
    }
}
