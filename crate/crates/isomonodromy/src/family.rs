use instanton::ProfileTriple;
use twistor::{cross_ratio_derivs, fuchsian_data, FuchsianData};

use crate::IsoError;

/// Fuchsian data sampled along increasing `t`, with the exact derivatives
/// of `x(t)` needed for chain-rule differentiation in `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct FuchsianFamily {
    /// Source profile label, e.g. `"eminus3"` or `"bvp"`.
    pub label: String,
    pub n: i32,
    pub samples: Vec<FuchsianData>,
    pub dxdt: Vec<f64>,
    pub d2xdt2: Vec<f64>,
}

impl FuchsianFamily {
    /// Build from profile values `a(t)` at strictly increasing `ts`.
    pub fn build<F>(label: &str, n: i32, ts: &[f64], mut a: F) -> Result<Self, IsoError>
    where
        F: FnMut(f64) -> Result<[f64; 3], IsoError>,
    {
        let mut samples = Vec::with_capacity(ts.len());
        let mut dxdt = Vec::with_capacity(ts.len());
        let mut d2xdt2 = Vec::with_capacity(ts.len());
        for &t in ts {
            samples.push(fuchsian_data(a(t)?, t)?);
            let (_, _, d1, d2) = cross_ratio_derivs(t)?;
            dxdt.push(d1);
            d2xdt2.push(d2);
        }
        Self::from_parts(label, n, samples, dxdt, d2xdt2)
    }

    /// Build from sampled values `(t, a)`.
    pub fn from_values(label: &str, n: i32, ts: &[f64], values: &[[f64; 3]]) -> Result<Self, IsoError> {
        let mut it = values.iter();
        Self::build(label, n, ts, |_| Ok(*it.next().expect("one value per t")))
    }

    /// Build from a closed form (any `ts`) or a grid profile (`ts` on nodes).
    pub fn from_profile(profile: &ProfileTriple, ts: &[f64]) -> Result<Self, IsoError> {
        Self::build(profile.kind.name(), profile.n, ts, |t| Ok(profile.eval(t)?))
    }

    /// Wrap precomputed samples; checks that `x` increases strictly.
    pub fn from_parts(
        label: &str,
        n: i32,
        samples: Vec<FuchsianData>,
        dxdt: Vec<f64>,
        d2xdt2: Vec<f64>,
    ) -> Result<Self, IsoError> {
        for (k, w) in samples.windows(2).enumerate() {
            if !(w[0].t < w[1].t && w[0].x.re < w[1].x.re) {
                return Err(IsoError::NonMonotone { index: k + 1 });
            }
        }
        Ok(Self { label: label.to_string(), n, samples, dxdt, d2xdt2 })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn ts(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }

    /// The same family with every residue replaced by `f(k, A)`; used for
    /// negative controls.
    pub fn map_residues<F>(&self, mut f: F) -> Self
    where
        F: FnMut(usize, twistor::PoleLabel, liealg::TracelessMat2) -> liealg::TracelessMat2,
    {
        use twistor::PoleLabel::*;
        let samples = self
            .samples
            .iter()
            .enumerate()
            .map(|(k, s)| FuchsianData {
                a0: f(k, Zero, s.a0),
                a1: f(k, One, s.a1),
                ax: f(k, X, s.ax),
                ainf: f(k, Infinity, s.ainf),
                ..*s
            })
            .collect();
        Self { samples, ..self.clone() }
    }
}
