use isomonodromy::{Branch, PviParams};
use liealg::C64;

use crate::PainleveError;

const SINGULAR_TOL: f64 = 1e-12;

/// Which of the two printed formulas for `δ` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeltaVariant {
    /// `δ = -(n² - 4)/8`.
    IntroDelta,
    /// `δ = -(n² - 1)/8`.
    TheoremDelta,
}

impl DeltaVariant {
    pub const BOTH: [DeltaVariant; 2] = [DeltaVariant::IntroDelta, DeltaVariant::TheoremDelta];

    pub fn delta(self, n: i32) -> f64 {
        let n2 = f64::from(n * n);
        match self {
            DeltaVariant::IntroDelta => -(n2 - 4.0) / 8.0,
            DeltaVariant::TheoremDelta => -(n2 - 1.0) / 8.0,
        }
    }

    pub fn other(self) -> Self {
        match self {
            DeltaVariant::IntroDelta => DeltaVariant::TheoremDelta,
            DeltaVariant::TheoremDelta => DeltaVariant::IntroDelta,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DeltaVariant::IntroDelta => "intro",
            DeltaVariant::TheoremDelta => "theorem",
        }
    }
}

/// `α = (n ± 2)²/8` (plus/minus), `β = -n²/8`, `γ = n²/8`, and `δ` from
/// the chosen variant.
pub fn params_from_n(n: i32, variant: DeltaVariant, branch: Branch) -> PviParams {
    let nf = f64::from(n);
    let s = match branch {
        Branch::Plus => 2.0,
        Branch::Minus => -2.0,
    };
    PviParams::real((nf + s).powi(2) / 8.0, -nf * nf / 8.0, nf * nf / 8.0, variant.delta(n))
}

/// `y''` from Painlevé VI:
///
/// ```text
/// y'' = ½(1/y + 1/(y-1) + 1/(y-x)) y'² - (1/x + 1/(x-1) + 1/(y-x)) y'
///     + y(y-1)(y-x)/(x²(x-1)²) · (α + βx/y² + γ(x-1)/(y-1)² + δx(x-1)/(y-x)²)
/// ```
pub fn pvi_second_derivative(p: &PviParams, x: C64, y: C64, yp: C64) -> Result<C64, PainleveError> {
    for (v, what) in [(x, "x = 0"), (x - 1.0, "x = 1")] {
        if v.norm() < SINGULAR_TOL {
            return Err(PainleveError::SingularArgument { what, x, y });
        }
    }
    for (v, what) in [(y, "y = 0"), (y - 1.0, "y = 1"), (y - x, "y = x")] {
        if v.norm() < SINGULAR_TOL {
            return Err(PainleveError::SingularArgument { what, x, y });
        }
    }
    let (y1, yx, x1) = (y - 1.0, y - x, x - 1.0);
    let quad = (y.inv() + y1.inv() + yx.inv()) * yp * yp * 0.5;
    let lin = (x.inv() + x1.inv() + yx.inv()) * yp;
    let pot = p.alpha + p.beta * x / (y * y) + p.gamma * x1 / (y1 * y1) + p.delta * x * x1 / (yx * yx);
    Ok(quad - lin + y * y1 * yx / (x * x * x1 * x1) * pot)
}
