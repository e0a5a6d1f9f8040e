//! Problem data and the constants that drive the regime atlas.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The five scalars `(a, λ, t0, T, x0)`.
///
/// Construction enforces `a > λ > 0`, `T > t0 ≥ 0` and `-1 ≤ x0 ≤ 1`; every other
/// module relies on these bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct ProblemParams {
    a: f64,
    lambda: f64,
    t0: f64,
    t_end: f64,
    x0: f64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    a: f64,
    lambda: f64,
    t0: f64,
    #[serde(rename = "T")]
    t_end: f64,
    x0: f64,
}

impl TryFrom<RawParams> for ProblemParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        ProblemParams::new(raw.a, raw.lambda, raw.t0, raw.t_end, raw.x0)
    }
}

impl From<ProblemParams> for RawParams {
    fn from(p: ProblemParams) -> Self {
        RawParams {
            a: p.a,
            lambda: p.lambda,
            t0: p.t0,
            t_end: p.t_end,
            x0: p.x0,
        }
    }
}

impl ProblemParams {
    pub fn new(a: f64, lambda: f64, t0: f64, t_end: f64, x0: f64) -> Result<Self> {
        let named = [
            ("a", a),
            ("lambda", lambda),
            ("t0", t0),
            ("T", t_end),
            ("x0", x0),
        ];
        if let Some((name, _)) = named.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidParams(format!("{name} must be finite")));
        }
        if lambda <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "lambda must be positive, got {lambda}"
            )));
        }
        if a <= lambda {
            return Err(Error::InvalidParams(format!(
                "a must exceed lambda (a > lambda > 0), got a={a}, lambda={lambda}"
            )));
        }
        if t0 < 0.0 {
            return Err(Error::InvalidParams(format!(
                "t0 must be nonnegative, got {t0}"
            )));
        }
        if t_end <= t0 {
            return Err(Error::InvalidParams(format!(
                "T must exceed t0, got t0={t0}, T={t_end}"
            )));
        }
        if !(-1.0..=1.0).contains(&x0) {
            return Err(Error::InvalidParams(format!(
                "x0 must lie in [-1,1], got {x0}"
            )));
        }
        Ok(Self {
            a,
            lambda,
            t0,
            t_end,
            x0,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    /// Terminal time `T`.
    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    /// `T - t0`.
    pub fn horizon(&self) -> f64 {
        self.t_end - self.t0
    }

    /// Same problem with `t0` and `T` both moved by `delta`.
    pub fn shifted(&self, delta: f64) -> Result<Self> {
        Self::new(
            self.a,
            self.lambda,
            self.t0 + delta,
            self.t_end + delta,
            self.x0,
        )
    }

    /// Same problem with a new terminal time `t0 + horizon`.
    pub fn with_horizon(&self, horizon: f64) -> Result<Self> {
        Self::new(self.a, self.lambda, self.t0, self.t0 + horizon, self.x0)
    }

    pub fn constants(&self) -> DerivedConstants {
        derive_constants(self)
    }
}

/// Characteristic constants of an instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedConstants {
    /// `ρ = (1/λ) ln(a / (a - λ))`, the time-to-go below which descending pays off.
    pub rho: f64,
    /// `ρ₁ = (1 + x0)/a`, full-speed travel time from `x0` down to `-1`.
    pub rho1: f64,
    /// `ρ₂ = (1 - x0)/a`, full-speed travel time from `x0` up to `+1`.
    pub rho2: f64,
    /// `t̄ = T - ρ`.
    pub t_bar: f64,
    pub horizon: f64,
}

pub fn derive_constants(params: &ProblemParams) -> DerivedConstants {
    let (a, lambda) = (params.a, params.lambda);
    // ln(a/(a-λ)) = -ln(1 - λ/a)
    let rho = -(-lambda / a).ln_1p() / lambda;
    DerivedConstants {
        rho,
        rho1: (1.0 + params.x0) / a,
        rho2: (1.0 - params.x0) / a,
        t_bar: params.t_end - rho,
        horizon: params.horizon(),
    }
}
