//! Constructive solution theory for the scalar optimal control problem
//!
//! ```text
//! minimize   J(x, u) = ∫_{t0}^{T} -e^{-λt} (x(t) + u(t)) dt
//! subject to ẋ = -a u,  x(t0) = x0,  |u| ≤ 1,  -1 ≤ x(t) ≤ 1,   a > λ > 0
//! ```
//!
//! The crate is split along the lines of the solution theory:
//!
//! * [`problem`]: parameter validation and the derived regime constants ρ, ρ₁, ρ₂, t̄.
//! * [`trajectory`]: piecewise-linear state paths with slopes tagged `{-a, 0, +a}`.
//! * [`synthesis`]: regime classification and closed-form candidate construction.
//! * [`cost`]: exact segment costs, the Δ kernel and the cost-gap identities.
//! * [`oracle`]: backward-induction DP and shape enumeration, used to verify candidates.
//! * [`pmp`]: maximum-principle multipliers (including the state-constraint measure),
//!   a certificate builder and a checker.

pub mod cost;
mod error;
pub mod oracle;
pub mod pmp;
pub mod problem;
pub mod synthesis;
pub mod trajectory;

pub use error::{Error, Result};
pub use problem::{derive_constants, DerivedConstants, ProblemParams};
pub use synthesis::{
    build_shape, classify, synthesize, Candidate, CandidateSet, CandidateStatus, Clause,
    RegimeLabel, ShapeSpec, SynthesisMode, SynthesisOptions, Theorem,
};
pub use trajectory::{Breakpoint, ControlLaw, FeasibilityReport, Slope, Trajectory};
