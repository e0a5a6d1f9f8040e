//! Maximum-principle multipliers for the Mayer form of the problem.
//!
//! The state is `(x, x₂)` with `ẋ₂ = -e^{-λt}(x - ẋ/a)` and cost `x₂(T)`. A certificate
//! consists of `γ ≥ 0`, a constant `p₂`, an absolutely continuous `p₁`, a nonnegative
//! measure `μ` carried by the times where `|x| = 1`, and a selection `ν = (±1, 0)` on each
//! support piece. With `η(t) = ∫_{[t0,t)} ν dμ` (closed at `T`) and `q = p + η`:
//!
//! * `ṗ₁ = e^{-λt} q₂`, `ṗ₂ = 0`;
//! * `q₁(T) = 0`, `q₂(T) = -γ`;
//! * `ū(t)` minimises `σ(t) u` over `[-1, 1]`, with `σ = a q₁ + e^{-λt} q₂`.
//!
//! The builder normalises `γ = 1`. Holding at `+1` forces `σ ≡ 0`, which is realised by
//! the density `e^{-λt}(1 - λ/a) dt` with `ν = (1, 0)`. When the path ends at `-1` a point
//! mass at `T` with `ν = (-1, 0)` absorbs the mismatch between `σ(s) = 0` at the final
//! switch `s` and the terminal condition `q₁(T) = 0`.

use serde::{Deserialize, Serialize};

use crate::synthesis::Candidate;
use crate::trajectory::{check_feasible, Slope, Trajectory};
use crate::{Error, ProblemParams, Result};

/// `p₁(t) = c0 + c1 e^{-λt}` on `[t_lo, t_hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdjointPiece {
    pub t_lo: f64,
    pub t_hi: f64,
    pub c0: f64,
    pub c1: f64,
}

impl AdjointPiece {
    fn value(&self, lambda: f64, t: f64) -> f64 {
        self.c0 + self.c1 * (-lambda * t).exp()
    }

    fn derivative(&self, lambda: f64, t: f64) -> f64 {
        -lambda * self.c1 * (-lambda * t).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub t: f64,
    pub mass: f64,
}

/// Density `c e^{-λt} (1 - λ/a) dt` on `[t_lo, t_hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityPiece {
    pub t_lo: f64,
    pub t_hi: f64,
    pub c: f64,
}

impl DensityPiece {
    /// Mass of `[t_lo, min(t, t_hi))`.
    fn mass_before(&self, params: &ProblemParams, t: f64) -> f64 {
        let (a, lambda) = (params.a(), params.lambda());
        let hi = t.min(self.t_hi);
        if hi <= self.t_lo {
            return 0.0;
        }
        // e^{-λ lo} - e^{-λ hi} = e^{-λ lo} (1 - e^{-λ (hi - lo)})
        let span = -(-lambda * (hi - self.t_lo)).exp_m1();
        self.c * (1.0 - lambda / a) * (-lambda * self.t_lo).exp() * span / lambda
    }

    pub fn mass(&self, params: &ProblemParams) -> f64 {
        self.mass_before(params, self.t_hi)
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Measure {
    pub atoms: Vec<Atom>,
    pub densities: Vec<DensityPiece>,
}

impl Measure {
    pub fn total_mass(&self, params: &ProblemParams) -> f64 {
        self.atoms.iter().map(|a| a.mass).sum::<f64>()
            + self.densities.iter().map(|d| d.mass(params)).sum::<f64>()
    }

    /// Number of support pieces (atoms first, then densities).
    pub fn num_pieces(&self) -> usize {
        self.atoms.len() + self.densities.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Multipliers {
    pub gamma: f64,
    pub p2: f64,
    #[serde(rename = "p1_pieces")]
    pub p1: Vec<AdjointPiece>,
    pub mu: Measure,
    /// `ν` on each support piece, atoms first, then densities.
    #[serde(rename = "nu_per_support_piece")]
    pub nu: Vec<[f64; 2]>,
}

impl Multipliers {
    fn p1_piece(&self, t: f64) -> Option<&AdjointPiece> {
        self.p1
            .iter()
            .find(|p| p.t_lo <= t && t < p.t_hi)
            .or_else(|| self.p1.iter().rev().find(|p| p.t_lo <= t && t <= p.t_hi))
    }

    pub fn p1_at(&self, params: &ProblemParams, t: f64) -> Option<f64> {
        self.p1_piece(t).map(|p| p.value(params.lambda(), t))
    }

    fn nu_of(&self, k: usize) -> [f64; 2] {
        self.nu.get(k).copied().unwrap_or([0.0, 0.0])
    }

    /// `η(t)`: over `[t0, t)`, or over `[t0, T]` when `closed` is set.
    fn eta(&self, params: &ProblemParams, t: f64, closed: bool) -> [f64; 2] {
        let mut eta = [0.0, 0.0];
        for (k, atom) in self.mu.atoms.iter().enumerate() {
            if atom.t < t || (closed && atom.t <= t) {
                let nu = self.nu_of(k);
                eta[0] += nu[0] * atom.mass;
                eta[1] += nu[1] * atom.mass;
            }
        }
        let offset = self.mu.atoms.len();
        for (k, d) in self.mu.densities.iter().enumerate() {
            // densities carry no mass at single points, so `closed` does not matter here
            let m = d.mass_before(params, t);
            let nu = self.nu_of(offset + k);
            eta[0] += nu[0] * m;
            eta[1] += nu[1] * m;
        }
        eta
    }
}

fn check_time(params: &ProblemParams, t: f64) -> Result<()> {
    if !(t >= params.t0() && t <= params.t_end()) {
        return Err(Error::OutsideDomain {
            t1: t,
            t2: t,
            lo: params.t0(),
            hi: params.t_end(),
        });
    }
    Ok(())
}

/// `q(t) = p(t) + η(t)`, with `η` over `[t0, t)` and over `[t0, T]` at `t = T`.
pub fn q_of_t(params: &ProblemParams, mult: &Multipliers, t: f64) -> Result<(f64, f64)> {
    check_time(params, t)?;
    q_with(params, mult, t, t == params.t_end())
}

/// `q(t⁺)`: `η` over `[t0, t]`.
pub fn q_right(params: &ProblemParams, mult: &Multipliers, t: f64) -> Result<(f64, f64)> {
    check_time(params, t)?;
    q_with(params, mult, t, true)
}

fn q_with(params: &ProblemParams, mult: &Multipliers, t: f64, closed: bool) -> Result<(f64, f64)> {
    let p1 = mult
        .p1_at(params, t)
        .ok_or_else(|| Error::InvalidTrajectory(format!("p1 is not defined at t = {t}")))?;
    let eta = mult.eta(params, t, closed);
    Ok((p1 + eta[0], mult.p2 + eta[1]))
}

/// `σ(t) = a q₁(t) + e^{-λt} q₂(t)`.
pub fn switching_sigma(params: &ProblemParams, mult: &Multipliers, t: f64) -> Result<f64> {
    let (q1, q2) = q_of_t(params, mult, t)?;
    Ok(params.a() * q1 + (-params.lambda() * t).exp() * q2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unsupported {
    pub reason: String,
}

impl std::fmt::Display for Unsupported {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "unsupported: {}", self.reason)
    }
}

impl std::error::Error for Unsupported {}

fn unsupported(reason: impl Into<String>) -> Unsupported {
    Unsupported {
        reason: reason.into(),
    }
}

/// Constructs normalised multipliers (`γ = 1`, `p₂ = -1`) for a synthesized candidate.
///
/// Supported paths are: a descent; a rise then a descent; an optional rise, a hold at
/// `+1`, then a descent. Anything else, or an infeasible path, is reported as
/// [`Unsupported`].
pub fn build_certificate(
    params: &ProblemParams,
    cand: &Candidate,
) -> std::result::Result<Multipliers, Unsupported> {
    let traj = &cand.trajectory;
    if !check_feasible(traj, params).passed {
        return Err(unsupported("candidate trajectory is infeasible"));
    }
    let (a, lambda, t_end) = (params.a(), params.lambda(), params.t_end());
    let segs: Vec<_> = traj.segments().collect();
    let pattern: Vec<Slope> = segs.iter().map(|s| s.slope).collect();
    let hold = match pattern.as_slice() {
        [Slope::Down] | [Slope::Up, Slope::Down] => None,
        [Slope::Hold, Slope::Down] => Some(segs[0]),
        [Slope::Up, Slope::Hold, Slope::Down] => Some(segs[1]),
        _ => return Err(unsupported(format!("slope pattern {pattern:?}"))),
    };
    if let Some(h) = hold {
        if h.x_start != 1.0 {
            return Err(unsupported(format!(
                "hold at level {} (only +1 is supported)",
                h.x_start
            )));
        }
    }
    let descent = segs[segs.len() - 1];
    let pure_descent = segs.len() == 1;

    let mut mu = Measure::default();
    let mut nu = Vec::new();
    let hold_mass = hold.map_or(0.0, |h| {
        let d = DensityPiece {
            t_lo: h.t_start,
            t_hi: h.t_end,
            c: 1.0,
        };
        let m = d.mass(params);
        mu.densities.push(d);
        m
    });

    // σ vanishes where the final descent starts; the terminal atom restores q₁(T) = 0
    let s = descent.t_start;
    let mut terminal = if pure_descent {
        0.0
    } else {
        ((-lambda * t_end).exp() - (1.0 - lambda / a) * (-lambda * s).exp()) / lambda
    };
    let scale = (-lambda * t_end).exp() / lambda;
    if terminal.abs() <= 1e-14 * scale || traj.x_end() != -1.0 {
        terminal = 0.0;
    }
    let terminal = terminal.max(0.0);
    if terminal > 0.0 {
        mu.atoms.push(Atom {
            t: t_end,
            mass: terminal,
        });
        nu.push([-1.0, 0.0]);
    }
    if hold.is_some() {
        nu.push([1.0, 0.0]);
    }

    let c0 = -(-lambda * t_end).exp() / lambda - hold_mass + terminal;
    let p1 = segs
        .iter()
        .map(|seg| AdjointPiece {
            t_lo: seg.t_start,
            t_hi: seg.t_end,
            c0,
            c1: 1.0 / lambda,
        })
        .collect();
    Ok(Multipliers {
        gamma: 1.0,
        p2: -1.0,
        p1,
        mu,
        nu,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DerivativeMode {
    /// Differentiate the stored closed form of each `p₁` piece.
    #[default]
    Analytic,
    /// Central differences with step `1e-6`, one-sided at piece ends.
    FiniteDifference,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckOptions {
    pub tol: f64,
    /// Number of uniform grid points; breakpoints and atom times are added.
    pub grid: usize,
    pub derivative: DerivativeMode,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            grid: 10_000,
            derivative: DerivativeMode::Analytic,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub residual: f64,
    pub passed: bool,
    pub notes: Vec<String>,
}

impl ConditionResult {
    fn new(residual: f64, tol: f64, notes: Vec<String>) -> Self {
        let passed = residual.is_finite() && residual <= tol && notes.is_empty();
        Self {
            residual,
            passed,
            notes,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcResidual {
    pub t_lo: f64,
    pub t_hi: f64,
    pub control: f64,
    pub residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub support: ConditionResult,
    pub adjoint: ConditionResult,
    pub transversality: ConditionResult,
    pub minimum: ConditionResult,
    pub arcs: Vec<ArcResidual>,
    pub nontrivial: bool,
    pub passed: bool,
}

fn check_grid(params: &ProblemParams, traj: &Trajectory, mult: &Multipliers, n: usize) -> Vec<f64> {
    let (lo, hi) = (params.t0(), params.t_end());
    let n = n.max(2);
    let mut ts: Vec<f64> = (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .chain(traj.breakpoints().iter().map(|b| b.t))
        .chain(mult.mu.atoms.iter().map(|a| a.t))
        .chain(mult.mu.densities.iter().flat_map(|d| [d.t_lo, d.t_hi]))
        .chain(mult.p1.iter().flat_map(|p| [p.t_lo, p.t_hi]))
        .filter(|t| t.is_finite() && *t >= lo && *t <= hi)
        .collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    ts
}

fn check_support(
    params: &ProblemParams,
    traj: &Trajectory,
    mult: &Multipliers,
    grid: &[f64],
    tol: f64,
) -> ConditionResult {
    let (lo, hi) = (params.t0(), params.t_end());
    let mut notes = Vec::new();
    let mut residual: f64 = 0.0;
    if mult.nu.len() != mult.mu.num_pieces() {
        notes.push(format!(
            "{} support pieces but {} nu values",
            mult.mu.num_pieces(),
            mult.nu.len()
        ));
    }
    // the boundary level required by each ν
    let level = |k: usize| -> Option<f64> {
        match mult.nu.get(k) {
            Some(&[n1, n2]) if n1 == 1.0 && n2 == 0.0 => Some(1.0),
            Some(&[n1, n2]) if n1 == -1.0 && n2 == 0.0 => Some(-1.0),
            _ => None,
        }
    };
    for (k, atom) in mult.mu.atoms.iter().enumerate() {
        if !(atom.mass >= 0.0) {
            notes.push(format!(
                "atom at {} has negative mass {}",
                atom.t, atom.mass
            ));
        }
        if !(atom.t >= lo && atom.t <= hi) {
            notes.push(format!("atom at {} outside [{lo}, {hi}]", atom.t));
            continue;
        }
        if atom.mass == 0.0 {
            continue;
        }
        match level(k) {
            Some(l) => residual = residual.max((traj.state_at(atom.t) - l).abs()),
            None => notes.push(format!(
                "atom at {} has nu outside {{(1,0), (-1,0)}}",
                atom.t
            )),
        }
    }
    let offset = mult.mu.atoms.len();
    for (k, d) in mult.mu.densities.iter().enumerate() {
        if !(d.c >= 0.0) {
            notes.push(format!(
                "density on [{}, {}] has negative coefficient {}",
                d.t_lo, d.t_hi, d.c
            ));
        }
        if !(d.t_lo >= lo && d.t_hi <= hi && d.t_lo <= d.t_hi) {
            notes.push(format!(
                "density interval [{}, {}] outside [{lo}, {hi}]",
                d.t_lo, d.t_hi
            ));
            continue;
        }
        if d.c == 0.0 || d.t_lo == d.t_hi {
            continue;
        }
        let Some(l) = level(offset + k) else {
            notes.push(format!(
                "density on [{}, {}] has nu outside {{(1,0), (-1,0)}}",
                d.t_lo, d.t_hi
            ));
            continue;
        };
        let inside = grid
            .iter()
            .copied()
            .chain(traj.breakpoints().iter().map(|b| b.t))
            .filter(|&t| t >= d.t_lo && t <= d.t_hi)
            .chain([d.t_lo, d.t_hi]);
        for t in inside {
            residual = residual.max((traj.state_at(t) - l).abs());
        }
    }
    ConditionResult::new(residual, tol, notes)
}

fn check_adjoint(
    params: &ProblemParams,
    mult: &Multipliers,
    grid: &[f64],
    opts: &CheckOptions,
) -> ConditionResult {
    let lambda = params.lambda();
    let (lo, hi) = (params.t0(), params.t_end());
    let mut notes = Vec::new();
    let mut residual: f64 = 0.0;

    let mut pieces = mult.p1.clone();
    pieces.sort_by(|x, y| x.t_lo.total_cmp(&y.t_lo));
    if pieces.is_empty() {
        notes.push("p1 has no pieces".to_string());
        return ConditionResult::new(f64::INFINITY, opts.tol, notes);
    }
    if pieces[0].t_lo > lo || pieces[pieces.len() - 1].t_hi < hi {
        notes.push(format!(
            "p1 pieces cover [{}, {}], domain is [{lo}, {hi}]",
            pieces[0].t_lo,
            pieces[pieces.len() - 1].t_hi
        ));
    }
    for w in pieces.windows(2) {
        if w[1].t_lo > w[0].t_hi {
            notes.push(format!("p1 undefined on ({}, {})", w[0].t_hi, w[1].t_lo));
        }
        let t = w[0].t_hi;
        residual = residual.max((w[0].value(lambda, t) - w[1].value(lambda, t)).abs());
    }
    for &t in grid {
        let Some(piece) = mult.p1_piece(t) else {
            continue;
        };
        let dp1 = match opts.derivative {
            DerivativeMode::Analytic => piece.derivative(lambda, t),
            DerivativeMode::FiniteDifference => {
                let h = 1e-6;
                let l = (t - h).max(piece.t_lo);
                let r = (t + h).min(piece.t_hi);
                if r > l {
                    (piece.value(lambda, r) - piece.value(lambda, l)) / (r - l)
                } else {
                    piece.derivative(lambda, t)
                }
            }
        };
        let q2 = match q_with(params, mult, t, t == hi) {
            Ok((_, q2)) => q2,
            Err(e) => {
                notes.push(e.to_string());
                continue;
            }
        };
        residual = residual.max((dp1 - (-lambda * t).exp() * q2).abs());
    }
    ConditionResult::new(residual, opts.tol, notes)
}

/// How far `ū` is from minimising `σ u`: `σ > 0` on a descent, `σ < 0` on a rise,
/// `σ ≠ 0` on a hold.
fn minimum_violation(sigma: f64, u: f64) -> f64 {
    if u > 0.0 {
        sigma.max(0.0)
    } else if u < 0.0 {
        (-sigma).max(0.0)
    } else {
        sigma.abs()
    }
}

/// Checks the four conditions and nontriviality on a dense grid.
pub fn check_certificate(
    params: &ProblemParams,
    cand: &Candidate,
    mult: &Multipliers,
    opts: CheckOptions,
) -> CertificateReport {
    let traj = &cand.trajectory;
    let tol = opts.tol;
    let hi = params.t_end();
    let grid = check_grid(params, traj, mult, opts.grid);

    let support = check_support(params, traj, mult, &grid, tol);
    let adjoint = check_adjoint(params, mult, &grid, &opts);

    let transversality = match q_of_t(params, mult, hi) {
        Ok((q1, q2)) => {
            ConditionResult::new(q1.abs().max((q2 + mult.gamma).abs()), tol, Vec::new())
        }
        Err(e) => ConditionResult::new(f64::INFINITY, tol, vec![e.to_string()]),
    };
    let mut trans_notes = transversality.notes.clone();
    if !(mult.gamma >= 0.0) {
        trans_notes.push(format!("gamma = {} is negative", mult.gamma));
    }
    let transversality = ConditionResult::new(transversality.residual, tol, trans_notes);

    let mut arcs = Vec::new();
    let mut min_notes = Vec::new();
    for seg in traj.segments() {
        let u = seg.slope.control();
        let mut worst: f64 = 0.0;
        for &t in grid.iter().filter(|&&t| t >= seg.t_start && t <= seg.t_end) {
            match switching_sigma(params, mult, t) {
                Ok(sigma) => worst = worst.max(minimum_violation(sigma, u)),
                Err(e) => {
                    min_notes.push(e.to_string());
                    break;
                }
            }
        }
        arcs.push(ArcResidual {
            t_lo: seg.t_start,
            t_hi: seg.t_end,
            control: u,
            residual: worst,
            passed: worst <= tol,
        });
    }
    let min_residual = arcs.iter().map(|a| a.residual).fold(0.0, f64::max);
    let minimum = ConditionResult::new(min_residual, tol, min_notes);

    let p_norm = grid
        .iter()
        .filter_map(|&t| mult.p1_at(params, t))
        .map(f64::abs)
        .fold(mult.p2.abs(), f64::max);
    let nontrivial = p_norm > 0.0 || mult.mu.total_mass(params) > 0.0 || mult.gamma > 0.0;

    let passed =
        support.passed && adjoint.passed && transversality.passed && minimum.passed && nontrivial;
    CertificateReport {
        support,
        adjoint,
        transversality,
        minimum,
        arcs,
        nontrivial,
        passed,
    }
}
