//! Independent global-optimum estimates.
//!
//! [`dp_solve`] runs backward induction on a time × state grid with the exact per-step
//! running cost; [`shape_search`] enumerates the bang–hold–bang shape family over a grid of
//! free switch times. Neither uses the classification logic of [`crate::synthesis`].

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cost::{piece_integral, total_cost_closed};
use crate::synthesis::{build_shape, CandidateSet, ShapeSpec};
use crate::trajectory::Breakpoint;
use crate::{derive_constants, Error, ProblemParams, Result};

/// Transitions landing this far outside `[-1, 1]` are pruned.
const BOUND_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n_t: usize,
    pub n_x: usize,
    pub controls: Vec<f64>,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            n_t: 2000,
            n_x: 401,
            controls: vec![-1.0, -0.5, 0.0, 0.5, 1.0],
        }
    }
}

impl GridSpec {
    pub fn new(n_t: usize, n_x: usize, controls: Vec<f64>) -> Result<Self> {
        let g = Self { n_t, n_x, controls };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_t < 10 {
            return Err(Error::InvalidGrid(format!(
                "n_t must be at least 10, got {}",
                self.n_t
            )));
        }
        if self.n_x < 11 || self.n_x.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "n_x must be odd and at least 11, got {}",
                self.n_x
            )));
        }
        if let Some(u) = self
            .controls
            .iter()
            .find(|u| !(u.is_finite() && u.abs() <= 1.0))
        {
            return Err(Error::InvalidGrid(format!(
                "control {u} lies outside [-1, 1]"
            )));
        }
        for must in [-1.0, 0.0, 1.0] {
            if !self.controls.contains(&must) {
                return Err(Error::InvalidGrid(format!("controls must include {must}")));
            }
        }
        Ok(())
    }

    /// Controls in the order used for tie-breaking: by `|u|`, then by value.
    fn ordered_controls(&self) -> Vec<f64> {
        let mut us = self.controls.clone();
        us.sort_by(|x, y| x.abs().total_cmp(&y.abs()).then(x.total_cmp(y)));
        us.dedup();
        us
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct OracleDiagnostics {
    /// Backward-pass transitions discarded for leaving `[-1, 1]`.
    pub pruned: u64,
    /// Transitions (or shapes) evaluated.
    pub evaluated: u64,
    /// Cost of the extracted path (exact integral along it).
    pub path_cost: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub value: f64,
    pub path: Vec<Breakpoint>,
    pub policy_controls: Vec<f64>,
    pub diagnostics: OracleDiagnostics,
    /// Winning shape for [`shape_search`]; `None` for the DP.
    pub shape: Option<ShapeSpec>,
}

struct Lattice {
    lo_step: f64,
    n_x: usize,
}

impl Lattice {
    fn node(&self, i: usize) -> f64 {
        if i == self.n_x - 1 {
            1.0
        } else {
            -1.0 + self.lo_step * i as f64
        }
    }

    /// Fritsch–Carlson slopes for monotone cubic interpolation of `v`.
    fn slopes(&self, v: &[f64], out: &mut [f64]) {
        let n = self.n_x;
        let h = self.lo_step;
        let secant = |i: usize| (v[i + 1] - v[i]) / h;
        out[0] = secant(0);
        out[n - 1] = secant(n - 2);
        for (i, d) in out.iter_mut().enumerate().take(n - 1).skip(1) {
            let (l, r) = (secant(i - 1), secant(i));
            *d = if l * r <= 0.0 {
                0.0
            } else {
                2.0 * l * r / (l + r)
            };
        }
    }

    /// Monotone cubic interpolation of a slice at `x` (clamped into `[-1, 1]`).
    fn interp(&self, v: &[f64], d: &[f64], x: f64) -> f64 {
        let s = ((x.clamp(-1.0, 1.0) + 1.0) / self.lo_step).max(0.0);
        let j = (s.floor() as usize).min(self.n_x - 2);
        let w = (s - j as f64).clamp(0.0, 1.0);
        if w == 0.0 {
            return v[j];
        }
        let h = self.lo_step;
        let (w2, w3) = (w * w, w * w * w);
        (2.0 * w3 - 3.0 * w2 + 1.0) * v[j]
            + (w3 - 2.0 * w2 + w) * h * d[j]
            + (-2.0 * w3 + 3.0 * w2) * v[j + 1]
            + (w3 - w2) * h * d[j + 1]
    }
}

fn admissible(x_next: f64) -> bool {
    (-1.0 - BOUND_TOL..=1.0 + BOUND_TOL).contains(&x_next)
}

/// Backward induction for `V(t, x)` with `V(T, ·) = 0`, followed by greedy path extraction.
///
/// Off-lattice values use monotone cubic interpolation; linear interpolation smears the
/// kink where a descent just reaches `-1` at `T` and biases the value upward.
pub fn dp_solve(params: &ProblemParams, grid: &GridSpec) -> Result<OracleResult> {
    grid.validate()?;
    let (a, lambda, t0) = (params.a(), params.lambda(), params.t0());
    let x0 = params.x0();
    if !(-1.0..=1.0).contains(&x0) {
        return Err(Error::InvalidParams(format!(
            "x0 must lie in [-1,1], got {x0}"
        )));
    }
    let n_t = grid.n_t;
    let dt = params.horizon() / n_t as f64;
    let lat = Lattice {
        lo_step: 2.0 / (grid.n_x - 1) as f64,
        n_x: grid.n_x,
    };
    let controls = grid.ordered_controls();
    let time = |k: usize| {
        if k == n_t {
            params.t_end()
        } else {
            t0 + dt * k as f64
        }
    };
    let step_cost = |k: usize, x: f64, u: f64| piece_integral(lambda, time(k), x, -a * u, u, dt);

    let width = grid.n_x;
    let mut values = vec![0.0; (n_t + 1) * width];
    let mut slopes = vec![0.0; (n_t + 1) * width];
    let mut pruned = 0u64;
    for k in (0..n_t).rev() {
        let (head, tail) = values.split_at_mut((k + 1) * width);
        let next = &tail[..width];
        let next_d = &slopes[(k + 1) * width..(k + 2) * width];
        let cur = &mut head[k * width..];
        pruned += cur
            .par_iter_mut()
            .with_min_len(64)
            .enumerate()
            .map(|(i, slot)| {
                let x = lat.node(i);
                let mut best = f64::INFINITY;
                let mut dropped = 0u64;
                for &u in &controls {
                    let x_next = x - a * u * dt;
                    if !admissible(x_next) {
                        dropped += 1;
                        continue;
                    }
                    let v = step_cost(k, x, u) + lat.interp(next, next_d, x_next);
                    if v < best {
                        best = v;
                    }
                }
                *slot = best;
                dropped
            })
            .sum::<u64>();
        let (d_head, _) = slopes.split_at_mut((k + 1) * width);
        lat.slopes(
            &values[k * width..(k + 1) * width],
            &mut d_head[k * width..],
        );
    }
    let value = lat.interp(&values[..width], &slopes[..width], x0);

    let mut path = Vec::with_capacity(n_t + 1);
    let mut policy = Vec::with_capacity(n_t);
    let mut x = x0;
    let mut path_cost = 0.0;
    path.push(Breakpoint { t: t0, x });
    for k in 0..n_t {
        let next = &values[(k + 1) * width..(k + 2) * width];
        let next_d = &slopes[(k + 1) * width..(k + 2) * width];
        let mut choice: Option<(f64, f64, f64)> = None; // (total, u, step)
        for &u in &controls {
            let x_next = x - a * u * dt;
            if !admissible(x_next) {
                continue;
            }
            let step = step_cost(k, x, u);
            let total = step + lat.interp(next, next_d, x_next);
            // controls are ordered by |u|, so only a clear improvement displaces a smaller one
            let better = match choice {
                None => true,
                Some((b, _, _)) => total < b - 1e-12 * (1.0 + b.abs()),
            };
            if better {
                choice = Some((total, u, step));
            }
        }
        let (_, u, step) = choice.expect("holding is always admissible");
        x = (x - a * u * dt).clamp(-1.0, 1.0);
        path_cost += step;
        policy.push(u);
        path.push(Breakpoint { t: time(k + 1), x });
    }

    Ok(OracleResult {
        value,
        path,
        policy_controls: policy,
        diagnostics: OracleDiagnostics {
            pruned,
            evaluated: (n_t * grid.n_x * controls.len()) as u64,
            path_cost,
        },
        shape: None,
    })
}

/// The shapes enumerated by [`shape_search`] at resolution `m`, before feasibility filtering.
pub fn shape_family(params: &ProblemParams, m: usize) -> Vec<ShapeSpec> {
    let m = m.max(2);
    let k = derive_constants(params);
    let (a, t0, t_end) = (params.a(), params.t0(), params.t_end());
    let h = k.horizon;
    let grid = (0..=m).map(move |i| {
        if i == m {
            t_end
        } else {
            t0 + h * i as f64 / m as f64
        }
    });

    let mut shapes = vec![ShapeSpec::PureDescent];
    shapes.extend(
        grid.clone()
            .map(|s| ShapeSpec::RiseThenDescend { switch: s }),
    );
    let hold_start = t0 + k.rho2;
    let mut ends: Vec<f64> = grid.filter(|&e| e >= hold_start).collect();
    ends.extend(
        [t_end - 2.0 / a, k.t_bar]
            .into_iter()
            .filter(|&e| e >= hold_start && e <= t_end),
    );
    shapes.extend(ends.into_iter().map(|e| ShapeSpec::RiseHoldDescend {
        hold_start,
        hold_end: e,
    }));
    if params.x0() == -1.0 {
        shapes.push(ShapeSpec::TentFromMinus1);
    }
    shapes.push(ShapeSpec::DescendToMinus1AtT {
        switch: 0.5 * (t_end + t0 - k.rho1),
    });
    shapes
}

/// Closed-form cost of every feasible shape in `shapes`; infeasible ones are skipped.
pub fn evaluate_shapes(params: &ProblemParams, shapes: &[ShapeSpec]) -> Vec<(ShapeSpec, f64)> {
    shapes
        .iter()
        .filter_map(|&s| {
            let traj = build_shape(s, params).ok()?;
            let cost = total_cost_closed(params, &traj).ok()?;
            Some((s, cost.value))
        })
        .collect()
}

/// Cheapest member of the shape family at switch-time resolution `m`.
pub fn shape_search(params: &ProblemParams, m: usize) -> OracleResult {
    shape_search_with(params, m, &[])
}

/// [`shape_search`] with extra shapes (for example exact switch times) added to the pool.
pub fn shape_search_with(params: &ProblemParams, m: usize, extra: &[ShapeSpec]) -> OracleResult {
    let mut pool = shape_family(params, m);
    pool.extend_from_slice(extra);
    let scored = evaluate_shapes(params, &pool);
    let (shape, value) = scored
        .iter()
        .copied()
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .expect("holding or descending is always feasible for some shape");
    let traj = build_shape(shape, params).expect("scored shapes are buildable");
    OracleResult {
        value,
        path: traj.breakpoints().to_vec(),
        policy_controls: traj.slopes().iter().map(|s| s.control()).collect(),
        diagnostics: OracleDiagnostics {
            pruned: (pool.len() - scored.len()) as u64,
            evaluated: scored.len() as u64,
            path_cost: value,
        },
        shape: Some(shape),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerificationVerdict {
    pub passed: bool,
    pub candidate_cost: f64,
    pub oracle_value: f64,
    /// `oracle_value - candidate_cost`; negative when the oracle found something cheaper.
    pub gap: f64,
    pub tol: f64,
}

/// Two-sided agreement between the cheapest candidate and an oracle value.
pub fn compare(
    _params: &ProblemParams,
    cands: &CandidateSet,
    oracle: &OracleResult,
    tol: f64,
) -> VerificationVerdict {
    let best = cands
        .candidates
        .iter()
        .map(|c| c.cost)
        .fold(f64::INFINITY, f64::min);
    let gap = oracle.value - best;
    VerificationVerdict {
        passed: best <= oracle.value + tol && oracle.value <= best + tol,
        candidate_cost: best,
        oracle_value: oracle.value,
        gap,
        tol,
    }
}
