//! Piecewise-linear state paths.
//!
//! A [`Trajectory`] stores its breakpoints `(t, x)` together with one [`Slope`] tag per
//! segment. The numeric slope `{-a, 0, +a}` and the control `{+1, 0, -1}` are derived from
//! the tag, never from differences of stored floats.

use serde::{Deserialize, Serialize};

use crate::{Error, ProblemParams, Result};

/// Absolute tolerance for state bounds and boundary contact.
pub const STATE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Slope {
    Down,
    Hold,
    Up,
}

impl Slope {
    /// `ẋ` on a segment with this tag.
    pub fn rate(self, a: f64) -> f64 {
        match self {
            Slope::Down => -a,
            Slope::Hold => 0.0,
            Slope::Up => a,
        }
    }

    /// `u = -ẋ/a`.
    pub fn control(self) -> f64 {
        match self {
            Slope::Down => 1.0,
            Slope::Hold => 0.0,
            Slope::Up => -1.0,
        }
    }

    pub fn flipped(self) -> Slope {
        match self {
            Slope::Down => Slope::Up,
            Slope::Hold => Slope::Hold,
            Slope::Up => Slope::Down,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Breakpoint {
    pub t: f64,
    pub x: f64,
}

/// One linear piece of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub t_start: f64,
    pub t_end: f64,
    pub x_start: f64,
    pub x_end: f64,
    pub slope: Slope,
}

impl Segment {
    pub fn duration(&self) -> f64 {
        self.t_end - self.t_start
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    gain: f64,
    points: Vec<Breakpoint>,
    slopes: Vec<Slope>,
}

impl Trajectory {
    /// Assembles a trajectory from raw parts.
    ///
    /// Only structure is validated here (finite values, one tag per segment, strictly
    /// increasing times). Bounds and continuity are diagnosed by [`check_feasible`].
    pub fn from_parts(gain: f64, points: Vec<Breakpoint>, slopes: Vec<Slope>) -> Result<Self> {
        if !(gain.is_finite() && gain > 0.0) {
            return Err(Error::InvalidTrajectory(format!(
                "gain must be positive, got {gain}"
            )));
        }
        if points.len() < 2 {
            return Err(Error::InvalidTrajectory(
                "need at least two breakpoints".into(),
            ));
        }
        if slopes.len() + 1 != points.len() {
            return Err(Error::InvalidTrajectory(format!(
                "{} breakpoints need {} slope tags, got {}",
                points.len(),
                points.len() - 1,
                slopes.len()
            )));
        }
        if points.iter().any(|p| !(p.t.is_finite() && p.x.is_finite())) {
            return Err(Error::InvalidTrajectory("non-finite breakpoint".into()));
        }
        if let Some(w) = points.windows(2).find(|w| w[1].t <= w[0].t) {
            return Err(Error::InvalidTrajectory(format!(
                "breakpoint times must strictly increase ({} then {})",
                w[0].t, w[1].t
            )));
        }
        Ok(Self {
            gain,
            points,
            slopes,
        })
    }

    pub fn builder(gain: f64, t0: f64, x0: f64) -> TrajectoryBuilder {
        TrajectoryBuilder {
            gain,
            points: vec![Breakpoint { t: t0, x: x0 }],
            slopes: Vec::new(),
        }
    }

    pub fn gain(&self) -> f64 {
        self.gain
    }

    pub fn breakpoints(&self) -> &[Breakpoint] {
        &self.points
    }

    pub fn slopes(&self) -> &[Slope] {
        &self.slopes
    }

    pub fn t_start(&self) -> f64 {
        self.points[0].t
    }

    pub fn t_end(&self) -> f64 {
        self.points[self.points.len() - 1].t
    }

    pub fn x_start(&self) -> f64 {
        self.points[0].x
    }

    pub fn x_end(&self) -> f64 {
        self.points[self.points.len() - 1].x
    }

    pub fn num_segments(&self) -> usize {
        self.slopes.len()
    }

    pub fn segment(&self, i: usize) -> Segment {
        let (p, q) = (self.points[i], self.points[i + 1]);
        Segment {
            t_start: p.t,
            t_end: q.t,
            x_start: p.x,
            x_end: q.x,
            slope: self.slopes[i],
        }
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        (0..self.slopes.len()).map(move |i| self.segment(i))
    }

    /// Interior breakpoint times (switches of the control).
    pub fn switch_times(&self) -> Vec<f64> {
        self.points[1..self.points.len() - 1]
            .iter()
            .map(|p| p.t)
            .collect()
    }

    /// Index of the segment containing `t`, taking the right-hand segment at interior
    /// breakpoints and the last segment at the terminal time.
    pub fn segment_index_at(&self, t: f64) -> usize {
        let n = self.slopes.len();
        // first breakpoint strictly greater than t, minus one
        let idx = self.points.partition_point(|p| p.t <= t);
        idx.saturating_sub(1).min(n - 1)
    }

    /// State at time `t` (clamped to the domain).
    pub fn state_at(&self, t: f64) -> f64 {
        let t = t.clamp(self.t_start(), self.t_end());
        let i = self.segment_index_at(t);
        let p = self.points[i];
        p.x + self.slopes[i].rate(self.gain) * (t - p.t)
    }

    /// Control at `t`: right-hand segment at breakpoints, left-hand at the terminal time.
    pub fn control_at(&self, t: f64) -> f64 {
        self.slopes[self.segment_index_at(t)].control()
    }

    pub fn control_law(&self) -> ControlLaw {
        ControlLaw {
            pieces: self
                .segments()
                .map(|s| ControlPiece {
                    t_lo: s.t_start,
                    t_hi: s.t_end,
                    u: s.slope.control(),
                })
                .collect(),
        }
    }

    /// Copy with every breakpoint time moved by `delta`.
    pub fn shifted(&self, delta: f64) -> Trajectory {
        Trajectory {
            gain: self.gain,
            points: self
                .points
                .iter()
                .map(|p| Breakpoint {
                    t: p.t + delta,
                    x: p.x,
                })
                .collect(),
            slopes: self.slopes.clone(),
        }
    }

    /// Copy with the breakpoint set refined at `t` (no-op at existing breakpoints).
    pub fn refined_at(&self, t: f64) -> Trajectory {
        if t <= self.t_start() || t >= self.t_end() || self.points.iter().any(|p| p.t == t) {
            return self.clone();
        }
        let i = self.segment_index_at(t);
        let mut out = self.clone();
        out.points.insert(
            i + 1,
            Breakpoint {
                t,
                x: self.state_at(t),
            },
        );
        out.slopes.insert(i + 1, self.slopes[i]);
        out
    }
}

/// Incremental constructor; zero-length runs are dropped.
#[derive(Debug, Clone)]
pub struct TrajectoryBuilder {
    gain: f64,
    points: Vec<Breakpoint>,
    slopes: Vec<Slope>,
}

impl TrajectoryBuilder {
    fn last(&self) -> Breakpoint {
        self.points[self.points.len() - 1]
    }

    /// Follows `slope` until time `until`; the end state is integrated.
    pub fn run(self, slope: Slope, until: f64) -> Self {
        let p = self.last();
        let x = p.x + slope.rate(self.gain) * (until - p.t);
        self.run_to(slope, until, x)
    }

    /// Follows `slope` until time `until`, pinning the end state to `x_end` (used when a
    /// closed-form shape lands exactly on a boundary level).
    pub fn run_to(mut self, slope: Slope, until: f64, x_end: f64) -> Self {
        let p = self.last();
        if until == p.t {
            return self;
        }
        self.points.push(Breakpoint { t: until, x: x_end });
        self.slopes.push(slope);
        self
    }

    pub fn finish(self) -> Result<Trajectory> {
        Trajectory::from_parts(self.gain, self.points, self.slopes)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControlPiece {
    pub t_lo: f64,
    pub t_hi: f64,
    pub u: f64,
}

/// Piecewise-constant control with values in `{-1, 0, +1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControlLaw {
    pub pieces: Vec<ControlPiece>,
}

impl ControlLaw {
    /// Integrates `ẋ = -a u` exactly from `x0`, returning the state at every piece boundary.
    pub fn integrate(&self, a: f64, x0: f64) -> Vec<f64> {
        let mut xs = Vec::with_capacity(self.pieces.len() + 1);
        xs.push(x0);
        let mut x = x0;
        for piece in &self.pieces {
            x -= a * piece.u * (piece.t_hi - piece.t_lo);
            xs.push(x);
        }
        xs
    }
}

pub fn control_from_trajectory(traj: &Trajectory) -> ControlLaw {
    traj.control_law()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeasibilityItem {
    InitialCondition,
    StateBounds,
    SlopeAdmissibility,
    DomainCoverage,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityCheck {
    pub item: FeasibilityItem,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub checks: Vec<FeasibilityCheck>,
    pub passed: bool,
}

impl FeasibilityReport {
    pub fn get(&self, item: FeasibilityItem) -> Option<&FeasibilityCheck> {
        self.checks.iter().find(|c| c.item == item)
    }

    pub fn failed(&self, item: FeasibilityItem) -> bool {
        self.get(item).is_some_and(|c| !c.passed)
    }
}

/// Soft feasibility diagnosis of `traj` against `params`.
pub fn check_feasible(traj: &Trajectory, params: &ProblemParams) -> FeasibilityReport {
    let mut checks = Vec::with_capacity(4);

    let dx0 = (traj.x_start() - params.x0()).abs();
    checks.push(FeasibilityCheck {
        item: FeasibilityItem::InitialCondition,
        passed: dx0 <= STATE_TOL,
        detail: format!("|x(t0) - x0| = {dx0:e}"),
    });

    let worst = traj
        .breakpoints()
        .iter()
        .map(|p| (p.x.abs() - 1.0).max(0.0))
        .fold(0.0, f64::max);
    checks.push(FeasibilityCheck {
        item: FeasibilityItem::StateBounds,
        passed: worst <= STATE_TOL,
        detail: format!("max excursion beyond [-1,1] = {worst:e}"),
    });

    let gain_ok = (traj.gain() - params.a()).abs() <= 1e-15 * params.a();
    let mut slope_err: f64 = 0.0;
    for s in traj.segments() {
        let step = s.slope.rate(params.a()) * s.duration();
        let err = (s.x_end - s.x_start - step).abs() / step.abs().max(1.0);
        slope_err = slope_err.max(err);
    }
    checks.push(FeasibilityCheck {
        item: FeasibilityItem::SlopeAdmissibility,
        passed: gain_ok && slope_err <= STATE_TOL,
        detail: if gain_ok {
            format!("max relative slope mismatch = {slope_err:e}")
        } else {
            format!(
                "trajectory gain {} differs from a = {}",
                traj.gain(),
                params.a()
            )
        },
    });

    let coverage = (traj.t_start() - params.t0())
        .abs()
        .max((traj.t_end() - params.t_end()).abs());
    checks.push(FeasibilityCheck {
        item: FeasibilityItem::DomainCoverage,
        passed: coverage == 0.0,
        detail: format!(
            "domain [{}, {}] vs [{}, {}]",
            traj.t_start(),
            traj.t_end(),
            params.t0(),
            params.t_end()
        ),
    });

    let passed = checks.iter().all(|c| c.passed);
    FeasibilityReport { checks, passed }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    pub x: f64,
    pub u: f64,
}

/// `n` uniform samples over the domain (both ends included) merged with every breakpoint.
pub fn sample(traj: &Trajectory, n: usize) -> Vec<Sample> {
    let n = n.max(2);
    let (lo, hi) = (traj.t_start(), traj.t_end());
    let mut times: Vec<f64> = (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .chain(traj.breakpoints().iter().map(|p| p.t))
        .collect();
    times.sort_by(f64::total_cmp);
    times.dedup();
    times
        .into_iter()
        .map(|t| {
            // breakpoints carry their stored state exactly
            let x = traj
                .breakpoints()
                .iter()
                .find(|p| p.t == t)
                .map_or_else(|| traj.state_at(t), |p| p.x);
            Sample {
                t,
                x,
                u: traj.control_at(t),
            }
        })
        .collect()
}
