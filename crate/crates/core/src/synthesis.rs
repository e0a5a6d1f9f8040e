//! Regime classification and closed-form candidate construction.
//!
//! A regime is a pair (theorem, clause). The theorem is picked from `ρ` versus `2/a`
//! and the relative order of `ρ₁`, `ρ`, `ρ + ρ₂`; the clause from where the horizon
//! `T - t0` falls among that theorem's thresholds. Each clause lists one or two
//! trajectory forms.
//!
//! Two synthesis modes exist. [`SynthesisMode::Literal`] emits the forms exactly as the
//! clause tables list them. When `ρ < 2/a` some of those forms run a descent from `+1`
//! that is longer than `ρ`; such a path is not extremal and is beaten by leaving the
//! upper boundary later. [`SynthesisMode::Corrected`] (the default) replaces those forms
//! by a rise–hold–descend path whose final descent lasts exactly `ρ`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cost::total_cost_closed;
use crate::trajectory::{Slope, Trajectory};
use crate::{derive_constants, Error, ProblemParams, Result};

/// Slack allowed when a requested switch time is matched against its closed form.
const TIME_TOL: f64 = 1e-9;
/// Overshoot past a boundary level that is pinned back onto the level.
const PIN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theorem {
    Thm3a,
    Thm3b,
    Thm3c1,
    Thm3c2,
    Thm3c3,
    Thm3d,
}

impl Theorem {
    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::Thm3a => "Thm3a",
            Theorem::Thm3b => "Thm3b",
            Theorem::Thm3c1 => "Thm3c1",
            Theorem::Thm3c2 => "Thm3c2",
            Theorem::Thm3c3 => "Thm3c3",
            Theorem::Thm3d => "Thm3d",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Clause {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Clause {
    pub fn as_str(self) -> &'static str {
        match self {
            Clause::A => "a",
            Clause::B => "b",
            Clause::C => "c",
            Clause::D => "d",
            Clause::E => "e",
            Clause::F => "f",
            Clause::G => "g",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RegimeLabel {
    pub theorem: Theorem,
    pub clause: Clause,
}

impl fmt::Display for RegimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.theorem, self.clause)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CandidateStatus {
    UniqueGlobal,
    LocalCandidate,
}

/// The trajectory families that candidates are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ShapeSpec {
    PureDescent,
    /// Full rise until `switch`, then full descent.
    RiseThenDescend {
        switch: f64,
    },
    /// Rise to `+1` (reached at `hold_start`), hold until `hold_end`, then descend.
    RiseHoldDescend {
        hold_start: f64,
        hold_end: f64,
    },
    /// From `x0 = -1`: rise for half the horizon, descend back to `-1` at `T`.
    TentFromMinus1,
    /// Rise until `switch`, then descend so that `x(T) = -1`.
    DescendToMinus1AtT {
        switch: f64,
    },
}

impl ShapeSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ShapeSpec::PureDescent => "PureDescent",
            ShapeSpec::RiseThenDescend { .. } => "RiseThenDescend",
            ShapeSpec::RiseHoldDescend { .. } => "RiseHoldDescend",
            ShapeSpec::TentFromMinus1 => "TentFromMinus1",
            ShapeSpec::DescendToMinus1AtT { .. } => "DescendToMinus1AtT",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SynthesisMode {
    #[default]
    Corrected,
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SynthesisOptions {
    pub mode: SynthesisMode,
    /// Width of the band around each threshold treated as equality during
    /// classification. Zero means plain floating-point comparisons.
    pub snap_tol: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub trajectory: Trajectory,
    pub label: RegimeLabel,
    pub status: CandidateStatus,
    pub shape: ShapeSpec,
    /// Closed-form cost `J`.
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet {
    pub label: RegimeLabel,
    /// Sorted by cost, cheapest first.
    pub candidates: Vec<Candidate>,
}

impl CandidateSet {
    pub fn best(&self) -> &Candidate {
        &self.candidates[0]
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }
}

#[derive(Debug, Clone, Copy)]
struct Cmp {
    snap: f64,
}

impl Cmp {
    fn lt(self, x: f64, y: f64) -> bool {
        x < y - self.snap
    }
    fn le(self, x: f64, y: f64) -> bool {
        x <= y + self.snap
    }
    fn eq(self, x: f64, y: f64) -> bool {
        (x - y).abs() <= self.snap
    }
}

pub fn classify(params: &ProblemParams) -> RegimeLabel {
    classify_with(params, SynthesisOptions::default().snap_tol)
}

/// Classification with a threshold snap band of half-width `snap_tol`.
///
/// `x0 = -1` is tested exactly; the snap band only widens horizon and constant comparisons.
pub fn classify_with(params: &ProblemParams, snap_tol: f64) -> RegimeLabel {
    use Clause::*;
    use Theorem::*;
    let c = Cmp {
        snap: snap_tol.max(0.0),
    };
    let k = derive_constants(params);
    let (a, rho, rho1, rho2, h) = (params.a(), k.rho, k.rho1, k.rho2, k.horizon);
    let two_a = 2.0 / a;
    let c3 = (3.0 - params.x0()) / a;

    let theorem = if !c.lt(rho, two_a) {
        Thm3a
    } else if params.x0() == -1.0 {
        Thm3b
    } else if c.le(rho1, rho) {
        Thm3d
    } else if c.eq(rho1, rho + rho2) {
        Thm3c2
    } else if c.lt(rho1, rho + rho2) {
        Thm3c1
    } else {
        Thm3c3
    };

    let clause = match theorem {
        Thm3a => {
            if c.le(h, rho1) {
                A
            } else if c.lt(h, c3) {
                B
            } else {
                C
            }
        }
        Thm3b => {
            if c.le(h, 2.0 * rho) {
                A
            } else if c.lt(h, rho + two_a) {
                B
            } else if c.lt(h, 2.0 * two_a) {
                C
            } else if c.eq(h, 2.0 * two_a) {
                D
            } else {
                E
            }
        }
        Thm3c1 => {
            if c.le(h, rho) {
                A
            } else if c.lt(h, rho1) {
                B
            } else if c.eq(h, rho1) {
                C
            } else if c.lt(h, rho + rho2) {
                D
            } else if c.lt(h, c3) {
                E
            } else if c.eq(h, c3) {
                F
            } else {
                G
            }
        }
        Thm3c2 => {
            if c.le(h, rho) {
                A
            } else if c.lt(h, rho1) {
                B
            } else if c.eq(h, rho1) {
                C
            } else if c.lt(h, c3) {
                D
            } else if c.eq(h, c3) {
                F
            } else {
                G
            }
        }
        Thm3c3 => {
            if c.le(h, rho) {
                A
            } else if c.lt(h, rho + rho2) {
                B
            } else if c.lt(h, rho1) {
                C
            } else if c.eq(h, rho1) {
                D
            } else if c.lt(h, c3) {
                E
            } else if c.eq(h, c3) {
                F
            } else {
                G
            }
        }
        Thm3d => {
            if c.le(h, rho1) {
                A
            } else if c.le(h, 2.0 * rho - rho1) {
                B
            } else if c.lt(h, rho + rho2) {
                C
            } else if c.lt(h, c3) {
                D
            } else if c.eq(h, c3) {
                E
            } else {
                F
            }
        }
    };
    RegimeLabel { theorem, clause }
}

/// Whether the clause asserts a single form that is the unique global solution.
pub fn clause_status(label: RegimeLabel) -> CandidateStatus {
    use Clause::*;
    use Theorem::*;
    let unique = match label.theorem {
        Thm3a => true,
        Thm3b => matches!(label.clause, A | D | E),
        Thm3c1 => matches!(label.clause, A | B | F | G),
        Thm3c2 => matches!(label.clause, A | B | F | G),
        Thm3c3 => matches!(label.clause, A | B | C | F | G),
        Thm3d => matches!(label.clause, A | B | E | F),
    };
    if unique {
        CandidateStatus::UniqueGlobal
    } else {
        CandidateStatus::LocalCandidate
    }
}

/// The forms listed for `label`, with switch times evaluated for `params`.
pub fn clause_shapes(
    label: RegimeLabel,
    params: &ProblemParams,
    mode: SynthesisMode,
) -> Vec<ShapeSpec> {
    use Clause::*;
    use Theorem::*;
    let k = derive_constants(params);
    let (a, t0, t_end) = (params.a(), params.t0(), params.t_end());
    let corrected = mode == SynthesisMode::Corrected && label.theorem != Thm3a;

    let descent = ShapeSpec::PureDescent;
    let rise_to_tbar = ShapeSpec::RiseThenDescend { switch: k.t_bar };
    let to_minus1 = ShapeSpec::DescendToMinus1AtT {
        switch: 0.5 * (t_end + t0 - k.rho1),
    };
    let hold_until = |end: f64| ShapeSpec::RiseHoldDescend {
        hold_start: t0 + k.rho2,
        hold_end: end,
    };
    let leave_top = hold_until(k.t_bar);
    // touch +1 and leave it at once
    let via_top = if corrected {
        leave_top
    } else {
        ShapeSpec::RiseThenDescend {
            switch: t0 + k.rho2,
        }
    };
    // touch +1 and reach -1 exactly at T
    let via_top_to_minus1 = if corrected { leave_top } else { to_minus1 };
    let hold_to_minus1 = if corrected {
        leave_top
    } else {
        hold_until(t_end - 2.0 / a)
    };

    match (label.theorem, label.clause) {
        (Thm3a, A) => vec![descent],
        (Thm3a, B) => vec![to_minus1],
        (Thm3a, _) => vec![hold_until(t_end - 2.0 / a)],

        (Thm3b, A) => vec![ShapeSpec::TentFromMinus1],
        (Thm3b, B) => vec![ShapeSpec::TentFromMinus1, rise_to_tbar],
        (Thm3b, C) => vec![ShapeSpec::TentFromMinus1, via_top],
        (Thm3b, D) if corrected => vec![leave_top],
        (Thm3b, D) => vec![ShapeSpec::TentFromMinus1],
        (Thm3b, _) => vec![hold_to_minus1],

        (Thm3c1, A) => vec![descent],
        (Thm3c1, B) => vec![rise_to_tbar],
        (Thm3c1, C) => vec![descent, rise_to_tbar],
        (Thm3c1, D) => vec![rise_to_tbar, to_minus1],
        (Thm3c1, E) => vec![to_minus1, via_top],
        (Thm3c1, F) => vec![via_top_to_minus1],
        (Thm3c1, _) => vec![hold_to_minus1],

        (Thm3c2, A) => vec![descent],
        (Thm3c2, B) => vec![rise_to_tbar],
        (Thm3c2, C) => vec![descent, via_top],
        (Thm3c2, D | E) => vec![to_minus1, via_top],
        (Thm3c2, F) => vec![via_top_to_minus1],
        (Thm3c2, _) => vec![hold_to_minus1],

        (Thm3c3, A) => vec![descent],
        (Thm3c3, B) => vec![rise_to_tbar],
        (Thm3c3, C) => vec![via_top],
        (Thm3c3, D) => vec![descent, via_top],
        (Thm3c3, E) => vec![to_minus1, via_top],
        (Thm3c3, F) => vec![via_top_to_minus1],
        (Thm3c3, _) => vec![hold_to_minus1],

        (Thm3d, A) => vec![descent],
        (Thm3d, B) => vec![to_minus1],
        (Thm3d, C) => vec![rise_to_tbar, to_minus1],
        (Thm3d, D) => vec![to_minus1, via_top],
        (Thm3d, E) => vec![via_top_to_minus1],
        (Thm3d, _) => vec![hold_to_minus1],
    }
}

fn pin(x: f64, level: f64) -> f64 {
    if (x - level).abs() <= PIN_TOL {
        level
    } else {
        x
    }
}

fn infeasible(msg: String) -> Error {
    Error::InfeasibleShape(msg)
}

fn check_switch(name: &str, switch: f64, t0: f64, t_end: f64) -> Result<f64> {
    if !switch.is_finite() || switch < t0 - TIME_TOL || switch > t_end + TIME_TOL {
        return Err(infeasible(format!(
            "{name} switch {switch} lies outside [{t0}, {t_end}]"
        )));
    }
    Ok(switch.clamp(t0, t_end))
}

/// Builds the trajectory of `shape` for `params`.
///
/// States landing within `1e-9` of `±1` at a junction or at `T` are set exactly to the
/// boundary level; anything further outside `[-1, 1]` is an error.
pub fn build_shape(shape: ShapeSpec, params: &ProblemParams) -> Result<Trajectory> {
    let (a, t0, t_end, x0) = (params.a(), params.t0(), params.t_end(), params.x0());
    let k = derive_constants(params);
    let h = t_end - t0;
    let b = Trajectory::builder(a, t0, x0);
    match shape {
        ShapeSpec::PureDescent => {
            let end = pin(x0 - a * h, -1.0);
            if end < -1.0 {
                return Err(infeasible(format!(
                    "pure descent needs T - t0 <= (1 + x0)/a = {}, got {h}",
                    k.rho1
                )));
            }
            b.run_to(Slope::Down, t_end, end).finish()
        }
        ShapeSpec::RiseThenDescend { switch } => {
            let switch = check_switch("rise-then-descend", switch, t0, t_end)?;
            let apex = pin(x0 + a * (switch - t0), 1.0);
            if apex > 1.0 {
                return Err(infeasible(format!(
                    "rise until {switch} overshoots +1 (needs switch - t0 <= (1 - x0)/a = {})",
                    k.rho2
                )));
            }
            let end = pin(apex - a * (t_end - switch), -1.0);
            if end < -1.0 {
                return Err(infeasible(format!(
                    "descent after {switch} passes below -1 before T"
                )));
            }
            b.run_to(Slope::Up, switch, apex)
                .run_to(Slope::Down, t_end, end)
                .finish()
        }
        ShapeSpec::RiseHoldDescend {
            hold_start,
            hold_end,
        } => {
            let top = t0 + k.rho2;
            if !hold_start.is_finite() || (hold_start - top).abs() > TIME_TOL {
                return Err(infeasible(format!(
                    "hold at +1 must start at t0 + (1 - x0)/a = {top}, got {hold_start}"
                )));
            }
            let descent = t_end - hold_end;
            let need = k.rho2 + descent;
            if !hold_end.is_finite()
                || hold_end < hold_start - TIME_TOL
                || hold_end > t_end + TIME_TOL
            {
                return Err(infeasible(format!(
                    "hold at +1 on [{hold_start}, {hold_end}] needs T - t0 >= rho2 + (T - hold_end) = {need}, got {h}"
                )));
            }
            let hold_end = hold_end.clamp(hold_start, t_end);
            let end = pin(1.0 - a * (t_end - hold_end), -1.0);
            if end < -1.0 {
                return Err(infeasible(format!(
                    "final descent of length {descent} exceeds 2/a = {}",
                    2.0 / a
                )));
            }
            b.run_to(Slope::Up, hold_start, 1.0)
                .run_to(Slope::Hold, hold_end, 1.0)
                .run_to(Slope::Down, t_end, end)
                .finish()
        }
        ShapeSpec::TentFromMinus1 => {
            if x0 != -1.0 {
                return Err(infeasible(format!(
                    "tent starts from x0 = -1, got x0 = {x0}"
                )));
            }
            let apex = pin(-1.0 + a * h / 2.0, 1.0);
            if apex > 1.0 {
                return Err(infeasible(format!(
                    "tent needs T - t0 <= 4/a = {}, got {h}",
                    4.0 / a
                )));
            }
            b.run_to(Slope::Up, t0 + h / 2.0, apex)
                .run_to(Slope::Down, t_end, -1.0)
                .finish()
        }
        ShapeSpec::DescendToMinus1AtT { switch } => {
            let expected = 0.5 * (t_end + t0 - k.rho1);
            if !switch.is_finite() || (switch - expected).abs() > TIME_TOL {
                return Err(infeasible(format!(
                    "descent to -1 at T switches at (T + t0 - (1 + x0)/a)/2 = {expected}, got {switch}"
                )));
            }
            if switch < t0 - TIME_TOL {
                return Err(infeasible(format!(
                    "reaching -1 at T needs T - t0 >= (1 + x0)/a = {}, got {h}",
                    k.rho1
                )));
            }
            let switch = switch.clamp(t0, t_end);
            let apex = pin(x0 + a * (switch - t0), 1.0);
            if apex > 1.0 {
                return Err(infeasible(format!(
                    "reaching -1 at T without a hold needs T - t0 <= (3 - x0)/a = {}, got {h}",
                    (3.0 - x0) / a
                )));
            }
            b.run_to(Slope::Up, switch, apex)
                .run_to(Slope::Down, t_end, -1.0)
                .finish()
        }
    }
}

pub fn synthesize(params: &ProblemParams) -> CandidateSet {
    synthesize_with(params, SynthesisOptions::default())
        .expect("clause forms are feasible at zero snap")
}

/// Classifies `params` and builds every form of the clause, cheapest first.
pub fn synthesize_with(params: &ProblemParams, opts: SynthesisOptions) -> Result<CandidateSet> {
    let label = classify_with(params, opts.snap_tol);
    let status = clause_status(label);
    let mut candidates = clause_shapes(label, params, opts.mode)
        .into_iter()
        .map(|shape| {
            let trajectory = build_shape(shape, params)?;
            let cost = total_cost_closed(params, &trajectory)?.value;
            Ok(Candidate {
                trajectory,
                label,
                status,
                shape,
                cost,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    candidates.sort_by(compare_candidates);
    Ok(CandidateSet { label, candidates })
}

fn compare_candidates(x: &Candidate, y: &Candidate) -> Ordering {
    x.cost.total_cmp(&y.cost).then_with(|| {
        let tx = x.trajectory.breakpoints().iter().map(|p| p.t);
        let ty = y.trajectory.breakpoints().iter().map(|p| p.t);
        tx.zip(ty)
            .map(|(a, b)| a.total_cmp(&b))
            .find(|o| o.is_ne())
            .unwrap_or_else(|| {
                x.trajectory
                    .breakpoints()
                    .len()
                    .cmp(&y.trajectory.breakpoints().len())
            })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trajectory::check_feasible;

    fn p(a: f64, lambda: f64, t0: f64, t_end: f64, x0: f64) -> ProblemParams {
        ProblemParams::new(a, lambda, t0, t_end, x0).unwrap()
    }

    fn label(theorem: Theorem, clause: Clause) -> RegimeLabel {
        RegimeLabel { theorem, clause }
    }

    fn times(traj: &Trajectory) -> Vec<f64> {
        traj.breakpoints().iter().map(|b| b.t).collect()
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify(&p(1.0, 0.9, 0.0, 0.5, 0.0)),
            label(Theorem::Thm3a, Clause::A)
        );
        assert_eq!(
            classify(&p(2.0, 1.0, 0.0, 1.0, -1.0)),
            label(Theorem::Thm3b, Clause::A)
        );
        for h in [0.1, 0.7, 1.2, 1.9, 5.0] {
            assert_eq!(classify(&p(2.0, 1.0, 0.0, h, 0.0)).theorem, Theorem::Thm3d);
            assert_eq!(classify(&p(2.0, 1.0, 0.0, h, 1.0)).theorem, Theorem::Thm3c3);
        }
    }

    #[test]
    fn unique_descent_for_short_horizon() {
        let params = p(1.0, 0.9, 0.0, 0.5, 0.0);
        let set = synthesize(&params);
        assert_eq!(set.len(), 1);
        let c = set.best();
        assert_eq!(c.status, CandidateStatus::UniqueGlobal);
        assert_eq!(c.shape, ShapeSpec::PureDescent);
        assert_eq!(c.trajectory.breakpoints().len(), 2);
        assert_eq!(c.trajectory.x_end(), -0.5);
    }

    #[test]
    fn two_candidates_from_lower_boundary() {
        let params = p(2.0, 1.0, 0.0, 1.6, -1.0);
        let set = synthesize(&params);
        assert_eq!(set.label, label(Theorem::Thm3b, Clause::B));
        assert_eq!(set.len(), 2);
        assert!(set
            .candidates
            .iter()
            .all(|c| c.status == CandidateStatus::LocalCandidate));
        let tent = set
            .candidates
            .iter()
            .find(|c| c.shape == ShapeSpec::TentFromMinus1)
            .unwrap();
        assert_eq!(times(&tent.trajectory), vec![0.0, 0.8, 1.6]);
        let other = set
            .candidates
            .iter()
            .find(|c| c.shape != ShapeSpec::TentFromMinus1)
            .unwrap();
        let tbar = 1.6 - std::f64::consts::LN_2;
        assert!((other.trajectory.switch_times()[0] - tbar).abs() < 1e-15);
        assert!((tbar - 0.906_852_819_440_054_7).abs() < 1e-15);
        assert!(set.candidates[0].cost <= set.candidates[1].cost);
    }

    #[test]
    fn rise_hold_descend_for_long_horizon() {
        let params = p(1.0, 0.9, 0.0, 4.5, 0.0);
        let set = synthesize(&params);
        assert_eq!(set.label, label(Theorem::Thm3a, Clause::C));
        assert_eq!(set.len(), 1);
        let c = set.best();
        assert_eq!(c.status, CandidateStatus::UniqueGlobal);
        assert_eq!(times(&c.trajectory), vec![0.0, 1.0, 2.5, 4.5]);
        let xs: Vec<f64> = c.trajectory.breakpoints().iter().map(|b| b.x).collect();
        assert_eq!(xs, vec![0.0, 1.0, 1.0, -1.0]);
        assert_eq!(
            c.trajectory.slopes(),
            &[Slope::Up, Slope::Hold, Slope::Down]
        );
    }

    #[test]
    fn build_shape_examples() {
        let params = p(1.0, 0.5, 0.0, 2.0, 1.0);
        let d = build_shape(ShapeSpec::PureDescent, &params).unwrap();
        assert_eq!(
            d.breakpoints()
                .iter()
                .map(|b| (b.t, b.x))
                .collect::<Vec<_>>(),
            vec![(0.0, 1.0), (2.0, -1.0)]
        );

        let params = p(2.0, 1.0, 0.0, 1.0, -1.0);
        let tent = build_shape(ShapeSpec::TentFromMinus1, &params).unwrap();
        assert_eq!(
            tent.breakpoints()
                .iter()
                .map(|b| (b.t, b.x))
                .collect::<Vec<_>>(),
            vec![(0.0, -1.0), (0.5, 0.0), (1.0, -1.0)]
        );

        // horizon 2 < rho2 + 2/a = 3
        let params = p(1.0, 0.9, 0.0, 2.0, 0.0);
        let err = build_shape(
            ShapeSpec::RiseHoldDescend {
                hold_start: 1.0,
                hold_end: 0.0,
            },
            &params,
        )
        .unwrap_err();
        assert!(err.to_string().contains("T - t0 >= rho2"), "{err}");
        assert!(build_shape(
            ShapeSpec::RiseHoldDescend {
                hold_start: 0.5,
                hold_end: 1.0
            },
            &params
        )
        .is_err());
        assert!(build_shape(ShapeSpec::TentFromMinus1, &params).is_err());
        assert!(build_shape(ShapeSpec::DescendToMinus1AtT { switch: 0.1 }, &params).is_err());
    }

    #[test]
    fn literal_forms_differ_only_where_rho_is_short() {
        let params = p(1.0, 0.9, 0.0, 4.5, 0.0);
        let opts = |mode| SynthesisOptions {
            mode,
            snap_tol: 0.0,
        };
        assert_eq!(
            synthesize_with(&params, opts(SynthesisMode::Literal)).unwrap(),
            synthesize_with(&params, opts(SynthesisMode::Corrected)).unwrap()
        );

        // a = 2, lambda = 1: rho = ln 2 < 1 = 2/a; long horizon from x0 = 0
        let params = p(2.0, 1.0, 0.0, 3.0, 0.0);
        let lit = synthesize_with(&params, opts(SynthesisMode::Literal)).unwrap();
        let cor = synthesize_with(&params, opts(SynthesisMode::Corrected)).unwrap();
        assert_eq!(lit.label, cor.label);
        assert_eq!(
            lit.best().shape,
            ShapeSpec::RiseHoldDescend {
                hold_start: 0.5,
                hold_end: 2.0
            }
        );
        assert_eq!(
            cor.best().shape,
            ShapeSpec::RiseHoldDescend {
                hold_start: 0.5,
                hold_end: 3.0 - std::f64::consts::LN_2
            }
        );
        assert!(cor.best().cost < lit.best().cost);
    }

    #[test]
    fn equality_clauses_need_exact_or_snapped_thresholds() {
        // x0 = -1 with horizon exactly 4/a
        let params = p(2.0, 1.0, 0.0, 2.0, -1.0);
        assert_eq!(classify(&params), label(Theorem::Thm3b, Clause::D));
        let set = synthesize(&params);
        assert_eq!(set.len(), 1);

        // rho1 = rho + rho2 holds only up to rounding when x0 = a rho / 2
        let x0 = std::f64::consts::LN_2;
        let params = p(2.0, 1.0, 0.0, 1.0, x0);
        assert_eq!(classify_with(&params, 1e-9).theorem, Theorem::Thm3c2);
        let set = synthesize_with(
            &params,
            SynthesisOptions {
                snap_tol: 1e-9,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(set
            .candidates
            .iter()
            .all(|c| check_feasible(&c.trajectory, &params).passed));
    }

    #[test]
    fn shifting_time_shifts_breakpoints() {
        let base = p(2.0, 1.0, 0.0, 1.6, -1.0);
        let moved = p(2.0, 1.0, 3.25, 4.85, -1.0);
        let (s0, s1) = (synthesize(&base), synthesize(&moved));
        assert_eq!(s0.label, s1.label);
        for (c0, c1) in s0.candidates.iter().zip(&s1.candidates) {
            for (b0, b1) in c0
                .trajectory
                .breakpoints()
                .iter()
                .zip(c1.trajectory.breakpoints())
            {
                assert!((b0.t + 3.25 - b1.t).abs() < 1e-12);
                assert!((b0.x - b1.x).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn every_clause_is_reachable() {
        // horizons chosen inside each clause for one parameter set per theorem
        let cases: &[(f64, f64, f64, &[f64])] = &[
            (1.0, 0.9, 0.0, &[0.5, 2.0, 4.0]),
            (2.0, 1.0, -1.0, &[1.0, 1.6, 1.8, 2.0, 2.5]),
            (2.0, 1.0, 0.0, &[0.3, 1.0, 1.2, 1.6, 1.75, 2.5]),
            (2.0, 1.0, 1.0, &[0.5, 0.8, 1.0, 1.5]),
            (2.0, 1.0, 0.5, &[0.5, 0.7, 0.75, 0.8, 1.2, 1.25, 2.0]),
        ];
        for &(a, l, x0, hs) in cases {
            for &h in hs {
                let params = p(a, l, 0.0, h, x0);
                let set = synthesize(&params);
                assert!(!set.is_empty());
                for c in &set.candidates {
                    assert!(
                        check_feasible(&c.trajectory, &params).passed,
                        "{} {h}",
                        set.label
                    );
                }
            }
        }
    }
}
