//! Discounted cost `J = ∫ -e^{-λt} (x(t) + u(t)) dt` and the Δ gap kernel.
//!
//! Every closed form in this module reduces to [`piece_integral`], which integrates the
//! running cost over a stretch where `x` is affine and `u` constant, using the
//! antiderivatives of `e^{-λt}` and `t e^{-λt}` written relative to the stretch start.

use serde::{Deserialize, Serialize};

use crate::trajectory::{Slope, Trajectory};
use crate::{Error, ProblemParams, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostValue {
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SegmentCost {
    pub t1: f64,
    pub t2: f64,
    pub value: f64,
}

/// `∫_0^h e^{-λτ} dτ`.
fn exp_moment0(lambda: f64, h: f64) -> f64 {
    -(-lambda * h).exp_m1() / lambda
}

/// `∫_0^h τ e^{-λτ} dτ`.
fn exp_moment1(lambda: f64, h: f64) -> f64 {
    let z = lambda * h;
    if z.abs() < 0.5 {
        // 1 - e^{-z}(1+z) = Σ_{k≥2} (-1)^k (k-1) z^k / k!
        let mut term = z; // z^k / k! at k = 1
        let mut sum = 0.0;
        for k in 2..30 {
            term *= z / k as f64;
            let add = if k % 2 == 0 { 1.0 } else { -1.0 } * (k - 1) as f64 * term;
            sum += add;
            if add.abs() <= 1e-18 * sum.abs() {
                break;
            }
        }
        sum / (lambda * lambda)
    } else {
        (exp_moment0(lambda, h) - h * (-z).exp()) / lambda
    }
}

/// Running cost over `[t_a, t_a + h]` when `x(t_a) = x_a`, `ẋ = rate` and `u` is constant.
pub fn piece_integral(lambda: f64, t_a: f64, x_a: f64, rate: f64, u: f64, h: f64) -> f64 {
    -(-lambda * t_a).exp() * ((x_a + u) * exp_moment0(lambda, h) + rate * exp_moment1(lambda, h))
}

/// `Δ(t1, t2) = e^{-λt1} - 2e^{-λ(t1+t2)/2} + e^{-λt2}`, evaluated as the perfect square
/// `e^{-λt1} (1 - e^{-λ(t2-t1)/2})²`.
pub fn delta(lambda: f64, t1: f64, t2: f64) -> f64 {
    let half = (-lambda * (t2 - t1) / 2.0).exp_m1();
    (-lambda * t1).exp() * half * half
}

fn trajectory_cost_between(lambda: f64, traj: &Trajectory, t1: f64, t2: f64) -> f64 {
    let a = traj.gain();
    traj.segments()
        .filter_map(|s| {
            let lo = s.t_start.max(t1);
            let hi = s.t_end.min(t2);
            (hi > lo).then(|| {
                let rate = s.slope.rate(a);
                let x_lo = if lo == s.t_start {
                    s.x_start
                } else {
                    s.x_start + rate * (lo - s.t_start)
                };
                piece_integral(lambda, lo, x_lo, rate, s.slope.control(), hi - lo)
            })
        })
        .sum()
}

/// Closed-form cost of `traj` restricted to `[t1, t2]`.
pub fn segment_cost_closed(
    params: &ProblemParams,
    traj: &Trajectory,
    t1: f64,
    t2: f64,
) -> Result<SegmentCost> {
    let (lo, hi) = (traj.t_start(), traj.t_end());
    if !(t1 >= lo && t2 <= hi && t1 <= t2) {
        return Err(Error::OutsideDomain { t1, t2, lo, hi });
    }
    let value = if t1 == t2 {
        0.0
    } else {
        trajectory_cost_between(params.lambda(), traj, t1, t2)
    };
    Ok(SegmentCost { t1, t2, value })
}

/// Closed-form `J` over the whole trajectory domain.
pub fn total_cost_closed(params: &ProblemParams, traj: &Trajectory) -> Result<CostValue> {
    segment_cost_closed(params, traj, traj.t_start(), traj.t_end())
        .map(|s| CostValue { value: s.value })
}

/// Running cost `x₂(t) = J|_{[t_start, t]}`.
pub fn running_cost(params: &ProblemParams, traj: &Trajectory, t: f64) -> Result<f64> {
    segment_cost_closed(params, traj, traj.t_start(), t).map(|s| s.value)
}

const GL5_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683_1,
    0.0,
    0.538_469_310_105_683_1,
    0.906_179_845_938_664,
];
const GL5_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

/// Composite five-point Gauss–Legendre estimate of `J` with `n` panels per linear piece.
pub fn total_cost_quadrature(params: &ProblemParams, traj: &Trajectory, n: usize) -> CostValue {
    let n = n.max(1);
    let lambda = params.lambda();
    let a = traj.gain();
    let mut total = 0.0;
    for s in traj.segments() {
        let rate = s.slope.rate(a);
        let u = s.slope.control();
        let width = s.duration() / n as f64;
        for k in 0..n {
            let left = s.t_start + width * k as f64;
            let mid = left + width / 2.0;
            let mut panel = 0.0;
            for (node, w) in GL5_NODES.iter().zip(GL5_WEIGHTS) {
                let t = mid + width / 2.0 * node;
                let x = s.x_start + rate * (t - s.t_start);
                panel += w * -(-lambda * t).exp() * (x + u);
            }
            total += panel * width / 2.0;
        }
    }
    CostValue { value: total }
}

/// Comparison process used by [`lemma_gap`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LemmaKind {
    /// Hold at `+1` versus a descent to the midpoint and back up.
    UpperBoundaryVee,
    /// Hold at `-1` versus a rise to the midpoint and back down.
    LowerBoundaryTent,
    /// Hold at level `ξ` versus a descent to the midpoint and back up.
    LevelVee(f64),
}

/// Builds the hold process and the modified process for `kind` on `[t1, t2]`.
pub fn lemma_processes(
    a: f64,
    t1: f64,
    t2: f64,
    kind: LemmaKind,
) -> Result<(Trajectory, Trajectory)> {
    if !(t1.is_finite() && t2.is_finite() && t1 < t2) {
        return Err(Error::Precondition(format!(
            "need t1 < t2, got [{t1}, {t2}]"
        )));
    }
    let h = t2 - t1;
    if h > 4.0 / a * (1.0 + 1e-12) {
        return Err(Error::Precondition(format!(
            "t2 - t1 = {h} exceeds 4/a = {}",
            4.0 / a
        )));
    }
    let (level, first, second) = match kind {
        LemmaKind::UpperBoundaryVee => (1.0, Slope::Down, Slope::Up),
        LemmaKind::LowerBoundaryTent => (-1.0, Slope::Up, Slope::Down),
        LemmaKind::LevelVee(xi) => {
            if !(xi <= 1.0 && xi - a * h / 2.0 >= -1.0 - 1e-12) {
                return Err(Error::Precondition(format!(
                    "level vee at xi = {xi} over length {h} leaves [-1, 1]"
                )));
            }
            (xi, Slope::Down, Slope::Up)
        }
    };
    let mid = t1 + h / 2.0;
    let hold = Trajectory::builder(a, t1, level)
        .run(Slope::Hold, t2)
        .finish()?;
    let bent = Trajectory::builder(a, t1, level)
        .run(first, mid)
        .run_to(second, t2, level)
        .finish()?;
    Ok((hold, bent))
}

/// `lhs = J(modified) - J(hold)` on `[t1, t2]` from the closed-form evaluator, and
/// `rhs = ±(1/λ)(a/λ - 1) Δ(t1, t2)` (negative for the lower-boundary tent).
pub fn lemma_gap(params: &ProblemParams, t1: f64, t2: f64, kind: LemmaKind) -> Result<(f64, f64)> {
    let (a, lambda) = (params.a(), params.lambda());
    let (hold, bent) = lemma_processes(a, t1, t2, kind)?;
    let lhs = trajectory_cost_between(lambda, &bent, t1, t2)
        - trajectory_cost_between(lambda, &hold, t1, t2);
    let magnitude = (a / lambda - 1.0) / lambda * delta(lambda, t1, t2);
    let rhs = match kind {
        LemmaKind::LowerBoundaryTent => -magnitude,
        _ => magnitude,
    };
    Ok((lhs, rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaInequalityReport {
    /// `Δ(t1, t2)`
    pub full: f64,
    /// `Δ(t1 + ε, t2)`
    pub shifted: f64,
    /// `Δ(t1, t1 + ε)`
    pub head: f64,
    /// `Δ(t1, t1 + ε) + Δ(t1 + ε, t2)`
    pub split_sum: f64,
    pub shrinks_when_shifted: bool,
    pub superadditive: bool,
}

impl DeltaInequalityReport {
    pub fn passed(&self) -> bool {
        self.shrinks_when_shifted && self.superadditive
    }
}

pub fn delta_inequalities(
    lambda: f64,
    t1: f64,
    t2: f64,
    eps: f64,
) -> Result<DeltaInequalityReport> {
    if !(lambda > 0.0 && t1 < t2 && eps > 0.0 && eps < t2 - t1) {
        return Err(Error::Precondition(format!(
            "need lambda > 0, t1 < t2 and 0 < eps < t2 - t1 (lambda={lambda}, t1={t1}, t2={t2}, eps={eps})"
        )));
    }
    let full = delta(lambda, t1, t2);
    let shifted = delta(lambda, t1 + eps, t2);
    let head = delta(lambda, t1, t1 + eps);
    let split_sum = head + shifted;
    Ok(DeltaInequalityReport {
        full,
        shifted,
        head,
        split_sum,
        shrinks_when_shifted: shifted < full,
        superadditive: full > split_sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(a: f64, lambda: f64, t0: f64, t_end: f64, x0: f64) -> ProblemParams {
        ProblemParams::new(a, lambda, t0, t_end, x0).unwrap()
    }

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta(1.0, 0.7, 0.7), 0.0);
        // (1 - e^{-1})^2, computed separately at high precision
        assert!(close(delta(1.0, 0.0, 2.0), 0.399_576_400_893_728_03, 1e-15));
        let (l, t1, t2) = (0.8f64, 0.3, 1.9);
        let naive = (-l * t1).exp() - 2.0 * (-l * (t1 + t2) / 2.0).exp() + (-l * t2).exp();
        assert!(close(delta(l, t1, t2), naive, 1e-15));
    }

    #[test]
    fn hold_pieces_match_elementary_forms() {
        let params = p(2.0, 0.7, 0.0, 3.0, 1.0);
        let lam = 0.7f64;
        let (t1, t2) = (0.4, 2.3);
        let up = Trajectory::builder(2.0, 0.0, 1.0)
            .run(Slope::Hold, 3.0)
            .finish()
            .unwrap();
        let got = segment_cost_closed(&params, &up, t1, t2).unwrap().value;
        let want = ((-lam * t2).exp() - (-lam * t1).exp()) / lam;
        assert!(close(got, want, 1e-15));

        let params = p(2.0, 0.7, 0.0, 3.0, -1.0);
        let low = Trajectory::builder(2.0, 0.0, -1.0)
            .run(Slope::Hold, 3.0)
            .finish()
            .unwrap();
        let got = segment_cost_closed(&params, &low, t1, t2).unwrap().value;
        assert!(close(got, -want, 1e-15));
    }

    #[test]
    fn upper_vee_matches_expanded_closed_form() {
        let (a, lam, t1, t2) = (2.0f64, 1.0f64, 0.0f64, 1.0f64);
        let params = p(a, lam, 0.0, 5.0, 0.0);
        let (_, vee) = lemma_processes(a, t1, t2, LemmaKind::UpperBoundaryVee).unwrap();
        let tc = (t1 + t2) / 2.0;
        let expanded = (2.0 / lam - 2.0 * a / (lam * lam)) * (-lam * tc).exp()
            + (a / (lam * lam) - 2.0 / lam) * (-lam * t1).exp()
            + a / (lam * lam) * (-lam * t2).exp();
        assert!(close(
            trajectory_cost_between(lam, &vee, t1, t2),
            expanded,
            1e-14
        ));
        let (lhs, rhs) = lemma_gap(&params, t1, t2, LemmaKind::UpperBoundaryVee).unwrap();
        assert!(close(lhs, rhs, 1e-14) && lhs > 0.0);
        let (lhs, rhs) = lemma_gap(&params, t1, t2, LemmaKind::LowerBoundaryTent).unwrap();
        assert!(close(lhs, rhs, 1e-14) && lhs < 0.0);
    }

    #[test]
    fn level_vee_is_level_independent() {
        let params = p(2.0, 1.0, 0.0, 5.0, 0.0);
        let (l1, r1) = lemma_gap(&params, 0.0, 0.8, LemmaKind::LevelVee(0.3)).unwrap();
        let (l2, r2) = lemma_gap(&params, 0.0, 0.8, LemmaKind::LevelVee(1.0)).unwrap();
        assert!(close(l1, r1, 1e-14) && close(l2, r2, 1e-14) && close(l1, l2, 1e-14));
        assert!(lemma_gap(&params, 0.0, 0.8, LemmaKind::LevelVee(-0.5)).is_err());
        assert!(lemma_gap(&params, 0.0, 2.5, LemmaKind::UpperBoundaryVee).is_err());
        assert!(lemma_gap(&params, 1.0, 0.5, LemmaKind::UpperBoundaryVee).is_err());
    }

    #[test]
    fn delta_inequality_examples() {
        let r = delta_inequalities(1.0, 0.0, 2.0, 0.5).unwrap();
        assert!(r.passed());
        let gaps: Vec<f64> = [1e-1, 1e-2, 1e-3]
            .iter()
            .map(|&e| {
                let r = delta_inequalities(1.0, 0.0, 2.0, e).unwrap();
                r.full - r.shifted
            })
            .collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2] && gaps[2] > 0.0);
        assert!(delta_inequalities(1.0, 0.0, 2.0, 2.0).is_err());
    }

    #[test]
    fn descent_closed_matches_fine_quadrature() {
        let params = p(1.0, 0.9, 0.0, 0.5, 1.0);
        let traj = Trajectory::builder(1.0, 0.0, 1.0)
            .run(Slope::Down, 0.5)
            .finish()
            .unwrap();
        let closed = total_cost_closed(&params, &traj).unwrap().value;
        let quad = total_cost_quadrature(&params, &traj, 1_000_000).value;
        assert!(close(closed, quad, 1e-9));
        assert!(close(
            total_cost_quadrature(&params, &traj, 1).value,
            closed,
            1e-6
        ));
    }

    #[test]
    fn hold_quadrature_at_64_panels() {
        let params = p(2.0, 0.7, 0.0, 3.0, 1.0);
        let traj = Trajectory::builder(2.0, 0.0, 1.0)
            .run(Slope::Hold, 3.0)
            .finish()
            .unwrap();
        let want = ((-0.7f64 * 3.0).exp() - 1.0) / 0.7;
        assert!(close(
            total_cost_quadrature(&params, &traj, 64).value,
            want,
            1e-12
        ));
    }

    #[test]
    fn domain_errors() {
        let params = p(2.0, 0.7, 0.0, 3.0, 1.0);
        let traj = Trajectory::builder(2.0, 0.0, 1.0)
            .run(Slope::Hold, 3.0)
            .finish()
            .unwrap();
        assert!(segment_cost_closed(&params, &traj, -0.1, 1.0).is_err());
        assert!(segment_cost_closed(&params, &traj, 1.0, 3.1).is_err());
        assert!(segment_cost_closed(&params, &traj, 2.0, 1.0).is_err());
        assert_eq!(
            segment_cost_closed(&params, &traj, 1.0, 1.0).unwrap().value,
            0.0
        );
    }

    #[test]
    fn small_argument_moment_matches_direct_form() {
        for &z in &[1e-8, 1e-4, 0.1, 0.49, 0.51] {
            let lam = 0.3;
            let h = z / lam;
            let direct = (exp_moment0(lam, h) - h * (-z).exp()) / lam;
            let series = exp_moment1(lam, h);
            let tol = if z < 0.01 { 1e-3 * series.abs() } else { 1e-14 };
            assert!(close(direct, series, tol), "z={z}: {direct} vs {series}");
        }
    }

    fn arb_case() -> impl Strategy<Value = (ProblemParams, Trajectory)> {
        (
            0.5f64..4.0,
            0.05f64..0.95,
            0.0f64..3.0,
            -1.0f64..1.0,
            prop::collection::vec((0usize..3, 0.0f64..1.0), 1..7),
        )
            .prop_map(|(a, frac, t0, x0, runs)| {
                // wander inside [-1, 1] by capping each run at the reachable bound
                let mut b = Trajectory::builder(a, t0, x0);
                let (mut t, mut x) = (t0, x0);
                for (k, d) in runs {
                    let slope = [Slope::Down, Slope::Hold, Slope::Up][k];
                    let room = match slope {
                        Slope::Down => (x + 1.0) / a,
                        Slope::Up => (1.0 - x) / a,
                        Slope::Hold => f64::INFINITY,
                    };
                    let len = (d * 2.0).min(room);
                    if len <= 1e-9 {
                        continue;
                    }
                    t += len;
                    x += slope.rate(a) * len;
                    b = b.run(slope, t);
                }
                if t == t0 {
                    t += 0.5;
                    b = b.run(Slope::Hold, t);
                }
                let traj = b.finish().unwrap();
                (ProblemParams::new(a, frac * a, t0, t, x0).unwrap(), traj)
            })
    }

    proptest! {
        #[test]
        fn closed_form_matches_quadrature((params, traj) in arb_case()) {
            let closed = total_cost_closed(&params, &traj).unwrap().value;
            let quad = total_cost_quadrature(&params, &traj, 256).value;
            prop_assert!((closed - quad).abs() <= 1e-9 * (1.0 + closed.abs()));
        }

        #[test]
        fn cost_is_bounded((params, traj) in arb_case()) {
            let j = total_cost_closed(&params, &traj).unwrap().value;
            let l = params.lambda();
            let bound = 2.0 / l * ((-l * params.t0()).exp() - (-l * params.t_end()).exp());
            prop_assert!(j.abs() <= bound * (1.0 + 1e-12));
        }

        #[test]
        fn additive_over_partitions((params, traj) in arb_case(), cuts in prop::collection::vec(0.0f64..1.0, 0..5)) {
            let (lo, hi) = (traj.t_start(), traj.t_end());
            let mut pts: Vec<f64> = cuts.iter().map(|c| lo + c * (hi - lo)).collect();
            pts.push(lo);
            pts.push(hi);
            pts.sort_by(f64::total_cmp);
            let parts: f64 = pts.windows(2).map(|w| segment_cost_closed(&params, &traj, w[0], w[1]).unwrap().value).sum();
            let whole = total_cost_closed(&params, &traj).unwrap().value;
            prop_assert!((parts - whole).abs() <= 1e-13);
            let refined = traj.refined_at(0.5 * (lo + hi));
            let again = total_cost_closed(&params, &refined).unwrap().value;
            prop_assert!((again - whole).abs() <= 1e-14);
        }

        #[test]
        fn running_cost_ends_at_total((params, traj) in arb_case()) {
            let end = running_cost(&params, &traj, traj.t_end()).unwrap();
            prop_assert_eq!(end, total_cost_closed(&params, &traj).unwrap().value);
        }

        #[test]
        fn delta_positive(l in 0.01f64..5.0, t1 in -2.0f64..5.0, h in 1e-6f64..5.0) {
            prop_assert!(delta(l, t1, t1 + h) > 0.0);
        }
    }
}
