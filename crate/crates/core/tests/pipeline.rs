use octsynth::cost::total_cost_closed;
use octsynth::oracle::{compare, dp_solve, shape_search_with, GridSpec};
use octsynth::pmp::{build_certificate, check_certificate, CheckOptions, Multipliers};
use octsynth::trajectory::check_feasible;
use octsynth::{classify, synthesize, ProblemParams, Theorem};

fn params(a: f64, lambda: f64, t0: f64, t_end: f64, x0: f64) -> ProblemParams {
    ProblemParams::new(a, lambda, t0, t_end, x0).unwrap()
}

#[test]
fn synthesize_certify_and_cross_check() {
    let cases = [
        params(1.0, 0.9, 0.0, 4.5, 0.0),
        params(2.0, 1.0, 0.0, 1.6, -1.0),
        params(2.0, 1.0, 0.0, 0.85, 0.5),
        params(2.0, 1.0, 0.5, 1.5, 0.9),
        params(2.0, 1.0, 0.0, 3.0, 0.0),
    ];
    let grid = GridSpec::new(800, 401, vec![-1.0, 0.0, 1.0]).unwrap();
    for p in &cases {
        let set = synthesize(p);
        assert_eq!(set.label, classify(p));
        for c in &set.candidates {
            assert!(check_feasible(&c.trajectory, p).passed);
            assert_eq!(c.cost, total_cost_closed(p, &c.trajectory).unwrap().value);
        }
        let best = set.best();
        let mult = build_certificate(p, best).unwrap();
        let report = check_certificate(p, best, &mult, CheckOptions::default());
        assert!(report.passed, "{}: {report:?}", set.label);

        let dp = dp_solve(p, &grid).unwrap();
        assert!(compare(p, &set, &dp, 5e-3).passed, "{}", set.label);
        let shapes: Vec<_> = set.candidates.iter().map(|c| c.shape).collect();
        assert!(shape_search_with(p, 200, &shapes).value >= best.cost - 1e-12);
    }
}

#[test]
fn certificate_survives_json() {
    let p = params(2.0, 1.0, 0.0, 3.0, 0.0);
    let set = synthesize(&p);
    let mult = build_certificate(&p, set.best()).unwrap();
    let text = serde_json::to_string(&mult).unwrap();
    let back: Multipliers = serde_json::from_str(&text).unwrap();
    assert_eq!(back, mult);
    assert!(check_certificate(&p, set.best(), &back, CheckOptions::default()).passed);
}

#[test]
fn every_theorem_is_reachable() {
    let seen: Vec<Theorem> = [
        params(1.0, 0.9, 0.0, 4.5, 0.0),
        params(2.0, 1.0, 0.0, 1.6, -1.0),
        params(2.0, 1.0, 0.0, 0.85, 0.5),
        params(2.0, 1.0, 0.0, 1.0, std::f64::consts::LN_2),
        params(2.0, 1.0, 0.5, 1.5, 0.9),
        params(2.0, 1.0, 0.0, 3.0, 0.0),
    ]
    .iter()
    .map(|p| classify(p).theorem)
    .collect();
    for t in [
        Theorem::Thm3a,
        Theorem::Thm3b,
        Theorem::Thm3c1,
        Theorem::Thm3c3,
        Theorem::Thm3d,
    ] {
        assert!(seen.contains(&t), "{t} missing");
    }
}
