//! Batch front end for `octsynth`.
//!
//! [`run`] parses arguments, executes one command and returns the exit code together with
//! the text destined for stdout and stderr, so the binary is a thin wrapper and tests can
//! drive commands in-process.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use octsynth::cost::{delta_inequalities, lemma_gap, LemmaKind};
use octsynth::oracle::{compare, dp_solve, GridSpec};
use octsynth::pmp::{build_certificate, check_certificate, CheckOptions, Multipliers};
use octsynth::trajectory::sample;
use octsynth::{
    derive_constants, synthesis::synthesize_with, Candidate, CandidateSet, ProblemParams,
    ShapeSpec, SynthesisMode, SynthesisOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub mod canonical;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Self {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "octsynth",
    version,
    about = "Closed-form synthesis and verification for a bilaterally constrained scalar control problem"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the regime and print the candidate trajectories.
    #[command(allow_negative_numbers = true)]
    Synthesize {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        synth: SynthArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Sample count per candidate (CSV rows, or a `samples` array in JSON).
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Check the candidates against the DP oracle and their multiplier certificates.
    #[command(allow_negative_numbers = true)]
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        synth: SynthArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Two-sided agreement tolerance between oracle and best candidate.
        #[arg(long, default_value_t = 5e-3)]
        tol: f64,
    },
    /// Classify and synthesize over a range of horizons `T - t0`.
    #[command(allow_negative_numbers = true)]
    Sweep {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 0.0)]
        t0: f64,
        #[arg(long)]
        x0: f64,
        #[arg(long = "horizon-min")]
        horizon_min: f64,
        #[arg(long = "horizon-max")]
        horizon_max: f64,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        #[command(flatten)]
        synth: SynthArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Property run of the cost-gap identities and Δ inequalities on seeded inputs.
    Lemmas {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the multiplier certificate of one candidate in the exchange format.
    #[command(allow_negative_numbers = true)]
    Certificate {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        synth: SynthArgs,
        /// Index into the cost-ordered candidate list.
        #[arg(long, default_value_t = 0)]
        candidate: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an externally supplied certificate against one candidate.
    #[command(name = "check-certificate", allow_negative_numbers = true)]
    CheckCertificate {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        synth: SynthArgs,
        #[arg(long, default_value_t = 0)]
        candidate: usize,
        /// Certificate JSON file.
        #[arg(long)]
        cert: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Use central differences instead of the stored closed form of p1.
        #[arg(long)]
        finite_difference: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct ParamArgs {
    #[arg(long)]
    a: f64,
    #[arg(long)]
    lambda: f64,
    #[arg(long, default_value_t = 0.0)]
    t0: f64,
    #[arg(long = "T")]
    t_end: f64,
    #[arg(long)]
    x0: f64,
}

impl ParamArgs {
    fn build(&self) -> Result<ProblemParams, String> {
        ProblemParams::new(self.a, self.lambda, self.t0, self.t_end, self.x0)
            .map_err(|e| e.to_string())
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct SynthArgs {
    /// Emit the clause forms exactly as tabulated, without the long-descent correction.
    #[arg(long)]
    literal: bool,
    /// Half-width of the band treated as equality at classification thresholds.
    #[arg(long, default_value_t = 0.0)]
    snap: f64,
}

impl SynthArgs {
    fn options(&self) -> Result<SynthesisOptions, String> {
        if !(self.snap.is_finite() && self.snap >= 0.0) {
            return Err(format!(
                "snap must be a nonnegative number, got {}",
                self.snap
            ));
        }
        let mode = if self.literal {
            SynthesisMode::Literal
        } else {
            SynthesisMode::Corrected
        };
        Ok(SynthesisOptions {
            mode,
            snap_tol: self.snap,
        })
    }
}

#[derive(Args, Debug, Clone)]
struct GridArgs {
    #[arg(long, default_value_t = 2000)]
    nt: usize,
    #[arg(long, default_value_t = 401)]
    nx: usize,
    /// Comma-separated control values; must include -1, 0 and 1.
    #[arg(long, default_value = "-1,-0.5,0,0.5,1")]
    controls: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses a comma-separated list of control values.
pub fn parse_controls(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<f64>()
                .map_err(|_| format!("invalid control value {s:?}"))
        })
        .collect()
}

/// Parses a certificate in the exchange format.
pub fn parse_certificate(text: &str) -> Result<Multipliers, String> {
    serde_json::from_str(text).map_err(|e| format!("invalid certificate: {e}"))
}

/// Runs one command. `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match std::env::var("OCTSYNTH_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        Some(n) if n > 0 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(cli.cmd)),
            Err(e) => Outcome::usage(format!("cannot build thread pool: {e}")),
        },
        _ => dispatch(cli.cmd),
    }
}

fn dispatch(cmd: Command) -> Outcome {
    let result = match cmd {
        Command::Synthesize {
            params,
            synth,
            output,
            samples,
        } => cmd_synthesize(params, synth, &output, samples),
        Command::Verify {
            params,
            synth,
            grid,
            output,
            tol,
        } => cmd_verify(params, synth, &grid, &output, tol),
        Command::Sweep {
            a,
            lambda,
            t0,
            x0,
            horizon_min,
            horizon_max,
            steps,
            synth,
            output,
        } => cmd_sweep(
            a,
            lambda,
            t0,
            x0,
            (horizon_min, horizon_max, steps),
            synth,
            &output,
        ),
        Command::Lemmas { trials, seed, out } => {
            cmd_lemmas(trials, seed).map(|(code, text)| (code, text, out))
        }
        Command::Certificate {
            params,
            synth,
            candidate,
            out,
        } => cmd_certificate(params, synth, candidate, out),
        Command::CheckCertificate {
            params,
            synth,
            candidate,
            cert,
            tol,
            finite_difference,
            out,
        } => cmd_check_certificate(params, synth, candidate, &cert, tol, finite_difference, out),
    };
    match result {
        Err(msg) => Outcome::usage(msg),
        Ok((code, text, None)) => Outcome {
            code,
            stdout: text,
            stderr: String::new(),
        },
        Ok((code, text, Some(path))) => match std::fs::write(&path, text) {
            Ok(()) => Outcome {
                code,
                ..Outcome::default()
            },
            Err(e) => Outcome::usage(format!("cannot write {}: {e}", path.display())),
        },
    }
}

type CmdResult = Result<(i32, String, Option<PathBuf>), String>;

fn synthesize_checked(params: &ProblemParams, synth: SynthArgs) -> Result<CandidateSet, String> {
    synthesize_with(params, synth.options()?).map_err(|e| e.to_string())
}

fn shape_json(shape: &ShapeSpec) -> Value {
    serde_json::to_value(shape).expect("shape specs serialize")
}

fn candidate_json(cand: &Candidate, samples: Option<usize>) -> Value {
    let traj = &cand.trajectory;
    let mut v = json!({
        "breakpoints": traj.breakpoints().iter().map(|b| json!({"t": b.t, "x": b.x})).collect::<Vec<_>>(),
        "control": traj.control_law().pieces.iter().map(|p| json!({"t_lo": p.t_lo, "t_hi": p.t_hi, "u": p.u})).collect::<Vec<_>>(),
        "cost": cand.cost,
        "shape": shape_json(&cand.shape),
        "status": format!("{:?}", cand.status),
    });
    if let Some(n) = samples {
        v["samples"] = sample(traj, n)
            .iter()
            .map(|s| json!({"t": s.t, "x": s.x, "u": s.u}))
            .collect();
    }
    v
}

fn regime_json(set: &CandidateSet) -> Value {
    json!({"theorem": set.label.theorem.as_str(), "clause": set.label.clause.as_str()})
}

fn params_json(p: &ProblemParams) -> Value {
    let k = derive_constants(p);
    json!({
        "a": p.a(), "lambda": p.lambda(), "t0": p.t0(), "T": p.t_end(), "x0": p.x0(),
        "rho": k.rho, "rho1": k.rho1, "rho2": k.rho2, "t_bar": k.t_bar,
    })
}

fn mode_name(synth: SynthArgs) -> &'static str {
    if synth.literal {
        "literal"
    } else {
        "corrected"
    }
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> Result<String, String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).map_err(|e| e.to_string())?;
    for row in rows {
        w.write_record(&row).map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

fn cmd_synthesize(
    params: ParamArgs,
    synth: SynthArgs,
    output: &OutputArgs,
    samples: Option<usize>,
) -> CmdResult {
    let p = params.build()?;
    if samples == Some(0) || samples == Some(1) {
        return Err("samples must be at least 2".into());
    }
    let set = synthesize_checked(&p, synth)?;
    let text = match output.format {
        Format::Json => canonical::to_string(&json!({
            "regime": regime_json(&set),
            "mode": mode_name(synth),
            "params": params_json(&p),
            "candidates": set.candidates.iter().map(|c| candidate_json(c, samples)).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let n = samples.unwrap_or(100);
            let rows = set
                .candidates
                .iter()
                .enumerate()
                .flat_map(|(i, c)| {
                    sample(&c.trajectory, n).into_iter().map(move |s| {
                        vec![
                            i.to_string(),
                            s.t.to_string(),
                            s.x.to_string(),
                            s.u.to_string(),
                        ]
                    })
                })
                .collect();
            csv_text(&["candidate", "t", "x", "u"], rows)?
        }
    };
    Ok((EXIT_OK, text, output.out.clone()))
}

fn certificate_json(p: &ProblemParams, cand: &Candidate, best: bool) -> (Value, bool) {
    match build_certificate(p, cand) {
        Err(u) => (
            json!({"shape": cand.shape.name(), "best": best, "certificate": format!("unsupported: {}", u.reason)}),
            true,
        ),
        Ok(m) => {
            let r = check_certificate(p, cand, &m, CheckOptions::default());
            let v = json!({
                "shape": cand.shape.name(),
                "best": best,
                "certificate": if r.passed { "pass" } else { "fail" },
                "residuals": {
                    "support": r.support.residual,
                    "adjoint": r.adjoint.residual,
                    "transversality": r.transversality.residual,
                    "minimum": r.minimum.residual,
                },
                "nontrivial": r.nontrivial,
                "mu_mass": m.mu.total_mass(p),
            });
            (v, r.passed)
        }
    }
}

fn cmd_verify(
    params: ParamArgs,
    synth: SynthArgs,
    grid: &GridArgs,
    output: &OutputArgs,
    tol: f64,
) -> CmdResult {
    let p = params.build()?;
    if !(tol >= 0.0) {
        return Err(format!("tol must be nonnegative, got {tol}"));
    }
    let spec = GridSpec::new(grid.nt, grid.nx, parse_controls(&grid.controls)?)
        .map_err(|e| e.to_string())?;
    let set = synthesize_checked(&p, synth)?;
    let dp = dp_solve(&p, &spec).map_err(|e| e.to_string())?;
    let verdict = compare(&p, &set, &dp, tol);
    let certs: Vec<(Value, bool)> = set
        .candidates
        .iter()
        .enumerate()
        .map(|(i, c)| certificate_json(&p, c, i == 0))
        .collect();
    let best_cert_ok = certs[0].1;
    let passed = verdict.passed && best_cert_ok;
    let code = if passed { EXIT_OK } else { EXIT_FAIL };
    let text = match output.format {
        Format::Json => canonical::to_string(&json!({
            "regime": regime_json(&set),
            "mode": mode_name(synth),
            "params": params_json(&p),
            "oracle": {
                "value": dp.value,
                "path_cost": dp.diagnostics.path_cost,
                "pruned": dp.diagnostics.pruned,
                "n_t": spec.n_t,
                "n_x": spec.n_x,
            },
            "candidate_cost": verdict.candidate_cost,
            "gap": verdict.gap,
            "tol": verdict.tol,
            "oracle_check": if verdict.passed { "pass" } else { "fail" },
            "certificates": certs.iter().map(|(v, _)| v.clone()).collect::<Vec<_>>(),
            "verdict": if passed { "PASS" } else { "FAIL" },
        })),
        Format::Csv => {
            let rows = vec![vec![
                set.label.theorem.to_string(),
                set.label.clause.to_string(),
                verdict.candidate_cost.to_string(),
                dp.value.to_string(),
                verdict.gap.to_string(),
                tol.to_string(),
                certs[0].0["certificate"].as_str().unwrap_or("").to_string(),
                if passed { "PASS" } else { "FAIL" }.to_string(),
            ]];
            csv_text(
                &[
                    "theorem",
                    "clause",
                    "candidate_cost",
                    "oracle_value",
                    "gap",
                    "tol",
                    "certificate",
                    "verdict",
                ],
                rows,
            )?
        }
    };
    Ok((code, text, output.out.clone()))
}

fn cmd_sweep(
    a: f64,
    lambda: f64,
    t0: f64,
    x0: f64,
    (lo, hi, steps): (f64, f64, usize),
    synth: SynthArgs,
    output: &OutputArgs,
) -> CmdResult {
    if !(lo > 0.0 && lo < hi && hi.is_finite()) {
        return Err(format!(
            "need 0 < horizon-min < horizon-max, got [{lo}, {hi}]"
        ));
    }
    if steps < 2 {
        return Err(format!("steps must be at least 2, got {steps}"));
    }
    ProblemParams::new(a, lambda, t0, t0 + hi, x0).map_err(|e| e.to_string())?;
    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let h = if i == steps - 1 {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (steps - 1) as f64
        };
        let p = ProblemParams::new(a, lambda, t0, t0 + h, x0).map_err(|e| e.to_string())?;
        let set = synthesize_checked(&p, synth)?;
        rows.push((h, set));
    }
    let text = match output.format {
        Format::Json => canonical::to_string(&json!({
            "mode": mode_name(synth),
            "rows": rows.iter().map(|(h, set)| json!({
                "horizon": h,
                "theorem": set.label.theorem.as_str(),
                "clause": set.label.clause.as_str(),
                "n_candidates": set.len(),
                "best_cost": set.candidates[0].cost,
                "second_cost": set.candidates.get(1).map(|c| c.cost),
                "switch_times": set.candidates[0].trajectory.switch_times(),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let body = rows
                .iter()
                .map(|(h, set)| {
                    vec![
                        h.to_string(),
                        set.label.theorem.to_string(),
                        set.label.clause.to_string(),
                        set.len().to_string(),
                        set.candidates[0].cost.to_string(),
                        set.candidates
                            .get(1)
                            .map(|c| c.cost.to_string())
                            .unwrap_or_default(),
                        set.candidates[0]
                            .trajectory
                            .switch_times()
                            .iter()
                            .map(|t| t.to_string())
                            .collect::<Vec<_>>()
                            .join(";"),
                    ]
                })
                .collect();
            csv_text(
                &[
                    "horizon",
                    "theorem",
                    "clause",
                    "n_candidates",
                    "best_cost",
                    "second_cost",
                    "switch_times",
                ],
                body,
            )?
        }
    };
    Ok((EXIT_OK, text, output.out.clone()))
}

/// Aggregate of a seeded lemma run.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LemmaRun {
    pub trials: usize,
    pub identity_max_residual: f64,
    pub identity_failures: usize,
    pub sign_failures: usize,
    pub delta_failures: usize,
}

impl LemmaRun {
    pub fn passed(&self) -> bool {
        self.identity_failures == 0 && self.sign_failures == 0 && self.delta_failures == 0
    }
}

/// Residual threshold for the cost-gap identities.
pub const IDENTITY_TOL: f64 = 1e-12;

/// Draws `trials` random admissible inputs and checks every identity and inequality.
pub fn lemma_run(trials: usize, seed: u64) -> LemmaRun {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut run = LemmaRun {
        trials,
        ..LemmaRun::default()
    };
    for _ in 0..trials {
        let a: f64 = rng.gen_range(0.5..4.0);
        let lambda = a * rng.gen_range(0.05..0.95);
        let t1 = rng.gen_range(0.0..5.0);
        let len: f64 = (4.0 / a) * rng.gen_range(1e-3..=1.0);
        let t2 = t1 + len;
        let xi = rng.gen_range((-1.0 + a * len / 2.0).min(1.0)..=1.0);
        let eps = len * rng.gen_range(1e-3..0.999);
        let p =
            ProblemParams::new(a, lambda, 0.0, t2 + 1.0, 0.0).expect("drawn parameters are valid");
        for (kind, sign) in [
            (LemmaKind::UpperBoundaryVee, 1.0),
            (LemmaKind::LowerBoundaryTent, -1.0),
            (LemmaKind::LevelVee(xi), 1.0),
        ] {
            match lemma_gap(&p, t1, t2, kind) {
                Ok((lhs, rhs)) => {
                    let r = (lhs - rhs).abs();
                    run.identity_max_residual = run.identity_max_residual.max(r);
                    if r > IDENTITY_TOL {
                        run.identity_failures += 1;
                    }
                    if !(lhs * sign > 0.0) {
                        run.sign_failures += 1;
                    }
                }
                Err(_) => run.identity_failures += 1,
            }
        }
        match delta_inequalities(lambda, t1, t2, eps) {
            Ok(r) if r.passed() => {}
            _ => run.delta_failures += 1,
        }
    }
    run
}

fn cmd_lemmas(trials: usize, seed: u64) -> Result<(i32, String), String> {
    if trials == 0 {
        return Err("trials must be at least 1".into());
    }
    let r = lemma_run(trials, seed);
    let status = if r.passed() { "PASS" } else { "FAIL" };
    let text = format!(
        "lemmas trials={} seed={} identity_max_residual={:.3e} identity_failures={} sign_failures={} delta_failures={} status={}\n",
        r.trials, seed, r.identity_max_residual, r.identity_failures, r.sign_failures, r.delta_failures, status
    );
    Ok((if r.passed() { EXIT_OK } else { EXIT_FAIL }, text))
}

fn pick(set: &CandidateSet, idx: usize) -> Result<&Candidate, String> {
    set.candidates.get(idx).ok_or_else(|| {
        format!(
            "candidate index {idx} out of range (regime has {})",
            set.len()
        )
    })
}

fn cmd_certificate(
    params: ParamArgs,
    synth: SynthArgs,
    idx: usize,
    out: Option<PathBuf>,
) -> CmdResult {
    let p = params.build()?;
    let set = synthesize_checked(&p, synth)?;
    let cand = pick(&set, idx)?;
    match build_certificate(&p, cand) {
        Ok(m) => {
            let v = serde_json::to_value(&m).map_err(|e| e.to_string())?;
            Ok((EXIT_OK, canonical::to_string(&v), out))
        }
        Err(u) => Ok((
            EXIT_FAIL,
            canonical::to_string(&json!({"certificate": u.to_string()})),
            out,
        )),
    }
}

fn cmd_check_certificate(
    params: ParamArgs,
    synth: SynthArgs,
    idx: usize,
    cert: &PathBuf,
    tol: f64,
    finite_difference: bool,
    out: Option<PathBuf>,
) -> CmdResult {
    let p = params.build()?;
    if !(tol > 0.0) {
        return Err(format!("tol must be positive, got {tol}"));
    }
    let set = synthesize_checked(&p, synth)?;
    let cand = pick(&set, idx)?;
    let text = std::fs::read_to_string(cert)
        .map_err(|e| format!("cannot read {}: {e}", cert.display()))?;
    let mult = parse_certificate(&text)?;
    let opts = CheckOptions {
        tol,
        derivative: if finite_difference {
            octsynth::pmp::DerivativeMode::FiniteDifference
        } else {
            octsynth::pmp::DerivativeMode::Analytic
        },
        ..CheckOptions::default()
    };
    let report = check_certificate(&p, cand, &mult, opts);
    let v = serde_json::to_value(&report).map_err(|e| e.to_string())?;
    Ok((
        if report.passed { EXIT_OK } else { EXIT_FAIL },
        canonical::to_string(&v),
        out,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn controls_parse() {
        assert_eq!(parse_controls("-1, 0,1").unwrap(), vec![-1.0, 0.0, 1.0]);
        assert!(parse_controls("-1,,1").is_err());
        assert!(parse_controls("x").is_err());
    }

    #[test]
    fn lemma_run_is_deterministic() {
        assert_eq!(lemma_run(50, 7), lemma_run(50, 7));
        assert!(lemma_run(200, 1).passed());
    }

    #[test]
    fn missing_flag_is_usage_error() {
        let out = run(["octsynth", "synthesize", "--a", "2"]);
        assert_eq!(out.code, EXIT_USAGE);
        assert!(!out.stderr.is_empty());
        assert_eq!(run(["octsynth", "--help"]).code, EXIT_OK);
    }
}
