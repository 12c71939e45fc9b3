//! The `proctensor` command line.
//!
//! ```text
//! proctensor <command> [--d N] [--n N] [--denv N] [--grid N] [--samples N]
//!                      [--seed N] [--tol X] [--in PATH] [--out PATH]
//! ```
//!
//! Reports go to `--out` or stdout: CSV for sweeps and figures, JSON
//! otherwise. Exit status is 0 when every check passes, 1 when a bound or
//! the causality hierarchy is violated, 2 on bad input.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::channel::{depolarizing_choi, input_output_correlation};
use crate::io::{self, fmt_f64, ProcessSpecFile};
use crate::linalg::{DensityMatrix, RelativeEntropy};
use crate::metrics::{
    audit_bounds_with, correlation_report_for_state_with, non_markovianity_crosscheck_for_state_with,
    BoundAudit, CorrelationReport,
};
use crate::process::{
    build_from_circuit_with, nm_depolarizing_process, random_process, verify_causality, CausalityReport, EnvInit,
    RandomSpec,
};
use crate::{Error, Result, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    /// Input-output correlation of the depolarizing channel against p.
    Fig2,
    /// Correlations of the two-step non-Markovian depolarizing process.
    Fig6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    SweepDepolarizing,
    Analyze,
    AuditRandom,
    EmitFigure(Figure),
    Verify,
}

/// Everything a command needs. `None` fields fall back to per-command
/// defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    /// System dimensions. Sweeps use every entry; other commands the first.
    pub d: Vec<usize>,
    pub n: Option<usize>,
    pub d_env: Option<usize>,
    pub grid: usize,
    pub samples: usize,
    pub seed: u64,
    pub env_init: EnvInit,
    pub tol: Tolerances,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            input: None,
            output: None,
            d: Vec::new(),
            n: None,
            d_env: None,
            grid: 101,
            samples: 1000,
            seed: 42,
            env_init: EnvInit::SeededRandom,
            tol: Tolerances::default(),
        }
    }

    fn first_d(&self) -> usize {
        self.d.first().copied().unwrap_or(2)
    }

    fn input(&self) -> Result<&PathBuf> {
        self.input
            .as_ref()
            .ok_or_else(|| Error::arg("this command needs an input file (--in PATH)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass = 0,
    Fail = 1,
    InputError = 2,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// Command result: the report body, its exit status and diagnostics meant
/// for stderr (kept out of the report so reports stay reproducible).
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: String,
    pub status: Status,
    pub log: Vec<String>,
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    match cfg.command {
        Command::SweepDepolarizing | Command::EmitFigure(Figure::Fig2) => sweep_depolarizing(cfg),
        Command::EmitFigure(Figure::Fig6) => figure6(cfg),
        Command::Analyze => analyze(cfg),
        Command::AuditRandom => audit_random(cfg),
        Command::Verify => verify(cfg),
    }
}

fn grid_points(grid: usize) -> Result<Vec<f64>> {
    if grid < 2 {
        return Err(Error::arg(format!("--grid {grid}: need at least 2 points")));
    }
    let last = (grid - 1) as f64;
    Ok((0..grid).map(|k| k as f64 / last).collect())
}

fn csv_outcome(header: &[&str], rows: Vec<Vec<String>>) -> Outcome {
    Outcome {
        report: io::to_csv(header, &rows),
        status: Status::Pass,
        log: Vec::new(),
    }
}

/// Columns `p, M_nats, d`, one block of rows per dimension.
pub fn sweep_depolarizing(cfg: &RunConfig) -> Result<Outcome> {
    let dims = if cfg.d.is_empty() { vec![2, 3, 4] } else { cfg.d.clone() };
    let ps = grid_points(cfg.grid)?;
    let mut rows = Vec::with_capacity(dims.len() * ps.len());
    for &d in &dims {
        if d < 2 {
            return Err(Error::arg(format!("--d {d}: need d >= 2")));
        }
        for &p in &ps {
            let m = input_output_correlation(&depolarizing_choi(d, p)?)?;
            rows.push(vec![fmt_f64(p), fmt_f64(m), d.to_string()]);
        }
    }
    Ok(csv_outcome(&["p", "M_nats", "d"], rows))
}

/// Columns `p, M1, M2, N, I` for the two-step depolarizing process with a
/// Fredkin-coupled environment.
pub fn figure6(cfg: &RunConfig) -> Result<Outcome> {
    let mut rows = Vec::with_capacity(cfg.grid);
    for p in grid_points(cfg.grid)? {
        let pt = nm_depolarizing_process(p)?;
        let r = correlation_report_for_state_with(pt.state(), 2, 2, &cfg.tol)?;
        rows.push(
            [p, r.markovian[0], r.markovian[1], r.non_markovian, r.total]
                .iter()
                .map(|&x| fmt_f64(x))
                .collect(),
        );
    }
    Ok(csv_outcome(&["p", "M1", "M2", "N", "I"], rows))
}

/// A Choi state to analyse plus where it came from.
struct Loaded {
    state: DensityMatrix,
    n: usize,
    d: usize,
    source: &'static str,
}

/// Reads `--in` as either a Choi file or a JSON process spec.
fn load_input(cfg: &RunConfig) -> Result<Loaded> {
    let path = cfg.input()?;
    let text = io::read_to_string(path)?;
    if io::is_choi_file(&text) {
        let (state, n, d) = io::read_choi(&text, &cfg.tol)?;
        return Ok(Loaded {
            state,
            n,
            d,
            source: "choi",
        });
    }
    let spec = ProcessSpecFile::parse(&text)?.to_circuit(&cfg.tol)?;
    let pt = build_from_circuit_with(&spec, &cfg.tol)?;
    let (n, d) = (pt.steps(), pt.dim());
    Ok(Loaded {
        state: pt.into_state(),
        n,
        d,
        source: "spec",
    })
}

#[derive(Debug, Clone, Serialize)]
struct Crosscheck {
    /// `S(Υ ‖ ⊗_j Υ_j)`; `None` when infinite.
    relative_entropy: Option<f64>,
    leaked_weight: Option<f64>,
    difference: Option<f64>,
    tolerance: f64,
    pass: bool,
}

fn crosscheck(state: &DensityMatrix, report: &CorrelationReport, tol: &Tolerances) -> Result<Crosscheck> {
    let rel = non_markovianity_crosscheck_for_state_with(state, report.n, report.d, tol)?;
    Ok(match rel {
        RelativeEntropy::Finite(v) => {
            let diff = (v - report.non_markovian).abs();
            Crosscheck {
                relative_entropy: Some(v),
                leaked_weight: None,
                difference: Some(diff),
                tolerance: tol.xcheck,
                pass: diff <= tol.xcheck,
            }
        }
        RelativeEntropy::Infinite { leaked_weight } => Crosscheck {
            relative_entropy: None,
            leaked_weight: Some(leaked_weight),
            difference: None,
            tolerance: tol.xcheck,
            pass: false,
        },
    })
}

/// Causality residuals, correlations, bound slacks and the N cross-check
/// as one JSON document.
pub fn analyze(cfg: &RunConfig) -> Result<Outcome> {
    let loaded = load_input(cfg)?;
    let causality = verify_causality(&loaded.state, loaded.n, loaded.d, cfg.tol.causal)?;
    let report = correlation_report_for_state_with(&loaded.state, loaded.n, loaded.d, &cfg.tol)?;
    let bounds = audit_bounds_with(&report, cfg.tol.xcheck);
    let check = crosscheck(&loaded.state, &report, &cfg.tol)?;
    let pass = causality.pass && bounds.pass;
    let doc = json!({
        "source": loaded.source,
        "n": loaded.n,
        "d": loaded.d,
        "causality": causality,
        "correlations": report,
        "bounds": bounds,
        "crosscheck": check,
        "pass": pass,
    });
    Ok(Outcome {
        report: to_json(&doc),
        status: Status::from_pass(pass),
        log: Vec::new(),
    })
}

/// Per-level causality residuals of a spec or Choi file.
pub fn verify(cfg: &RunConfig) -> Result<Outcome> {
    let loaded = load_input(cfg)?;
    let causality = verify_causality(&loaded.state, loaded.n, loaded.d, cfg.tol.causal)?;
    let failing: Vec<usize> = causality
        .residuals
        .iter()
        .enumerate()
        .filter(|(_, &r)| !(r <= causality.tolerance))
        .map(|(k, _)| k + 1)
        .collect();
    let doc = json!({
        "source": loaded.source,
        "n": loaded.n,
        "d": loaded.d,
        "residuals": causality.residuals,
        "base_residual": causality.base_residual,
        "failing_levels": failing,
        "tolerance": causality.tolerance,
        "pass": causality.pass,
    });
    Ok(Outcome {
        report: to_json(&doc),
        status: Status::from_pass(causality.pass),
        log: Vec::new(),
    })
}

/// Per-sample results of the random audit.
struct Sample {
    causality: CausalityReport,
    report: CorrelationReport,
    bounds: BoundAudit,
    crosscheck: Crosscheck,
}

fn audit_sample(spec: &RandomSpec, tol: &Tolerances) -> Result<Sample> {
    let pt = random_process(spec)?;
    let report = correlation_report_for_state_with(pt.state(), spec.n, spec.d, tol)?;
    let bounds = audit_bounds_with(&report, tol.xcheck);
    let crosscheck = crosscheck(pt.state(), &report, tol)?;
    Ok(Sample {
        causality: pt.causality().clone(),
        report,
        bounds,
        crosscheck,
    })
}

#[derive(Debug, Clone, Default, Serialize)]
struct BoundTally {
    min_slack: Option<f64>,
    violations: usize,
}

impl BoundTally {
    fn add(&mut self, slack: f64, tolerance: f64) {
        self.min_slack = Some(self.min_slack.map_or(slack, |m| m.min(slack)));
        if !(slack >= -tolerance) {
            self.violations += 1;
        }
    }
}

/// Samples `--samples` random processes with seeds `seed, seed + 1, …` and
/// audits each one. Samples run in parallel but are merged in index order,
/// so the summary is identical across runs.
pub fn audit_random(cfg: &RunConfig) -> Result<Outcome> {
    if cfg.samples == 0 {
        return Err(Error::arg("--samples must be at least 1"));
    }
    let n = cfg.n.unwrap_or(3);
    let d = cfg.first_d();
    let d_env = cfg.d_env.unwrap_or(4);
    let started = Instant::now();
    let samples: Vec<Sample> = (0..cfg.samples)
        .into_par_iter()
        .map(|k| {
            let spec = RandomSpec::new(n, d, d_env, cfg.seed.wrapping_add(k as u64)).with_env_init(cfg.env_init);
            audit_sample(&spec, &cfg.tol)
        })
        .collect::<Result<_>>()?;
    let elapsed = started.elapsed();

    let tol = cfg.tol.xcheck;
    let names = ["prop1", "prop2", "thm1", "thm2", "thm2p", "two_step_1", "two_step_2"];
    let mut tallies: Vec<BoundTally> = vec![BoundTally::default(); names.len()];
    let mut worst_causality = 0.0f64;
    let mut causality_failures = 0usize;
    let mut max_n = f64::NEG_INFINITY;
    let mut max_additivity = 0.0f64;
    let mut max_crosscheck = 0.0f64;
    let mut crosscheck_failures = 0usize;
    for s in &samples {
        let b = &s.bounds;
        for &x in &b.prop1_slack {
            tallies[0].add(x, tol);
        }
        for &x in &b.prop2_slack {
            tallies[1].add(x, tol);
        }
        tallies[2].add(b.thm1_slack, tol);
        tallies[3].add(b.thm2_slack, tol);
        tallies[4].add(b.thm2p_slack, tol);
        if let Some((a, c)) = b.two_step_slacks {
            tallies[5].add(a, tol);
            tallies[6].add(c, tol);
        }
        worst_causality = worst_causality.max(s.causality.max_residual());
        causality_failures += usize::from(!s.causality.pass);
        max_n = max_n.max(s.report.non_markovian);
        max_additivity = max_additivity.max(s.report.additivity_residual);
        match s.crosscheck.difference {
            Some(diff) => max_crosscheck = max_crosscheck.max(diff),
            None => max_crosscheck = f64::MAX,
        }
        crosscheck_failures += usize::from(!s.crosscheck.pass);
    }
    let violations: usize = tallies.iter().map(|t| t.violations).sum();
    let pass = violations == 0 && causality_failures == 0 && crosscheck_failures == 0;
    let bounds: serde_json::Map<String, serde_json::Value> = names
        .iter()
        .zip(&tallies)
        .filter(|(_, t)| t.min_slack.is_some())
        .map(|(name, t)| (name.to_string(), json!(t)))
        .collect();
    let doc = json!({
        "samples": cfg.samples,
        "n": n,
        "d": d,
        "d_env": d_env,
        "seed": cfg.seed,
        "env_init": cfg.env_init,
        "slack_tolerance": tol,
        "bounds": bounds,
        "violations": violations,
        "worst_causality_residual": worst_causality,
        "causality_failures": causality_failures,
        "max_N": max_n,
        "max_additivity_residual": max_additivity,
        "max_crosscheck_difference": max_crosscheck,
        "crosscheck_failures": crosscheck_failures,
        "pass": pass,
    });
    Ok(Outcome {
        report: to_json(&doc),
        status: Status::from_pass(pass),
        log: vec![format!(
            "audit-random: {} samples in {:.3} s",
            cfg.samples,
            elapsed.as_secs_f64()
        )],
    })
}

fn to_json(doc: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report serialisation cannot fail");
    s.push('\n');
    s
}

/// Runs a command, writes its report and returns the exit code. Errors are
/// printed to stderr.
pub fn execute(cfg: &RunConfig) -> i32 {
    let outcome = match run(cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("proctensor: {e}");
            return match e {
                Error::NotCausal { .. } => Status::Fail.code(),
                _ => Status::InputError.code(),
            };
        }
    };
    for line in &outcome.log {
        eprintln!("{line}");
    }
    match &cfg.output {
        Some(path) => {
            if let Err(e) = io::write_string(path, &outcome.report) {
                eprintln!("proctensor: {e}");
                return Status::InputError.code();
            }
        }
        None => print!("{}", outcome.report),
    }
    outcome.status.code()
}

#[derive(Debug, Parser)]
#[command(name = "proctensor", version, about = "Choi states, process tensors and their temporal correlations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
    #[command(flatten)]
    pub options: CliOptions,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// CSV of the depolarizing channel's input-output correlation against p
    SweepDepolarizing,
    /// Full JSON report for a process spec or Choi file
    Analyze,
    /// Bound audit over seeded random processes
    AuditRandom,
    /// CSV data behind a figure
    EmitFigure {
        #[arg(value_enum)]
        which: Figure,
    },
    /// Causality residuals of a process spec or Choi file
    Verify,
}

#[derive(Debug, Args)]
pub struct CliOptions {
    /// System dimension; a comma-separated list for sweeps
    #[arg(long, global = true, value_delimiter = ',')]
    pub d: Vec<usize>,
    /// Number of steps
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Environment dimension
    #[arg(long, global = true)]
    pub denv: Option<usize>,
    /// Points on the p grid, endpoints included
    #[arg(long, global = true, default_value_t = 101)]
    pub grid: usize,
    /// Random processes to audit
    #[arg(long, global = true, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Initial environment for random processes
    #[arg(long, global = true, default_value = "seeded-random")]
    pub env_init: EnvInit,
    /// Input path (process spec JSON or Choi file)
    #[arg(long = "in", global = true)]
    pub input: Option<PathBuf>,
    /// Output path; stdout when absent
    #[arg(long = "out", global = true)]
    pub output: Option<PathBuf>,
    /// Slack tolerance for bounds and cross-checks
    #[arg(long = "tol", alias = "tol-xcheck", global = true)]
    pub tol_xcheck: Option<f64>,
    #[arg(long, global = true)]
    pub tol_herm: Option<f64>,
    #[arg(long, global = true)]
    pub tol_trace: Option<f64>,
    #[arg(long, global = true)]
    pub tol_psd: Option<f64>,
    #[arg(long, global = true)]
    pub tol_eig: Option<f64>,
    #[arg(long, global = true)]
    pub tol_supp: Option<f64>,
    #[arg(long, global = true)]
    pub tol_causal: Option<f64>,
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig> {
        let command = match self.command {
            CliCommand::SweepDepolarizing => Command::SweepDepolarizing,
            CliCommand::Analyze => Command::Analyze,
            CliCommand::AuditRandom => Command::AuditRandom,
            CliCommand::EmitFigure { which } => Command::EmitFigure(which),
            CliCommand::Verify => Command::Verify,
        };
        let o = self.options;
        let mut tol = Tolerances::default();
        for (slot, value, name) in [
            (&mut tol.herm, o.tol_herm, "tol-herm"),
            (&mut tol.trace, o.tol_trace, "tol-trace"),
            (&mut tol.psd, o.tol_psd, "tol-psd"),
            (&mut tol.eig, o.tol_eig, "tol-eig"),
            (&mut tol.supp, o.tol_supp, "tol-supp"),
            (&mut tol.xcheck, o.tol_xcheck, "tol"),
            (&mut tol.causal, o.tol_causal, "tol-causal"),
        ] {
            if let Some(v) = value {
                if !(v.is_finite() && v >= 0.0) {
                    return Err(Error::arg(format!("--{name} {v}: must be finite and non-negative")));
                }
                *slot = v;
            }
        }
        Ok(RunConfig {
            command,
            input: o.input,
            output: o.output,
            d: o.d,
            n: o.n,
            d_env: o.denv,
            grid: o.grid,
            samples: o.samples,
            seed: o.seed,
            env_init: o.env_init,
            tol,
        })
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn main_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Status::InputError.code() } else { 0 };
        }
    };
    match cli.into_config() {
        Ok(cfg) => execute(&cfg),
        Err(e) => {
            eprintln!("proctensor: {e}");
            Status::InputError.code()
        }
    }
}
