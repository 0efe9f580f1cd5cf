//! The `cheeger` command line: argument definitions and the four
//! subcommands, each producing a deterministic text report.

pub mod generate;

use std::fs;
use std::path::{Path, PathBuf};

use cheeger_core::expansion::{
    self, mixing_audit, AlphaChoice, ExpansionReport, MixingOptions, MixingReport, TupleRecord, TupleStrategy,
    DEFAULT_BUDGET,
};
use cheeger_core::overlap::{self, Placement, SearchStrategy, Witness};
use cheeger_core::random::{self, CheegerMode, ExperimentConfig};
use cheeger_core::report::{fmt_float, fmt_floats, fmt_list, Report};
use cheeger_core::{io, operators, spectral, SimplicialComplex};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_240_601;

pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] cheeger_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: cheeger_core::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_ERROR,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "cheeger", version, about = "Spectral gap, Cheeger constant, mixing and overlap of simplicial complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectrum, Betti numbers, density identity and Cheeger constant
    Analyze(AnalyzeArgs),
    /// Audit the mixing-lemma bounds over disjoint vertex families
    Mixing(MixingArgs),
    /// Spectral and Cheeger experiments on Linial–Meshulam complexes
    Random(RandomArgs),
    /// Depth of a placement, placement search, and the spectral overlap bound
    Overlap(OverlapArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// Complex file (JSON: {"n": N, "top_cells": [[...], ...]})
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Generated complex, e.g. "complete n=5 d=2", "lm n=10 d=2 p=0.5", "mobius"
    #[arg(long, value_name = "SPEC")]
    pub generate: Option<String>,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

fn parse_alpha(s: &str) -> Result<AlphaChoice, String> {
    s.parse().map_err(|e: cheeger_core::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    /// α values for ρ_α: k, auto (= nk/(n-d)) or a number; repeatable
    #[arg(long, value_parser = parse_alpha, default_values = ["k", "auto"])]
    pub alpha: Vec<AlphaChoice>,
    /// Largest partition count enumerated exactly before local search
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    /// Local-search restarts when the budget is exceeded
    #[arg(long, default_value_t = 16)]
    pub restarts: usize,
    /// Write ∂_{d-1}, ∂_d, Δ⁺, Δ⁻, Δ and D in coordinate format
    #[arg(long, value_name = "PATH")]
    pub dump_matrices: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MixingArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_parser = parse_alpha, default_value = "auto")]
    pub alpha: AlphaChoice,
    /// Audit every family regardless of count
    #[arg(long)]
    pub exhaustive_tuples: bool,
    /// Families sampled when the count is too large for exhaustive audit
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    /// Rows in the tightest-families table
    #[arg(long, default_value_t = 20)]
    pub records: usize,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub n: usize,
    /// Density constant C in p = C ln n / n
    #[arg(long)]
    pub c: f64,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    /// Half-width constant γ for the interval [(C-γ) ln n, (C+γ) ln n]
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    /// Skip the Cheeger constant
    #[arg(long)]
    pub no_cheeger: bool,
}

#[derive(Debug, Args)]
pub struct OverlapArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Placement file (lines `id x_1 ... x_d`); without it, search placements
    #[arg(long, value_name = "PATH")]
    pub placement: Option<PathBuf>,
    #[arg(long, default_value = "random", value_parser = ["random", "adversarial-descent"])]
    pub strategy: String,
    #[arg(long, default_value_t = 200)]
    pub iterations: usize,
    /// Candidate points per placement when d ≥ 3
    #[arg(long, default_value_t = overlap::DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Pach constant c_d in (0, 1]; enables the spectral lower bound
    #[arg(long, value_name = "VALUE")]
    pub cd: Option<f64>,
    /// Report the spectral lower bound (requires --cd)
    #[arg(long, requires = "cd")]
    pub spectral_bound: bool,
    /// Write the best placement found by search
    #[arg(long, value_name = "PATH")]
    pub write_placement: Option<PathBuf>,
    /// Include the per-cell containment bitmask
    #[arg(long)]
    pub verbose: bool,
}

/// A finished report and any invariant violations it found.
#[derive(Debug)]
pub struct Outcome {
    pub report: String,
    /// One JSON object per violation
    pub violations: Vec<String>,
    pub output: Option<PathBuf>,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Mixing(a) => mixing(a),
        Command::Random(a) => random_cmd(a),
        Command::Overlap(a) => overlap_cmd(a),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load(input: &InputArgs, seed: u64) -> Result<(SimplicialComplex, String), CliError> {
    match (&input.input, &input.generate) {
        (Some(path), None) => {
            let x = io::parse_complex(&read(path)?).map_err(|source| CliError::Input {
                path: path.clone(),
                source,
            })?;
            Ok((x, format!("file {}", path.display())))
        }
        (None, Some(spec)) => Ok((generate::generate(spec, seed)?, format!("generate {}", spec.trim()))),
        _ => Err(CliError::Usage("give exactly one of --input and --generate".into())),
    }
}

fn header(r: &mut Report, command: &str, source: Option<&str>, seed: u64) {
    r.kv("command", command);
    if let Some(s) = source {
        r.kv("source", s);
    }
    r.kv("seed", seed);
}

fn describe(r: &mut Report, x: &SimplicialComplex) {
    let counts: Vec<usize> = (-1..=x.dim() as isize).map(|j| x.count(j)).collect();
    r.kv("n", x.n_vertices())
        .kv("d", x.dim())
        .kv("cell_counts", fmt_list(&counts))
        .kv("complete_skeleton", x.is_complete_skeleton());
}

fn finish(r: Report, violations: Vec<serde_json::Value>, output: Option<PathBuf>) -> Outcome {
    let mut r = r;
    let violations: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
    r.kv("violations", violations.len());
    if !violations.is_empty() {
        r.section("violations");
        for v in &violations {
            r.kv("violation", v);
        }
    }
    Outcome {
        report: r.into_string(),
        violations,
        output,
    }
}

fn dump_matrices(x: &SimplicialComplex, path: &Path) -> Result<(), CliError> {
    let d = x.dim();
    let mut out = Vec::new();
    let mats = [
        operators::boundary_matrix(x, d - 1)?,
        operators::boundary_matrix(x, d)?,
        operators::upper_laplacian(x)?,
        operators::lower_laplacian(x)?,
        operators::full_laplacian(x)?,
        operators::degree_operator(x)?,
    ];
    for m in &mats {
        m.write_coordinate(&mut out).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
    }
    write(path, &String::from_utf8(out).expect("ascii output"))
}

fn cheeger_with_fallback(x: &SimplicialComplex, budget: u128, seed: u64, restarts: usize) -> Result<ExpansionReport, CliError> {
    match expansion::cheeger_exact_with_budget(x, budget) {
        Ok(r) => Ok(r),
        Err(cheeger_core::Error::BudgetExceeded { .. }) => Ok(expansion::cheeger_local_search(x, seed, restarts)?),
        Err(e) => Err(e.into()),
    }
}

fn h_tag(r: &ExpansionReport) -> &'static str {
    match r.method {
        expansion::Method::Exact => "exact",
        expansion::Method::LocalSearch => "upper-bound",
    }
}

fn analyze(args: &AnalyzeArgs) -> Result<Outcome, CliError> {
    let seed = args.common.seed;
    let (x, source) = load(&args.input, seed)?;
    let mut r = Report::new();
    header(&mut r, "analyze", Some(&source), seed);
    describe(&mut r, &x);
    if x.dim() == 0 {
        return Err(CliError::Usage("analysis needs a complex of dimension at least 1".into()));
    }
    if let Some(path) = &args.dump_matrices {
        dump_matrices(&x, path)?;
        r.kv("matrices", path.display());
    }

    let alphas: Vec<f64> = args.alpha.iter().map(|a| a.resolve(&x)).collect();
    let s = spectral::spectral_report(&x, &alphas)?;
    r.section("spectrum");
    r.kv("iterative", s.iterative);
    if let Some(spec) = &s.spectrum {
        r.kv("spectrum_upper", fmt_floats(spec));
    }
    r.float("spectral_gap", s.spectral_gap);
    if let Some(i) = s.gap_index {
        r.kv("gap_index", i);
    }
    if let Some(routes) = &s.routes {
        r.float("route_restriction", routes.restriction);
        r.float("route_indexed", routes.indexed);
        if let Some(v) = routes.full_laplacian {
            r.float("route_full_laplacian", v);
        }
        r.float("route_spread", routes.spread());
    }
    r.float("restricted_min", s.restricted_min).float("restricted_max", s.restricted_max);
    if let Some(z) = s.zero_multiplicity {
        r.kv("zero_multiplicity", z);
    }
    if let Some(m) = s.min_full_laplacian {
        r.float("min_spec_full_laplacian", m);
    }
    if let Some(b) = &s.betti {
        r.kv("betti_reduced", fmt_list(b));
    }
    r.kv("trace_upper", s.trace);
    r.float("lambda_avg", s.lambda_avg);
    if let Some(dens) = &s.density {
        r.float("delta", dens.delta)
            .float("k_avg", dens.k_avg)
            .float("density_residual", dens.max_abs_residual);
    }
    if !s.rho.is_empty() {
        let rows: Vec<Vec<String>> = args
            .alpha
            .iter()
            .zip(&s.rho)
            .map(|(choice, &(a, rho))| vec![choice.to_string(), fmt_float(a), fmt_float(rho)])
            .collect();
        r.table("rho", &["alpha_choice", "alpha", "rho"], &rows);
    }

    let h = cheeger_with_fallback(&x, args.budget, seed, args.restarts)?;
    r.section("expansion");
    r.float("h", h.h())
        .kv("h_ratio", format!("{}/{}", h.value.numer(), h.value.denom()))
        .kv("h_method", h.method.as_str())
        .kv("h_tag", h_tag(&h))
        .kv("f_count", h.f_count)
        .kv("block_product", h.product)
        .kv("argmin", &h.argmin)
        .kv("candidates", h.candidates);

    let mut violations = Vec::new();
    if x.is_complete_skeleton() {
        let holds = s.spectral_gap <= h.h() + 1e-9;
        r.kv("cheeger_inequality", if holds { "holds" } else { "violated" });
        if !holds {
            violations.push(json!({
                "check": "cheeger_inequality",
                "lambda": s.spectral_gap,
                "h": h.h(),
                "h_method": h.method.as_str(),
                "argmin": h.argmin.blocks(),
            }));
        }
    } else {
        r.kv("cheeger_inequality", "not-applicable");
    }
    Ok(finish(r, violations, args.common.output.clone()))
}

fn tuple_row(t: &TupleRecord) -> Vec<String> {
    vec![
        t.tuple.to_string(),
        t.f_count.to_string(),
        fmt_float(t.expected),
        fmt_float(t.discrepancy),
        fmt_float(t.bounds.geometric),
        fmt_float(t.bounds.sharper),
        fmt_float(t.bounds.remark),
        fmt_float(t.min_slack()),
    ]
}

const TUPLE_HEADER: [&str; 8] = [
    "sets",
    "f_count",
    "expected",
    "discrepancy",
    "bound_geometric",
    "bound_sharper",
    "bound_remark",
    "min_slack",
];

fn mixing(args: &MixingArgs) -> Result<Outcome, CliError> {
    let seed = args.common.seed;
    let (x, source) = load(&args.input, seed)?;
    let mut r = Report::new();
    header(&mut r, "mixing", Some(&source), seed);
    describe(&mut r, &x);
    let strategy = if args.exhaustive_tuples {
        TupleStrategy::Exhaustive
    } else {
        TupleStrategy::Auto {
            samples: args.samples,
            seed,
        }
    };
    let opts = MixingOptions {
        alpha: args.alpha,
        strategy,
        record_limit: args.records,
    };
    let m: MixingReport = mixing_audit(&x, &opts)?;
    r.section("audit");
    r.kv("alpha_choice", args.alpha)
        .float("alpha", m.alpha)
        .float("rho", m.rho)
        .kv("families_total", expansion::tuple_count(m.n, m.d + 1))
        .kv("mode", if m.exhaustive { "exhaustive" } else { "sampled" })
        .kv("audited", m.audited)
        .kv("violation_count", m.violation_count)
        .float("max_discrepancy", m.max_discrepancy)
        .float("min_slack_geometric", m.min_slack_geometric)
        .float("min_slack_sharper", m.min_slack_sharper)
        .float("min_slack_remark", m.min_slack_remark);
    let rows: Vec<Vec<String>> = m.tightest.iter().map(tuple_row).collect();
    r.table("tightest", &TUPLE_HEADER, &rows);
    let violations = m
        .violations
        .iter()
        .map(|t| {
            json!({
                "check": "mixing",
                "sets": t.tuple.sets(),
                "f_count": t.f_count,
                "expected": t.expected,
                "discrepancy": t.discrepancy,
                "bound_geometric": t.bounds.geometric,
                "bound_sharper": t.bounds.sharper,
                "bound_remark": t.bounds.remark,
            })
        })
        .collect();
    Ok(finish(r, violations, args.common.output.clone()))
}

fn opt_float(v: Option<f64>) -> String {
    v.map_or_else(|| "none".to_string(), fmt_float)
}

fn random_cmd(args: &RandomArgs) -> Result<Outcome, CliError> {
    let seed = args.common.seed;
    let cfg = ExperimentConfig {
        d: args.d,
        n: args.n,
        c: args.c,
        trials: args.trials,
        seed,
        gamma: args.gamma,
        cheeger: if args.no_cheeger {
            CheegerMode::Skip
        } else {
            CheegerMode::Auto {
                budget: args.budget,
                restarts: args.restarts,
            }
        },
    };
    let res = random::run_experiment(&cfg)?;
    let mut r = Report::new();
    header(&mut r, "random", None, seed);
    r.kv("d", args.d)
        .kv("n", args.n)
        .float("c", args.c)
        .float("p", res.p)
        .kv("trials", args.trials)
        .kv("cheeger", if args.no_cheeger { "skip" } else { "auto" });
    let rows: Vec<Vec<String>> = res
        .rows
        .iter()
        .map(|t| {
            let (h, method) = match &t.h {
                Some((h, m)) => (
                    fmt_float(*h.numer() as f64 / *h.denom() as f64),
                    match m {
                        expansion::Method::Exact => "exact",
                        expansion::Method::LocalSearch => "upper-bound",
                    },
                ),
                None => ("none".into(), "none"),
            };
            vec![
                seed.to_string(),
                t.trial.to_string(),
                t.top_cells.to_string(),
                fmt_float(t.lambda()),
                fmt_float(t.spec_min),
                fmt_float(t.spec_max),
                fmt_float(t.scaled_deviation),
                t.isolated.as_ref().map_or("none".into(), |c| c.to_string()),
                h,
                method.into(),
            ]
        })
        .collect();
    r.table(
        "trials",
        &["seed", "trial", "top_cells", "lambda", "spec_min", "spec_max", "scaled_deviation", "isolated", "h", "h_tag"],
        &rows,
    );
    r.section("summary");
    r.kv("gamma_hat", opt_float(res.gamma_hat))
        .kv("gamma_hat_over_sqrt_c", opt_float(res.gamma_hat_over_sqrt_c))
        .kv("fraction_inside_fitted", opt_float(res.fraction_inside_fitted))
        .kv("gamma_given", opt_float(args.gamma))
        .kv("fraction_inside_given", opt_float(res.fraction_inside_given))
        .kv("isolated_rate", opt_float(res.isolated_rate))
        .kv("lambda_over_log_n", opt_float(res.lambda_over_log_n))
        .kv("h_over_log_n", opt_float(res.h_over_log_n))
        .kv("cheeger_violations", res.cheeger_violations);
    let violations = res
        .rows
        .iter()
        .filter_map(|t| {
            let (h, _) = t.h?;
            let hv = *h.numer() as f64 / *h.denom() as f64;
            (t.lambda() > hv + 1e-9).then(|| {
                json!({"check": "cheeger_inequality", "trial": t.trial, "lambda": t.lambda(), "h": hv})
            })
        })
        .collect();
    Ok(finish(r, violations, args.common.output.clone()))
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Vertex(v) => format!("vertex {v}"),
        Witness::Crossing(a, b) => format!("crossing {}-{} x {}-{}", a.0, a.1, b.0, b.1),
        Witness::Sample => "sample".into(),
    }
}

fn bitmask(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn overlap_cmd(args: &OverlapArgs) -> Result<Outcome, CliError> {
    let seed = args.common.seed;
    let (x, source) = load(&args.input, seed)?;
    let mut r = Report::new();
    header(&mut r, "overlap", Some(&source), seed);
    describe(&mut r, &x);
    if let Some(c) = args.cd {
        overlap::check_pach_constant(c)?;
    }
    match &args.placement {
        Some(path) => {
            let phi = Placement::parse(&read(path)?).map_err(|source| CliError::Input {
                path: path.clone(),
                source,
            })?;
            let d = overlap::max_depth_with(&x, &phi, args.samples, seed)?;
            r.section("placement");
            r.kv("placement", path.display())
                .kv("max_depth", d.depth)
                .kv("top_cells", d.total)
                .float("fraction", d.fraction)
                .kv("approximate", d.approximate)
                .kv("witness", witness_text(&d.witness))
                .kv("witness_point", fmt_floats(&d.point));
            if args.verbose {
                r.kv("containing", bitmask(&d.containing));
            }
        }
        None => {
            let strategy: SearchStrategy = args.strategy.parse()?;
            let s = overlap::overlap_upper_bound(&x, strategy, seed, args.iterations)?;
            r.section("search");
            r.kv("strategy", &args.strategy)
                .kv("iterations", s.iterations)
                .float("upper_bound", s.best_fraction)
                .kv("best_depth", s.best_depth)
                .kv("approximate", s.approximate);
            if args.verbose {
                let best = overlap::max_depth_with(&x, &s.best_placement, args.samples, seed)?;
                r.kv("witness", witness_text(&best.witness))
                    .kv("witness_point", fmt_floats(&best.point))
                    .kv("containing", bitmask(&best.containing));
            }
            let rows: Vec<Vec<String>> = s
                .best_placement
                .coords()
                .iter()
                .enumerate()
                .map(|(v, c)| {
                    let mut row = vec![v.to_string()];
                    row.extend(c.iter().map(|&t| fmt_float(t)));
                    row
                })
                .collect();
            let mut cols = vec!["vertex".to_string()];
            cols.extend((1..=x.dim()).map(|i| format!("x{i}")));
            let cols: Vec<&str> = cols.iter().map(String::as_str).collect();
            r.table("best_placement", &cols, &rows);
            if let Some(path) = &args.write_placement {
                write(path, &s.best_placement.to_text())?;
            }
        }
    }
    if let (true, Some(c)) = (args.spectral_bound, args.cd) {
        let b = overlap::spectral_overlap_bound(&x, c)?;
        r.section("spectral_bound");
        r.float("c_d", b.c_d)
            .float("k", b.k)
            .float("eps", b.eps)
            .float("lambda_avg", b.lambda_avg)
            .float("eps_prime", b.eps_prime)
            .float("bound_k", b.bound_k)
            .float("bound_lambda", b.bound_lambda)
            .float("lower_bound", b.bound)
            .kv("vacuous", b.vacuous);
    }
    Ok(finish(r, Vec::new(), args.common.output.clone()))
}

/// Runs the command line and returns the process exit code.
pub fn main_with<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    match run(&cli) {
        Ok(out) => {
            match &out.output {
                Some(path) => {
                    if let Err(e) = write(path, &out.report) {
                        eprintln!("error: {e}");
                        return EXIT_ERROR;
                    }
                }
                None => print!("{}", out.report),
            }
            for v in &out.violations {
                eprintln!("{v}");
            }
            if out.violations.is_empty() {
                0
            } else {
                EXIT_VIOLATION
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
