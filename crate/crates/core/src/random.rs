//! Linial–Meshulam random complexes and experiments on their spectra and
//! Cheeger constants.
//!
//! Randomness comes from ChaCha8 seeded with the experiment seed; trial `t`
//! reads stream `t`. Candidate top cells are visited in lexicographic order
//! with one uniform draw each, so a complex depends only on
//! `(d, n, p, seed, trial)`.

use indexmap::IndexSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{for_each_subset, Cell, SimplicialComplex};
use crate::error::{Error, Result};
use crate::expansion::{self, Method, Ratio};
use crate::spectral;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LmParams {
    pub d: usize,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl LmParams {
    pub fn new(d: usize, n: usize, p: f64, seed: u64) -> Result<Self> {
        let params = LmParams { d, n, p, seed };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::Parameter("d must be at least 1".into()));
        }
        if self.n <= self.d {
            return Err(Error::Parameter(format!("n = {} must exceed d = {}", self.n, self.d)));
        }
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(Error::Parameter(format!("p = {} is not in (0, 1)", self.p)));
        }
        Ok(())
    }
}

/// `p = C·ln n / n`, checked to lie in `(0, 1)`.
pub fn density_for(n: usize, c: f64) -> Result<f64> {
    let p = c * (n as f64).ln() / n as f64;
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Parameter(format!(
            "p = C ln n / n = {c} * ln {n} / {n} = {p} is not in (0, 1)"
        )));
    }
    Ok(p)
}

/// `X(d, n, p)` on stream 0.
pub fn linial_meshulam(params: &LmParams) -> Result<SimplicialComplex> {
    linial_meshulam_trial(params, 0)
}

/// `X(d, n, p)` drawn from stream `trial` of `params.seed`.
pub fn linial_meshulam_trial(params: &LmParams, trial: u64) -> Result<SimplicialComplex> {
    params.validate()?;
    let LmParams { d, n, p, seed } = *params;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut levels: Vec<IndexSet<Cell>> = Vec::with_capacity(d + 2);
    levels.push(IndexSet::from([Cell::empty()]));
    for j in 0..d {
        let mut level = IndexSet::new();
        for_each_subset(n, j + 1, |s| {
            level.insert(Cell::new(s.to_vec()).expect("increasing"));
        });
        levels.push(level);
    }
    let mut top = IndexSet::new();
    for_each_subset(n, d + 1, |s| {
        if rng.random::<f64>() < p {
            top.insert(Cell::new(s.to_vec()).expect("increasing"));
        }
    });
    levels.push(top);
    Ok(SimplicialComplex::from_levels(n, d, levels))
}

/// First `(d-1)`-cell of degree zero, in basis order.
pub fn isolated_cell_check(x: &SimplicialComplex) -> Option<Cell> {
    let d = x.dim();
    if d == 0 {
        return None;
    }
    let degrees = x.degrees(d - 1);
    degrees
        .iter()
        .position(|&k| k == 0)
        .map(|i| x.cells(d - 1)[i].clone())
}

/// How to evaluate `h` in each trial.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CheegerMode {
    Skip,
    /// Exact when the partition count fits `budget`, else local search
    Auto { budget: u128, restarts: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub d: usize,
    pub n: usize,
    /// density constant in `p = C ln n / n`
    pub c: f64,
    pub trials: usize,
    pub seed: u64,
    /// A-priori half-width constant for the interval `[(C-γ) ln n, (C+γ) ln n]`
    pub gamma: Option<f64>,
    pub cheeger: CheegerMode,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialRow {
    pub trial: usize,
    pub top_cells: usize,
    /// min of `Spec Δ⁺|_{Z_{d-1}}`, i.e. `λ(X)`
    pub spec_min: f64,
    pub spec_max: f64,
    /// `max |extreme - pn| / √(np ln n)`
    pub scaled_deviation: f64,
    pub isolated: Option<Cell>,
    pub h: Option<(Ratio, Method)>,
}

impl TrialRow {
    pub fn lambda(&self) -> f64 {
        self.spec_min
    }

    fn deviation(&self, center: f64) -> f64 {
        (self.spec_min - center).abs().max((self.spec_max - center).abs())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub p: f64,
    pub rows: Vec<TrialRow>,
    /// `max_t max |extreme - pn| / ln n`
    pub gamma_hat: Option<f64>,
    pub gamma_hat_over_sqrt_c: Option<f64>,
    pub fraction_inside_fitted: Option<f64>,
    pub fraction_inside_given: Option<f64>,
    pub isolated_rate: Option<f64>,
    /// `min λ / ln n`
    pub lambda_over_log_n: Option<f64>,
    /// `min h / ln n` over trials with `h` computed
    pub h_over_log_n: Option<f64>,
    /// trials with `λ > h + 1e-9`
    pub cheeger_violations: usize,
}

fn ratio_f64(r: Ratio) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn run_trial(cfg: &ExperimentConfig, params: &LmParams, trial: usize) -> Result<TrialRow> {
    let x = linial_meshulam_trial(params, trial as u64)?;
    let (lo, hi) = spectral::restricted_extremes(&x, spectral::DENSE_LIMIT)?;
    let isolated = isolated_cell_check(&x);
    let h = match (cfg.cheeger, &isolated) {
        (CheegerMode::Skip, _) => None,
        (CheegerMode::Auto { .. }, Some(cell)) => {
            let p = expansion::witness_partition(x.n_vertices(), cell)?;
            Some((expansion::partition_ratio(&x, &p)?, Method::Exact))
        }
        (CheegerMode::Auto { budget, restarts }, None) => {
            let r = match expansion::cheeger_exact_with_budget(&x, budget) {
                Ok(r) => r,
                Err(Error::BudgetExceeded { .. }) => {
                    expansion::cheeger_local_search(&x, params.seed ^ trial as u64, restarts)?
                }
                Err(e) => return Err(e),
            };
            Some((r.value, r.method))
        }
    };
    let n = cfg.n as f64;
    let scale = (n * params.p * n.ln()).sqrt();
    let center = params.p * n;
    let mut row = TrialRow {
        trial,
        top_cells: x.count(cfg.d as isize),
        spec_min: lo,
        spec_max: hi,
        scaled_deviation: 0.0,
        isolated,
        h,
    };
    row.scaled_deviation = row.deviation(center) / scale;
    Ok(row)
}

/// Runs `trials` independent samples of `X(d, n, C ln n / n)` and
/// summarizes their restricted spectra and, optionally, Cheeger constants.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    let p = density_for(cfg.n, cfg.c)?;
    let params = LmParams::new(cfg.d, cfg.n, p, cfg.seed)?;
    let rows = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg, &params, t))
        .collect::<Result<Vec<_>>>()?;

    let log_n = (cfg.n as f64).ln();
    let center = cfg.c * log_n;
    let trials = rows.len() as f64;
    let nonempty = !rows.is_empty();
    let inside = |gamma: f64| {
        let (lo, hi) = ((cfg.c - gamma) * log_n, (cfg.c + gamma) * log_n);
        rows.iter()
            .filter(|r| r.spec_min >= lo - 1e-9 && r.spec_max <= hi + 1e-9)
            .count() as f64
            / trials
    };
    let gamma_hat = nonempty.then(|| rows.iter().map(|r| r.deviation(center)).fold(0.0, f64::max) / log_n);
    let h_values: Vec<f64> = rows.iter().filter_map(|r| r.h.map(|(h, _)| ratio_f64(h))).collect();
    let cheeger_violations = rows
        .iter()
        .filter(|r| r.h.is_some_and(|(h, _)| r.lambda() > ratio_f64(h) + 1e-9))
        .count();
    Ok(ExperimentResult {
        p,
        gamma_hat,
        gamma_hat_over_sqrt_c: gamma_hat.map(|g| g / cfg.c.sqrt()),
        fraction_inside_fitted: gamma_hat.map(inside),
        fraction_inside_given: cfg.gamma.filter(|_| nonempty).map(inside),
        isolated_rate: nonempty.then(|| rows.iter().filter(|r| r.isolated.is_some()).count() as f64 / trials),
        lambda_over_log_n: nonempty.then(|| rows.iter().map(TrialRow::lambda).fold(f64::INFINITY, f64::min) / log_n),
        h_over_log_n: (!h_values.is_empty()).then(|| h_values.iter().copied().fold(f64::INFINITY, f64::min) / log_n),
        cheeger_violations,
        rows,
        config: cfg.clone(),
    })
}

/// Spectral concentration only.
pub fn concentration_experiment(
    d: usize,
    n: usize,
    c: f64,
    trials: usize,
    seed: u64,
    gamma: Option<f64>,
) -> Result<ExperimentResult> {
    run_experiment(&ExperimentConfig {
        d,
        n,
        c,
        trials,
        seed,
        gamma,
        cheeger: CheegerMode::Skip,
    })
}

/// Spectral gap as a certified lower bound on `h`, with `h` itself where
/// affordable.
pub fn cheeger_lower_bound_experiment(
    d: usize,
    n: usize,
    c: f64,
    trials: usize,
    seed: u64,
    budget: u128,
) -> Result<ExperimentResult> {
    run_experiment(&ExperimentConfig {
        d,
        n,
        c,
        trials,
        seed,
        gamma: None,
        cheeger: CheegerMode::Auto { budget, restarts: 16 },
    })
}
