//! Audit of the high-dimensional expander mixing lemma over disjoint vertex
//! families.

use std::cmp::Ordering;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::enumerate::{tuple_count, Assignments, UNASSIGNED};
use super::{check_dim, CellTable, DisjointTuple};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::spectral;

/// Exhaustive audits are used up to this many tuples (all of them at
/// `n = 12`, `d = 2`).
pub const EXHAUSTIVE_TUPLE_LIMIT: u128 = 2_532_530;

/// Slack below this counts as a violation.
pub const VIOLATION_TOL: f64 = 1e-9;

/// Choice of the density constant `α`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AlphaChoice {
    /// Average `(d-1)`-cell degree `k`
    K,
    /// `n·k / (n - d)`
    Auto,
    Value(f64),
}

impl AlphaChoice {
    pub fn resolve(self, x: &SimplicialComplex) -> f64 {
        let k = spectral::average_degree(x);
        let (n, d) = (x.n_vertices() as f64, x.dim() as f64);
        match self {
            AlphaChoice::K => k,
            AlphaChoice::Auto => n * k / (n - d),
            AlphaChoice::Value(a) => a,
        }
    }
}

impl FromStr for AlphaChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "k" => Ok(AlphaChoice::K),
            "auto" => Ok(AlphaChoice::Auto),
            other => other
                .parse::<f64>()
                .ok()
                .filter(|a| a.is_finite())
                .map(AlphaChoice::Value)
                .ok_or_else(|| Error::Parameter(format!("alpha must be k, auto or a finite number, got {other:?}"))),
        }
    }
}

impl fmt::Display for AlphaChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaChoice::K => write!(f, "k"),
            AlphaChoice::Auto => write!(f, "auto"),
            AlphaChoice::Value(a) => write!(f, "{a}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TupleStrategy {
    /// Exhaustive when the tuple count is within [`EXHAUSTIVE_TUPLE_LIMIT`],
    /// sampled otherwise
    Auto { samples: usize, seed: u64 },
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixingOptions {
    pub alpha: AlphaChoice,
    pub strategy: TupleStrategy,
    /// Number of lowest-slack tuples (and violations) kept in the report
    pub record_limit: usize,
}

impl Default for MixingOptions {
    fn default() -> Self {
        MixingOptions {
            alpha: AlphaChoice::Auto,
            strategy: TupleStrategy::Auto {
                samples: 100_000,
                seed: 0,
            },
            record_limit: 32,
        }
    }
}

/// The three discrepancy bounds for one family of set sizes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixingBounds {
    /// `ρ_α (∏|A_i|)^{d/(d+1)}`
    pub geometric: f64,
    /// `min_π ρ_α √(|A_π0||A_πd|) |A_π1|⋯|A_π(d-1)|`
    pub sharper: f64,
    /// the sharper bound with the `(1 - Σ|A_i|/n)` factors
    pub remark: f64,
}

/// Bounds for sets of the given sizes in an `n`-vertex complex.
pub fn mixing_bounds(sizes: &[usize], n: usize, rho: f64) -> MixingBounds {
    let k = sizes.len();
    let d = (k - 1) as f64;
    let prod: f64 = sizes.iter().map(|&s| s as f64).product();
    let total: f64 = sizes.iter().map(|&s| s as f64).sum();
    let nf = n as f64;
    let mut sharper = f64::INFINITY;
    let mut remark = f64::INFINITY;
    // π(0) = i and π(d) = j; the middle product is ∏ / (a_i a_j)
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let (ai, aj) = (sizes[i] as f64, sizes[j] as f64);
            let middle = prod / (ai * aj);
            sharper = sharper.min(rho * (ai * aj).sqrt() * middle);
            let first = ai * (1.0 - (total - aj) / nf);
            let last = aj * (1.0 - (total - ai) / nf);
            remark = remark.min(rho * (first * last).max(0.0).sqrt() * middle);
        }
    }
    MixingBounds {
        geometric: rho * prod.powf(d / (d + 1.0)),
        sharper,
        remark,
    }
}

/// One audited family.
#[derive(Clone, Debug, PartialEq)]
pub struct TupleRecord {
    pub tuple: DisjointTuple,
    pub f_count: u64,
    /// `α ∏|A_i| / n`
    pub expected: f64,
    pub discrepancy: f64,
    pub bounds: MixingBounds,
}

impl TupleRecord {
    pub fn slack_geometric(&self) -> f64 {
        self.bounds.geometric - self.discrepancy
    }

    pub fn slack_sharper(&self) -> f64 {
        self.bounds.sharper - self.discrepancy
    }

    pub fn slack_remark(&self) -> f64 {
        self.bounds.remark - self.discrepancy
    }

    pub fn min_slack(&self) -> f64 {
        self.slack_geometric().min(self.slack_sharper()).min(self.slack_remark())
    }

    pub fn is_violation(&self) -> bool {
        self.min_slack() < -VIOLATION_TOL
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MixingReport {
    pub n: usize,
    pub d: usize,
    pub alpha: f64,
    pub rho: f64,
    pub exhaustive: bool,
    pub audited: u64,
    pub violation_count: u64,
    /// First violations in enumeration order, at most `record_limit`
    pub violations: Vec<TupleRecord>,
    /// Lowest-slack tuples, ascending by slack, at most `record_limit`
    pub tightest: Vec<TupleRecord>,
    pub max_discrepancy: f64,
    pub min_slack_geometric: f64,
    pub min_slack_sharper: f64,
    pub min_slack_remark: f64,
}

struct Acc {
    audited: u64,
    violation_count: u64,
    violations: Vec<TupleRecord>,
    tightest: Vec<TupleRecord>,
    max_discrepancy: f64,
    min_slack: [f64; 3],
}

impl Acc {
    fn new() -> Self {
        Acc {
            audited: 0,
            violation_count: 0,
            violations: Vec::new(),
            tightest: Vec::new(),
            max_discrepancy: 0.0,
            min_slack: [f64::INFINITY; 3],
        }
    }

    fn push(&mut self, rec: TupleRecord, limit: usize) {
        self.audited += 1;
        self.max_discrepancy = self.max_discrepancy.max(rec.discrepancy);
        self.min_slack[0] = self.min_slack[0].min(rec.slack_geometric());
        self.min_slack[1] = self.min_slack[1].min(rec.slack_sharper());
        self.min_slack[2] = self.min_slack[2].min(rec.slack_remark());
        if rec.is_violation() {
            self.violation_count += 1;
            if self.violations.len() < limit {
                self.violations.push(rec.clone());
            }
        }
        self.offer(rec, limit);
    }

    /// Keeps the `limit` lowest slacks; earlier records win ties.
    fn offer(&mut self, rec: TupleRecord, limit: usize) {
        if limit == 0 {
            return;
        }
        let s = rec.min_slack();
        if self.tightest.len() == limit && s.total_cmp(&self.tightest[limit - 1].min_slack()) != Ordering::Less {
            return;
        }
        let pos = self
            .tightest
            .partition_point(|r| r.min_slack().total_cmp(&s) != Ordering::Greater);
        self.tightest.insert(pos, rec);
        self.tightest.truncate(limit);
    }

    fn merge(mut self, other: Acc, limit: usize) -> Acc {
        self.audited += other.audited;
        self.violation_count += other.violation_count;
        for v in other.violations {
            if self.violations.len() < limit {
                self.violations.push(v);
            }
        }
        for r in other.tightest {
            self.offer(r, limit);
        }
        self.max_discrepancy = self.max_discrepancy.max(other.max_discrepancy);
        for i in 0..3 {
            self.min_slack[i] = self.min_slack[i].min(other.min_slack[i]);
        }
        self
    }
}

struct Ctx<'a> {
    table: &'a CellTable,
    n: usize,
    k: usize,
    alpha: f64,
    rho: f64,
}

impl Ctx<'_> {
    fn record(&self, labels: &[u8]) -> TupleRecord {
        let tuple = DisjointTuple::from_labels(labels, self.k);
        let sizes = tuple.sizes();
        let prod: f64 = sizes.iter().map(|&s| s as f64).product();
        let f_count = self.table.count_transversal(labels);
        let expected = self.alpha * prod / self.n as f64;
        TupleRecord {
            f_count,
            expected,
            discrepancy: (f_count as f64 - expected).abs(),
            bounds: mixing_bounds(&sizes, self.n, self.rho),
            tuple,
        }
    }
}

/// Checks the three mixing bounds on disjoint `(d+1)`-families of vertex
/// sets of a complete-skeleton complex.
pub fn mixing_audit(x: &SimplicialComplex, opts: &MixingOptions) -> Result<MixingReport> {
    let d = check_dim(x)?;
    if !x.is_complete_skeleton() {
        return Err(Error::Precondition("the mixing audit requires a complete (d-1)-skeleton".into()));
    }
    let n = x.n_vertices();
    let k = d + 1;
    if n < k {
        return Err(Error::Precondition(format!("need at least {k} vertices")));
    }
    let alpha = opts.alpha.resolve(x);
    let rho = spectral::rho_alpha(x, alpha)?;
    let table = CellTable::top(x);
    let ctx = Ctx {
        table: &table,
        n,
        k,
        alpha,
        rho,
    };
    let limit = opts.record_limit;

    let (exhaustive, samples, seed) = match opts.strategy {
        TupleStrategy::Exhaustive => (true, 0, 0),
        TupleStrategy::Sampled { samples, seed } => (false, samples, seed),
        TupleStrategy::Auto { samples, seed } => (tuple_count(n, k) <= EXHAUSTIVE_TUPLE_LIMIT, samples, seed),
    };

    let acc = if exhaustive {
        let space = Assignments::tuples(n, k);
        space
            .prefixes()
            .par_iter()
            .map(|p| {
                let mut acc = Acc::new();
                let _ = space.for_each(p, |labels| {
                    acc.push(ctx.record(labels), limit);
                    ControlFlow::Continue(())
                });
                acc
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(Acc::new(), |a, b| a.merge(b, limit))
    } else {
        (0..samples)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64);
                let mut labels = vec![UNASSIGNED; n];
                loop {
                    let mut seen = vec![false; k];
                    for l in labels.iter_mut() {
                        let r = rng.random_range(0..=k);
                        *l = if r == k { UNASSIGNED } else { r as u8 };
                        if r < k {
                            seen[r] = true;
                        }
                    }
                    if seen.iter().all(|&s| s) {
                        break;
                    }
                }
                ctx.record(&labels)
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(Acc::new(), |mut a, r| {
                a.push(r, limit);
                a
            })
    };

    Ok(MixingReport {
        n,
        d,
        alpha,
        rho,
        exhaustive,
        audited: acc.audited,
        violation_count: acc.violation_count,
        violations: acc.violations,
        tightest: acc.tightest,
        max_discrepancy: acc.max_discrepancy,
        min_slack_geometric: acc.min_slack[0],
        min_slack_sharper: acc.min_slack[1],
        min_slack_remark: acc.min_slack[2],
    })
}
