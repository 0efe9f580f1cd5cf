use std::ops::ControlFlow;
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::enumerate::{stirling2, Assignments};
use super::{check_dim, is_transversal, CellTable, Partition, Ratio};
use crate::complex::{for_each_subset, Cell, SimplicialComplex};
use crate::error::{Error, Result};

/// Default cap on the number of partitions an exhaustive search may visit.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exact,
    LocalSearch,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::LocalSearch => "local-search",
        }
    }
}

/// Result of a Cheeger-constant computation.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionReport {
    /// `n·|F| / ∏|A_i|` at `argmin`, exact
    pub value: Ratio,
    pub f_count: u64,
    pub product: u64,
    pub argmin: Partition,
    pub method: Method,
    /// Partitions enumerated (exact) or restarts (local search)
    pub candidates: u128,
}

impl ExpansionReport {
    pub fn h(&self) -> f64 {
        *self.value.numer() as f64 / *self.value.denom() as f64
    }

    fn new(n: usize, f_count: u64, product: u64, argmin: Partition, method: Method, candidates: u128) -> Self {
        ExpansionReport {
            value: Ratio::new(n as u64 * f_count, product),
            f_count,
            product,
            argmin,
            method,
            candidates,
        }
    }
}

/// `num1/den1 < num2/den2` for positive denominators.
#[inline]
fn less(a: (u64, u64), b: (u64, u64)) -> bool {
    (a.0 as u128) * (b.1 as u128) < (b.0 as u128) * (a.1 as u128)
}

fn product_of(labels: &[u8], k: usize) -> u64 {
    let mut sizes = vec![0u64; k];
    for &l in labels {
        sizes[l as usize] += 1;
    }
    sizes.iter().product()
}

/// Minimizes `num/den` over all unordered partitions of `0..n` into `k`
/// blocks; `score` returning `None` skips a partition. Stops early on a
/// zero numerator. The result is the first minimizer in canonical order.
fn min_over_partitions<S>(n: usize, k: usize, score: S) -> Option<(u64, u64, Vec<u8>)>
where
    S: Fn(&[u8]) -> Option<(u64, u64)> + Sync,
{
    let space = Assignments::partitions(n, k);
    let prefixes = space.prefixes();
    let zero_at = AtomicUsize::new(usize::MAX);
    let chunks: Vec<Option<(u64, u64, Vec<u8>)>> = prefixes
        .par_iter()
        .enumerate()
        .map(|(i, prefix)| {
            let mut best: Option<(u64, u64, Vec<u8>)> = None;
            let _ = space.for_each(prefix, |labels| {
                if zero_at.load(Ordering::Relaxed) < i {
                    return ControlFlow::Break(());
                }
                let Some((num, den)) = score(labels) else {
                    return ControlFlow::Continue(());
                };
                if best.as_ref().is_none_or(|b| less((num, den), (b.0, b.1))) {
                    best = Some((num, den, labels.to_vec()));
                }
                if num == 0 {
                    zero_at.fetch_min(i, Ordering::Relaxed);
                    return ControlFlow::Break(());
                }
                ControlFlow::Continue(())
            });
            best
        })
        .collect();
    let mut best: Option<(u64, u64, Vec<u8>)> = None;
    for c in chunks.into_iter().flatten() {
        if best.as_ref().is_none_or(|b| less((c.0, c.1), (b.0, b.1))) {
            best = Some(c);
        }
    }
    best
}

fn check_size(x: &SimplicialComplex) -> Result<usize> {
    let d = check_dim(x)?;
    if x.n_vertices() < d + 1 {
        return Err(Error::Precondition(format!(
            "need at least {} vertices for {}-block partitions",
            d + 1,
            d + 1
        )));
    }
    Ok(d)
}

fn check_budget(n: usize, k: usize, budget: u128) -> Result<u128> {
    let needed = stirling2(n, k);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(needed)
}

/// `n·|F(A_0,…,A_d)| / ∏|A_i|` for one partition.
pub fn partition_ratio(x: &SimplicialComplex, p: &Partition) -> Result<Ratio> {
    let d = check_dim(x)?;
    if p.blocks().len() != d + 1 || p.n_vertices() != x.n_vertices() {
        return Err(Error::Precondition(format!(
            "expected a partition of {} vertices into {} blocks",
            x.n_vertices(),
            d + 1
        )));
    }
    let f = CellTable::top(x).count_transversal(&p.labels());
    Ok(Ratio::new(x.n_vertices() as u64 * f, p.product()))
}

/// Partition `{σ_0}, …, {σ_{d-1}}, V ∖ σ` for a `(d-1)`-set `σ`.
pub fn witness_partition(n: usize, sigma: &Cell) -> Result<Partition> {
    let mut blocks: Vec<Vec<usize>> = sigma.vertices().iter().map(|&v| vec![v]).collect();
    blocks.push((0..n).filter(|v| !sigma.contains_vertex(*v)).collect());
    Partition::new(n, blocks)
}

/// A partition with `F = 0`, found from a `(d-1)`-set that is missing or
/// has degree zero. Any transversal `d`-cell for it would contain that set
/// as a face.
pub fn zero_witness(x: &SimplicialComplex) -> Result<Option<(Cell, Partition)>> {
    let d = check_size(x)?;
    let degrees = x.degrees(d - 1);
    let mut found: Option<Cell> = None;
    for_each_subset(x.n_vertices(), d, |s| {
        if found.is_none() {
            let c = Cell::new(s.to_vec()).expect("subsets are strictly increasing");
            if x.index_of(&c).is_none_or(|i| degrees[i] == 0) {
                found = Some(c);
            }
        }
    });
    match found {
        Some(c) => {
            let p = witness_partition(x.n_vertices(), &c)?;
            Ok(Some((c, p)))
        }
        None => Ok(None),
    }
}

/// `h(X)` by exhaustive enumeration with the default budget.
pub fn cheeger_exact(x: &SimplicialComplex) -> Result<ExpansionReport> {
    cheeger_exact_with_budget(x, DEFAULT_BUDGET)
}

/// `h(X)` by exhaustive enumeration of unordered partitions into `d + 1`
/// blocks; fails if there are more than `budget` of them.
pub fn cheeger_exact_with_budget(x: &SimplicialComplex, budget: u128) -> Result<ExpansionReport> {
    let d = check_size(x)?;
    let n = x.n_vertices();
    let k = d + 1;
    if let Some((_, p)) = zero_witness(x)? {
        let prod = p.product();
        return Ok(ExpansionReport::new(n, 0, prod, p, Method::Exact, 0));
    }
    let candidates = check_budget(n, k, budget)?;
    let table = CellTable::top(x);
    let (f, prod, labels) = min_over_partitions(n, k, |labels| {
        Some((table.count_transversal(labels), product_of(labels, k)))
    })
    .expect("at least one partition exists");
    Ok(ExpansionReport::new(
        n,
        f,
        prod,
        Partition::from_labels(&labels, k),
        Method::Exact,
        candidates,
    ))
}

struct LocalState<'a> {
    table: &'a CellTable,
    incident: &'a [Vec<usize>],
    labels: Vec<u8>,
    sizes: Vec<u64>,
    f: u64,
    full: u64,
}

impl LocalState<'_> {
    fn transversal_at(&self, v: usize) -> u64 {
        self.incident[v]
            .iter()
            .filter(|&&c| is_transversal(&self.table.verts[c * self.table.width..(c + 1) * self.table.width], &self.labels, self.full))
            .count() as u64
    }

    /// `(F, ∏)` after moving `v` to block `to`.
    fn try_move(&mut self, v: usize, to: u8) -> (u64, u64) {
        let from = self.labels[v];
        let before = self.transversal_at(v);
        self.labels[v] = to;
        let after = self.transversal_at(v);
        self.labels[v] = from;
        let mut prod = 1u64;
        for (b, &s) in self.sizes.iter().enumerate() {
            let s = if b == from as usize {
                s - 1
            } else if b == to as usize {
                s + 1
            } else {
                s
            };
            prod *= s;
        }
        (self.f - before + after, prod)
    }

    fn product(&self) -> u64 {
        self.sizes.iter().product()
    }
}

/// Upper bound on `h(X)` by single-vertex-move descent from `restarts`
/// random partitions. Restart `r` draws from ChaCha8 seeded with `seed` on
/// stream `r`.
pub fn cheeger_local_search(x: &SimplicialComplex, seed: u64, restarts: usize) -> Result<ExpansionReport> {
    let d = check_size(x)?;
    if restarts == 0 {
        return Err(Error::Parameter("local search needs at least one restart".into()));
    }
    let n = x.n_vertices();
    let k = d + 1;
    let table = CellTable::top(x);
    let mut incident = vec![Vec::new(); n];
    for (c, row) in table.rows().enumerate() {
        for &v in row {
            incident[v].push(c);
        }
    }

    let runs: Vec<(u64, u64, Vec<u8>)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(r as u64);
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let mut labels = vec![0u8; n];
            for (i, &v) in order.iter().enumerate() {
                labels[v] = if i < k { i as u8 } else { rng.random_range(0..k) as u8 };
            }
            let mut sizes = vec![0u64; k];
            for &l in &labels {
                sizes[l as usize] += 1;
            }
            let f = table.count_transversal(&labels);
            let mut st = LocalState {
                table: &table,
                incident: &incident,
                labels,
                sizes,
                f,
                full: (1u64 << k) - 1,
            };
            'descent: while st.f > 0 {
                let current = (st.f, st.product());
                for v in 0..n {
                    let from = st.labels[v];
                    if st.sizes[from as usize] == 1 {
                        continue;
                    }
                    for to in 0..k as u8 {
                        if to == from {
                            continue;
                        }
                        let cand = st.try_move(v, to);
                        if less(cand, current) {
                            st.labels[v] = to;
                            st.sizes[from as usize] -= 1;
                            st.sizes[to as usize] += 1;
                            st.f = cand.0;
                            continue 'descent;
                        }
                    }
                }
                break;
            }
            let prod = st.product();
            (st.f, prod, st.labels)
        })
        .collect();

    let mut best = &runs[0];
    for run in &runs[1..] {
        if less((run.0, run.1), (best.0, best.1)) {
            best = run;
        }
    }
    Ok(ExpansionReport::new(
        n,
        best.0,
        best.1,
        Partition::from_labels(&best.2, k),
        Method::LocalSearch,
        restarts as u128,
    ))
}

/// Result of the `h̃` computation.
#[derive(Clone, Debug, PartialEq)]
pub struct TildeReport {
    /// `None` when every partition has `F^∂ = 0`
    pub value: Option<Ratio>,
    pub argmin: Option<Partition>,
    pub f_count: u64,
    pub f_boundary: u64,
    pub candidates: u128,
}

impl TildeReport {
    pub fn h_tilde(&self) -> Option<f64> {
        self.value.map(|r| *r.numer() as f64 / *r.denom() as f64)
    }
}

/// `(d+1)`-subsets of `V` all of whose `d`-subsets are cells: the boundary
/// spheres counted by `F^∂`.
fn sphere_table(x: &SimplicialComplex, d: usize) -> CellTable {
    let mut verts = Vec::new();
    for_each_subset(x.n_vertices(), d + 1, |s| {
        let whole = Cell::new(s.to_vec()).expect("increasing");
        if (0..=d).all(|i| x.contains(&whole.face(i))) {
            verts.extend_from_slice(s);
        }
    });
    CellTable { width: d + 1, verts }
}

pub fn cheeger_tilde(x: &SimplicialComplex) -> Result<TildeReport> {
    cheeger_tilde_with_budget(x, DEFAULT_BUDGET)
}

/// `h̃(X) = min n·|F| / |F^∂|` over partitions with `F^∂ ≠ 0`.
pub fn cheeger_tilde_with_budget(x: &SimplicialComplex, budget: u128) -> Result<TildeReport> {
    let d = check_size(x)?;
    let n = x.n_vertices();
    let k = d + 1;
    let candidates = check_budget(n, k, budget)?;
    let top = CellTable::top(x);
    let spheres = sphere_table(x, d);
    let best = min_over_partitions(n, k, |labels| {
        let fd = spheres.count_transversal(labels);
        (fd > 0).then(|| (top.count_transversal(labels), fd))
    });
    Ok(match best {
        Some((f, fd, labels)) => TildeReport {
            value: Some(Ratio::new(n as u64 * f, fd)),
            argmin: Some(Partition::from_labels(&labels, k)),
            f_count: f,
            f_boundary: fd,
            candidates,
        },
        None => TildeReport {
            value: None,
            argmin: None,
            f_count: 0,
            f_boundary: 0,
            candidates,
        },
    })
}

/// Upper bound on `h(X)` from the link of a `(d-2)`-cell.
#[derive(Clone, Debug, PartialEq)]
pub struct LinkBound {
    pub tau: Cell,
    pub link_vertices: usize,
    pub h_link: Ratio,
    /// `h(lk τ) / (1 - (d-1)/n)`
    pub bound: f64,
    pub h_exact: Option<Ratio>,
}

impl LinkBound {
    /// Whether `h(X) ≤ bound`, when `h(X)` was computed.
    pub fn holds(&self) -> Option<bool> {
        self.h_exact
            .map(|h| *h.numer() as f64 / *h.denom() as f64 <= self.bound + 1e-9)
    }
}

/// Graph Cheeger constant of `lk τ` and the resulting bound on `h(X)`.
/// `h(X)` itself is computed when it fits in `budget`.
pub fn link_cheeger_bound(x: &SimplicialComplex, tau: &Cell, budget: u128) -> Result<LinkBound> {
    let d = x.dim();
    if d < 2 {
        return Err(Error::InvalidDimension {
            dim: d as isize,
            reason: "links of (d-2)-cells need d >= 2".into(),
        });
    }
    if !x.contains(tau) {
        return Err(Error::NotACell(tau.clone()));
    }
    if tau.dim() != d as isize - 2 {
        return Err(Error::Precondition(format!("{tau} is not a (d-2)-cell")));
    }
    let (link, _) = x.link(tau)?;
    if link.n_vertices() < 2 {
        return Err(Error::DegenerateLink(tau.clone()));
    }
    let h_link = cheeger_exact_with_budget(&link, budget)?.value;
    let n = x.n_vertices() as f64;
    let bound = (*h_link.numer() as f64 / *h_link.denom() as f64) / (1.0 - (d as f64 - 1.0) / n);
    let h_exact = if stirling2(x.n_vertices(), d + 1) <= budget {
        Some(cheeger_exact_with_budget(x, budget)?.value)
    } else {
        None
    };
    Ok(LinkBound {
        tau: tau.clone(),
        link_vertices: link.n_vertices(),
        h_link,
        bound,
        h_exact,
    })
}

/// Classical edge expansion `φ(G) = min_{0 < |A| ≤ n/2} |E(A, V∖A)| / |A|`
/// of a graph, by brute force.
pub fn graph_phi(x: &SimplicialComplex) -> Result<Ratio> {
    if x.dim() != 1 {
        return Err(Error::InvalidDimension {
            dim: x.dim() as isize,
            reason: "φ is defined for graphs".into(),
        });
    }
    let n = x.n_vertices();
    if !(2..=24).contains(&n) {
        return Err(Error::Unsupported(format!("brute-force φ on {n} vertices")));
    }
    let edges: Vec<(usize, usize)> = x
        .top_cells()
        .iter()
        .map(|e| (e.vertices()[0], e.vertices()[1]))
        .collect();
    let mut best: Option<(u64, u64)> = None;
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as u64;
        if size as usize > n / 2 {
            continue;
        }
        let cut = edges
            .iter()
            .filter(|&&(a, b)| (mask >> a & 1) != (mask >> b & 1))
            .count() as u64;
        if best.is_none_or(|b| less((cut, size), b)) {
            best = Some((cut, size));
        }
    }
    let (cut, size) = best.expect("n >= 2");
    Ok(Ratio::new(cut, size))
}
