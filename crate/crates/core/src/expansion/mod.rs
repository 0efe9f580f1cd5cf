//! Combinatorial expansion: transversal cell counts, the Cheeger constant
//! `h(X)` and its refinement `h̃(X)`, the test form used to compare `h` with
//! the spectral gap, and the mixing-lemma audit.

mod cheeger;
mod enumerate;
mod mixing;
mod test_form;

use std::fmt;

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

pub use cheeger::{
    cheeger_exact, cheeger_exact_with_budget, cheeger_local_search, cheeger_tilde, cheeger_tilde_with_budget,
    graph_phi, link_cheeger_bound, partition_ratio, witness_partition, zero_witness, ExpansionReport, LinkBound, Method,
    TildeReport, DEFAULT_BUDGET,
};
pub use enumerate::{stirling2, tuple_count};
pub use mixing::{
    mixing_audit, mixing_bounds, AlphaChoice, MixingBounds, MixingOptions, MixingReport, TupleRecord,
    TupleStrategy, EXHAUSTIVE_TUPLE_LIMIT,
};
pub use test_form::{cheeger_test_form, TestForm};

/// Exact ratio `n·|F| / ∏|A_i|`.
pub type Ratio = num_rational::Ratio<u64>;

/// `d + 1` disjoint nonempty blocks covering `0..n`, each sorted, ordered by
/// smallest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

/// `d + 1` disjoint nonempty vertex sets, not necessarily covering.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DisjointTuple {
    sets: Vec<Vec<usize>>,
}

fn normalize(n: usize, sets: Vec<Vec<usize>>) -> Result<Vec<Vec<usize>>> {
    let mut seen = vec![false; n];
    let mut out = Vec::with_capacity(sets.len());
    for mut s in sets {
        if s.is_empty() {
            return Err(Error::Precondition("empty block".into()));
        }
        s.sort_unstable();
        for &v in &s {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if seen[v] {
                return Err(Error::Precondition(format!("vertex {v} lies in two blocks")));
            }
            seen[v] = true;
        }
        out.push(s);
    }
    Ok(out)
}

impl Partition {
    /// Validates and canonicalizes blocks of a partition of `0..n`.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut blocks = normalize(n, blocks)?;
        let covered: usize = blocks.iter().map(Vec::len).sum();
        if covered != n {
            return Err(Error::Precondition(format!("blocks cover {covered} of {n} vertices")));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Partition { blocks })
    }

    /// From a label per vertex with labels `0..k` all used.
    pub fn from_labels(labels: &[u8], k: usize) -> Self {
        let mut blocks = vec![Vec::new(); k];
        for (v, &l) in labels.iter().enumerate() {
            blocks[l as usize].push(v);
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Partition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn n_vertices(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Block index of every vertex.
    pub fn labels(&self) -> Vec<u8> {
        labels_of(self.n_vertices(), &self.blocks)
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn product(&self) -> u64 {
        self.blocks.iter().map(|b| b.len() as u64).product()
    }
}

impl DisjointTuple {
    pub fn new(n: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        Ok(DisjointTuple {
            sets: normalize(n, sets)?,
        })
    }

    pub(crate) fn from_labels(labels: &[u8], k: usize) -> Self {
        let mut sets = vec![Vec::new(); k];
        for (v, &l) in labels.iter().enumerate() {
            if l != enumerate::UNASSIGNED {
                sets[l as usize].push(v);
            }
        }
        DisjointTuple { sets }
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.sets.iter().map(Vec::len).collect()
    }
}

impl From<Partition> for DisjointTuple {
    fn from(p: Partition) -> Self {
        DisjointTuple { sets: p.blocks }
    }
}

fn fmt_sets(f: &mut fmt::Formatter<'_>, sets: &[Vec<usize>]) -> fmt::Result {
    let parts: Vec<String> = sets
        .iter()
        .map(|s| {
            let vs: Vec<String> = s.iter().map(usize::to_string).collect();
            format!("{{{}}}", vs.join(","))
        })
        .collect();
    write!(f, "{}", parts.join(" | "))
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_sets(f, &self.blocks)
    }
}

impl fmt::Display for DisjointTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_sets(f, &self.sets)
    }
}

fn labels_of(n: usize, sets: &[Vec<usize>]) -> Vec<u8> {
    let mut labels = vec![enumerate::UNASSIGNED; n];
    for (i, s) in sets.iter().enumerate() {
        for &v in s {
            labels[v] = i as u8;
        }
    }
    labels
}

/// Top cells flattened into fixed-width rows, for fast transversal counts.
#[derive(Clone, Debug)]
pub(crate) struct CellTable {
    width: usize,
    verts: Vec<usize>,
}

impl CellTable {
    pub(crate) fn top(x: &SimplicialComplex) -> Self {
        Self::from_cells(x.dim() + 1, x.top_cells().iter().map(|c| c.vertices()))
    }

    pub(crate) fn from_cells<'a>(width: usize, cells: impl Iterator<Item = &'a [usize]>) -> Self {
        let mut verts = Vec::new();
        for c in cells {
            debug_assert_eq!(c.len(), width);
            verts.extend_from_slice(c);
        }
        CellTable { width, verts }
    }

    pub(crate) fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.verts.chunks_exact(self.width)
    }

    /// Rows with one vertex in each of the `width` labelled blocks.
    pub(crate) fn count_transversal(&self, labels: &[u8]) -> u64 {
        let full = (1u64 << self.width) - 1;
        self.rows()
            .filter(|row| is_transversal(row, labels, full))
            .count() as u64
    }
}

#[inline]
pub(crate) fn is_transversal(row: &[usize], labels: &[u8], full: u64) -> bool {
    let mut mask = 0u64;
    for &v in row {
        let l = labels[v];
        if l == enumerate::UNASSIGNED {
            return false;
        }
        mask |= 1 << l;
    }
    mask == full
}

fn check_dim(x: &SimplicialComplex) -> Result<usize> {
    match x.dim() {
        0 => Err(Error::InvalidDimension {
            dim: 0,
            reason: "expansion quantities need d >= 1".into(),
        }),
        d if d >= 64 => Err(Error::Unsupported("dimension above 63".into())),
        d => Ok(d),
    }
}

/// `|F(A_0, …, A_d)|`: top cells with exactly one vertex in each set.
pub fn count_f(x: &SimplicialComplex, sets: &[Vec<usize>]) -> Result<u64> {
    let d = check_dim(x)?;
    if sets.len() != d + 1 {
        return Err(Error::Precondition(format!("expected {} sets, got {}", d + 1, sets.len())));
    }
    let sets = normalize(x.n_vertices(), sets.to_vec())?;
    Ok(CellTable::top(x).count_transversal(&labels_of(x.n_vertices(), &sets)))
}
