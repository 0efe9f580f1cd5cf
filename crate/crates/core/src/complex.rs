//! Finite abstract simplicial complexes over the vertex set `0..n`.
//!
//! Cells are stored canonically as strictly increasing vertex lists, one
//! [`IndexSet`] per dimension. The insertion order of each set is
//! lexicographic, so the position of a cell in its level doubles as its
//! column index in every operator matrix.

use std::collections::BTreeSet;
use std::fmt;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Unoriented cell: a strictly increasing list of vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cell(Vec<usize>);

impl Cell {
    /// Builds a cell from vertices in any order. Repeated vertices are rejected.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        let original = vertices.clone();
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedCell(original));
        }
        Ok(Cell(vertices))
    }

    pub fn empty() -> Self {
        Cell(Vec::new())
    }

    pub fn vertex(v: usize) -> Self {
        Cell(vec![v])
    }

    /// Caller guarantees `vertices` is strictly increasing.
    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Cell(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|σ| - 1`; the empty cell has dimension -1.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Cell) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }

    /// The face obtained by deleting the vertex at position `i`.
    pub fn face(&self, i: usize) -> Cell {
        let mut v = self.0.clone();
        v.remove(i);
        Cell(v)
    }

    /// `σ ∪ {v}` for `v ∉ σ`.
    pub fn with_vertex(&self, v: usize) -> Cell {
        let mut out = self.0.clone();
        let pos = out.binary_search(&v).unwrap_or_else(|p| p);
        out.insert(pos, v);
        Cell(out)
    }

    pub fn max_vertex(&self) -> Option<usize> {
        self.0.last().copied()
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Sign of the permutation that sorts `seq` (distinct entries), as ±1.
pub fn sorting_sign(seq: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A cell together with an ordering of its vertices.
///
/// Two orderings are the same oriented cell iff they differ by an even
/// permutation; [`OrientedCell::sign`] is +1 when the ordering agrees with
/// the canonical increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedCell {
    vertices: Vec<usize>,
}

impl OrientedCell {
    pub fn new(vertices: Vec<usize>) -> Result<Self> {
        Cell::new(vertices.clone())?;
        Ok(OrientedCell { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn sign(&self) -> i64 {
        sorting_sign(&self.vertices)
    }

    pub fn cell(&self) -> Cell {
        Cell::from_sorted({
            let mut v = self.vertices.clone();
            v.sort_unstable();
            v
        })
    }

    /// The same cell with the opposite orientation.
    pub fn flip(&self) -> OrientedCell {
        let mut v = self.vertices.clone();
        if v.len() >= 2 {
            v.swap(0, 1);
        }
        OrientedCell { vertices: v }
    }

    /// Whether `self` and `other` are the same oriented cell.
    pub fn same_orientation(&self, other: &OrientedCell) -> bool {
        self.cell() == other.cell() && self.sign() == other.sign()
    }
}

/// `C(n, k)`; saturates at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Finite abstract simplicial complex on vertices `0..n` with declared
/// dimension `d`.
///
/// Level `j` (for `-1 ≤ j ≤ d`) holds the `j`-cells in lexicographic order.
/// The declared dimension is kept even when the top level is empty, so a
/// complement or a sparse random complex keeps the same `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    dim: usize,
    levels: Vec<IndexSet<Cell>>,
}

impl SimplicialComplex {
    /// Smallest downward-closed complex containing `top_cells`, all `n`
    /// vertices and `∅`. The dimension is the largest listed cell dimension
    /// (0 if nothing above a vertex is listed).
    pub fn from_top_cells<I>(n: usize, top_cells: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let cells = Self::validate(n, top_cells)?;
        let dim = cells
            .iter()
            .map(|c| c.len().saturating_sub(1))
            .max()
            .unwrap_or(0);
        Ok(Self::closure(n, dim, cells))
    }

    /// Like [`from_top_cells`](Self::from_top_cells) but with an explicit
    /// dimension, which may exceed every listed cell.
    pub fn with_dimension<I>(n: usize, dim: usize, cells: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let cells = Self::validate(n, cells)?;
        if let Some(c) = cells.iter().find(|c| c.len() > dim + 1) {
            return Err(Error::InvalidDimension {
                dim: c.dim(),
                reason: format!("cell {c} exceeds declared dimension {dim}"),
            });
        }
        Ok(Self::closure(n, dim, cells))
    }

    /// `K_n^d`: every subset of size at most `d + 1`.
    pub fn complete(n: usize, d: usize) -> Result<Self> {
        if d == 0 || d >= n {
            return Err(Error::InvalidDimension {
                dim: d as isize,
                reason: format!("complete complex needs 1 <= d < n (n = {n})"),
            });
        }
        let mut levels = vec![IndexSet::new(); d + 2];
        levels[0].insert(Cell::empty());
        for j in 0..=d {
            for_each_subset(n, j + 1, |s| {
                levels[j + 1].insert(Cell::from_sorted(s.to_vec()));
            });
        }
        Ok(SimplicialComplex { n, dim: d, levels })
    }

    fn validate<I>(n: usize, cells: I) -> Result<Vec<Cell>>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        cells
            .into_iter()
            .map(|raw| {
                if let Some(&v) = raw.iter().find(|&&v| v >= n) {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                Cell::new(raw)
            })
            .collect()
    }

    fn closure(n: usize, dim: usize, cells: Vec<Cell>) -> Self {
        let mut sets: Vec<BTreeSet<Cell>> = vec![BTreeSet::new(); dim + 2];
        sets[0].insert(Cell::empty());
        for v in 0..n {
            sets[1].insert(Cell::vertex(v));
        }
        for cell in cells {
            let k = cell.len();
            if k <= 1 || sets[k].contains(&cell) {
                continue;
            }
            // every nonempty subset, by bitmask
            let vs = cell.vertices();
            for mask in 1u64..(1u64 << k) {
                let sub: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| vs[i]).collect();
                sets[sub.len()].insert(Cell::from_sorted(sub));
            }
        }
        let levels = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        SimplicialComplex { n, dim, levels }
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    /// Declared dimension `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The `j`-cells, `-1 ≤ j ≤ d`; out-of-range levels are empty.
    pub fn level(&self, j: isize) -> &IndexSet<Cell> {
        static EMPTY: std::sync::OnceLock<IndexSet<Cell>> = std::sync::OnceLock::new();
        if j < -1 || j > self.dim as isize {
            return EMPTY.get_or_init(IndexSet::new);
        }
        &self.levels[(j + 1) as usize]
    }

    /// The `j`-cells for `j ≥ 0`.
    pub fn cells(&self, j: usize) -> &IndexSet<Cell> {
        self.level(j as isize)
    }

    pub fn count(&self, j: isize) -> usize {
        self.level(j).len()
    }

    /// The top-dimensional cells `X^d`.
    pub fn top_cells(&self) -> &IndexSet<Cell> {
        self.cells(self.dim)
    }

    pub fn contains(&self, cell: &Cell) -> bool {
        self.level(cell.dim()).contains(cell)
    }

    /// Basis index of `cell` within its level.
    pub fn index_of(&self, cell: &Cell) -> Option<usize> {
        self.level(cell.dim()).get_index_of(cell)
    }

    fn require(&self, cell: &Cell) -> Result<()> {
        if self.contains(cell) {
            Ok(())
        } else {
            Err(Error::NotACell(cell.clone()))
        }
    }

    /// Number of `(dim σ + 1)`-cells containing `σ`.
    pub fn degree(&self, sigma: &Cell) -> Result<usize> {
        self.require(sigma)?;
        Ok(self.cofacet_vertices(sigma).len())
    }

    /// Vertices `v` with `v ∼ σ`, i.e. `v ∉ σ` and `σ ∪ {v} ∈ X`.
    pub fn cofacet_vertices(&self, sigma: &Cell) -> Vec<usize> {
        let up = self.level(sigma.dim() + 1);
        if up.is_empty() {
            return Vec::new();
        }
        (0..self.n)
            .filter(|&v| !sigma.contains_vertex(v) && up.contains(&sigma.with_vertex(v)))
            .collect()
    }

    /// Degrees of all `j`-cells, in basis order.
    pub fn degrees(&self, j: usize) -> Vec<usize> {
        let mut deg = vec![0usize; self.count(j as isize)];
        let level = self.cells(j);
        for up in self.level(j as isize + 1) {
            for i in 0..up.len() {
                let face = up.face(i);
                deg[level.get_index_of(&face).expect("complex is downward closed")] += 1;
            }
        }
        deg
    }

    /// True iff every possible `j`-cell with `j < d` is present.
    pub fn is_complete_skeleton(&self) -> bool {
        (0..self.dim).all(|j| self.count(j as isize) as u64 == binomial(self.n, j + 1))
    }

    /// `lk τ = {σ : σ ∩ τ = ∅, σ ∪ τ ∈ X}` on relabeled vertices.
    ///
    /// Returns the link together with the map from link vertex index to the
    /// original vertex id (increasing).
    pub fn link(&self, tau: &Cell) -> Result<(SimplicialComplex, Vec<usize>)> {
        self.require(tau)?;
        let verts = self.cofacet_vertices(tau);
        let relabel = |v: usize| verts.binary_search(&v).expect("link vertex");
        let mut cells = Vec::new();
        for j in tau.dim() + 2..=self.dim as isize {
            for c in self.level(j) {
                if tau.is_subset_of(c) {
                    let rest: Vec<usize> = c
                        .vertices()
                        .iter()
                        .filter(|v| !tau.contains_vertex(**v))
                        .map(|&v| relabel(v))
                        .collect();
                    cells.push(rest);
                }
            }
        }
        let link_dim = (self.dim as isize - tau.dim() - 1).max(0) as usize;
        let link = SimplicialComplex::with_dimension(verts.len(), link_dim, cells)?;
        Ok((link, verts))
    }

    /// Complement complex: same complete `(d-1)`-skeleton, top cells are the
    /// `(d+1)`-subsets that are not cells of `self`.
    pub fn complement(&self) -> Result<SimplicialComplex> {
        if !self.is_complete_skeleton() {
            return Err(Error::Precondition(
                "complement requires a complete skeleton".into(),
            ));
        }
        let mut out = self.clone();
        let d = self.dim;
        let mut top = IndexSet::new();
        for_each_subset(self.n, d + 1, |s| {
            let c = Cell::from_sorted(s.to_vec());
            if !self.levels[d + 1].contains(&c) {
                top.insert(c);
            }
        });
        out.levels[d + 1] = top;
        Ok(out)
    }

    /// The `(d-1)`-skeleton plus only the listed top cells; used by
    /// generators that already hold a complete skeleton.
    pub(crate) fn from_levels(n: usize, dim: usize, levels: Vec<IndexSet<Cell>>) -> Self {
        debug_assert_eq!(levels.len(), dim + 2);
        SimplicialComplex { n, dim, levels }
    }

    /// Top cells as plain vertex lists, for serialization.
    pub fn top_cell_lists(&self) -> Vec<Vec<usize>> {
        self.top_cells().iter().map(|c| c.vertices().to_vec()).collect()
    }

    /// Maximal cells (not a proper face of another cell), lexicographic by
    /// dimension then vertices.
    pub fn maximal_cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for j in 0..=self.dim {
            for c in self.cells(j) {
                if j == self.dim || self.cofacet_vertices(c).is_empty() {
                    out.push(c.clone());
                }
            }
        }
        out
    }
}
