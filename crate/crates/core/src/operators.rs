//! Boundary, coboundary and Laplacian operators on the canonical cochain
//! basis.
//!
//! Every operator is assembled with exact `i64` entries in compressed-row
//! form. Floating point enters only when a matrix is handed to the
//! eigensolver, so identities such as `∂∂ = 0` and `Δ⁺_X̄ = nI - Δ_X` are
//! checked exactly.
//!
//! Sign convention: for a canonically ordered cell `[σ_0, …, σ_j]`, the face
//! obtained by deleting `σ_i` appears with sign `(-1)^i`.

use std::fmt;
use std::io::{self, Write};

use nalgebra::{DMatrix, DVector};

use crate::complex::{sorting_sign, Cell, OrientedCell, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg;

/// Which operator a matrix represents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Role {
    Boundary(usize),
    Coboundary(usize),
    UpperLaplacian,
    LowerLaplacian,
    FullLaplacian,
    Degree,
    LocalizedUpper(Cell),
    Derived,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Boundary(j) => write!(f, "boundary_{j}"),
            Role::Coboundary(j) => write!(f, "coboundary_{j}"),
            Role::UpperLaplacian => write!(f, "upper_laplacian"),
            Role::LowerLaplacian => write!(f, "lower_laplacian"),
            Role::FullLaplacian => write!(f, "full_laplacian"),
            Role::Degree => write!(f, "degree"),
            Role::LocalizedUpper(t) => write!(f, "localized_upper_{t}"),
            Role::Derived => write!(f, "derived"),
        }
    }
}

/// Sparse integer matrix in compressed-row form.
///
/// Column indices within a row are strictly increasing and stored values are
/// nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorMatrix {
    role: Role,
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<i64>,
}

impl OperatorMatrix {
    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(role: Role, rows: usize, cols: usize, mut triplets: Vec<(usize, usize, i64)>) -> Self {
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0usize; rows + 1];
        let mut col_idx = Vec::with_capacity(triplets.len());
        let mut values: Vec<i64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        let mut row_of = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r},{c}) outside {rows}x{cols}");
            if last == Some((r, c)) {
                *values.last_mut().unwrap() += v;
            } else {
                col_idx.push(c);
                values.push(v);
                row_of.push(r);
                last = Some((r, c));
            }
        }
        // drop cancelled entries
        let mut keep_c = Vec::with_capacity(col_idx.len());
        let mut keep_v = Vec::with_capacity(values.len());
        for ((c, v), r) in col_idx.into_iter().zip(values).zip(row_of) {
            if v != 0 {
                keep_c.push(c);
                keep_v.push(v);
                row_ptr[r + 1] += 1;
            }
        }
        for r in 0..rows {
            row_ptr[r + 1] += row_ptr[r];
        }
        OperatorMatrix {
            role,
            rows,
            cols,
            row_ptr,
            col_idx: keep_c,
            values: keep_v,
        }
    }

    pub fn zeros(role: Role, rows: usize, cols: usize) -> Self {
        Self::from_triplets(role, rows, cols, Vec::new())
    }

    pub fn identity(rows: usize) -> Self {
        Self::from_triplets(Role::Derived, rows, rows, (0..rows).map(|i| (i, i, 1)).collect())
    }

    pub fn role(&self) -> &Role {
        &self.role
    }

    pub fn with_role(mut self, role: Role) -> Self {
        self.role = role;
        self
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Nonzero entries of row `r` as `(col, value)`.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.col_idx[span.clone()].iter().copied().zip(self.values[span].iter().copied())
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        match self.col_idx[span.clone()].binary_search(&c) {
            Ok(k) => self.values[span.start + k],
            Err(_) => 0,
        }
    }

    /// Nonzero entries in row-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, i64)> {
        (0..self.rows)
            .flat_map(|r| self.row(r).map(move |(c, v)| (r, c, v)))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let role = match &self.role {
            Role::Boundary(j) => Role::Coboundary(*j),
            Role::Coboundary(j) => Role::Boundary(*j),
            other if self.rows == self.cols => other.clone(),
            _ => Role::Derived,
        };
        Self::from_triplets(
            role,
            self.cols,
            self.rows,
            self.triplets().into_iter().map(|(r, c, v)| (c, r, v)).collect(),
        )
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::Shape {
                expected: self.shape(),
                found: other.shape(),
            });
        }
        Ok(())
    }

    /// Exact product `self · other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape {
                expected: (self.cols, other.cols),
                found: other.shape(),
            });
        }
        let mut trip = Vec::new();
        let mut acc = vec![0i64; other.cols];
        let mut touched = Vec::new();
        for r in 0..self.rows {
            for (k, a) in self.row(r) {
                for (c, b) in other.row(k) {
                    if acc[c] == 0 {
                        touched.push(c);
                    }
                    acc[c] += a * b;
                    if acc[c] == 0 {
                        // may be revisited; keep in touched list
                    }
                }
            }
            touched.sort_unstable();
            touched.dedup();
            for &c in &touched {
                if acc[c] != 0 {
                    trip.push((r, c, acc[c]));
                }
                acc[c] = 0;
            }
            touched.clear();
        }
        Ok(Self::from_triplets(Role::Derived, self.rows, other.cols, trip))
    }

    /// `a·self + b·other`, exact.
    pub fn linear_combination(&self, a: i64, other: &Self, b: i64) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut trip: Vec<_> = self.triplets().into_iter().map(|(r, c, v)| (r, c, a * v)).collect();
        trip.extend(other.triplets().into_iter().map(|(r, c, v)| (r, c, b * v)));
        Ok(Self::from_triplets(Role::Derived, self.rows, self.cols, trip))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.linear_combination(1, other, 1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.linear_combination(1, other, -1)
    }

    pub fn scale(&self, a: i64) -> Self {
        Self::from_triplets(
            Role::Derived,
            self.rows,
            self.cols,
            self.triplets().into_iter().map(|(r, c, v)| (r, c, a * v)).collect(),
        )
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && self.triplets().iter().all(|&(r, c, v)| self.get(c, r) == v)
    }

    pub fn trace(&self) -> i64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.rows, self.cols);
        for (r, c, v) in self.triplets() {
            m[(r, c)] = v as f64;
        }
        m
    }

    pub fn apply(&self, x: &DVector<f64>) -> DVector<f64> {
        assert_eq!(x.len(), self.cols);
        DVector::from_fn(self.rows, |r, _| self.row(r).map(|(c, v)| v as f64 * x[c]).sum())
    }

    /// Exact integer product `self · x`.
    pub fn apply_int(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|r| self.row(r).map(|(c, v)| v * x[c]).sum()).collect()
    }

    /// Coordinate-format dump: one `row col value` line per nonzero, 0-based.
    pub fn write_coordinate<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "% {} {}x{} nnz={}", self.role, self.rows, self.cols, self.nnz())?;
        for (r, c, v) in self.triplets() {
            writeln!(w, "{r} {c} {v}")?;
        }
        Ok(())
    }
}

/// A real `j`-form stored by its values on canonically oriented `j`-cells.
#[derive(Clone, Debug, PartialEq)]
pub struct Form {
    pub dim: isize,
    pub coeffs: DVector<f64>,
}

impl Form {
    pub fn zeros(x: &SimplicialComplex, dim: isize) -> Self {
        Form {
            dim,
            coeffs: DVector::zeros(x.count(dim)),
        }
    }

    /// Value on an arbitrary ordering; skew-symmetric by construction.
    pub fn eval(&self, x: &SimplicialComplex, cell: &OrientedCell) -> Result<f64> {
        let canon = cell.cell();
        let idx = x.index_of(&canon).ok_or_else(|| Error::NotACell(canon.clone()))?;
        Ok(cell.sign() as f64 * self.coeffs[idx])
    }

    /// Inner product `Σ_σ f(σ) g(σ)`.
    pub fn inner(&self, other: &Form) -> f64 {
        self.coeffs.dot(&other.coeffs)
    }
}

fn require_positive_dim(x: &SimplicialComplex) -> Result<usize> {
    match x.dim() {
        0 => Err(Error::InvalidDimension {
            dim: 0,
            reason: "Laplacians on Ω^{d-1} need d >= 1".into(),
        }),
        d => Ok(d),
    }
}

/// `∂_j : Ω^j → Ω^{j-1}` as a `|X^{j-1}| × |X^j|` matrix.
pub fn boundary_matrix(x: &SimplicialComplex, j: usize) -> Result<OperatorMatrix> {
    if j > x.dim() {
        return Err(Error::InvalidDimension {
            dim: j as isize,
            reason: format!("boundary index must lie in 0..={}", x.dim()),
        });
    }
    let rows = x.level(j as isize - 1);
    let cols = x.cells(j);
    let mut trip = Vec::with_capacity(cols.len() * (j + 1));
    for (c, sigma) in cols.iter().enumerate() {
        for i in 0..sigma.len() {
            let face = sigma.face(i);
            let r = rows.get_index_of(&face).expect("complex is downward closed");
            trip.push((r, c, if i % 2 == 0 { 1 } else { -1 }));
        }
    }
    Ok(OperatorMatrix::from_triplets(Role::Boundary(j), rows.len(), cols.len(), trip))
}

/// `∂*_j : Ω^{j-1} → Ω^j`, the transpose of [`boundary_matrix`].
pub fn coboundary_matrix(x: &SimplicialComplex, j: usize) -> Result<OperatorMatrix> {
    Ok(boundary_matrix(x, j)?.transpose())
}

/// `Δ⁺ = ∂_d ∂*_d` on `Ω^{d-1}`.
pub fn upper_laplacian(x: &SimplicialComplex) -> Result<OperatorMatrix> {
    let d = require_positive_dim(x)?;
    let b = boundary_matrix(x, d)?;
    Ok(b.matmul(&b.transpose())?.with_role(Role::UpperLaplacian))
}

/// `Δ⁻ = ∂*_{d-1} ∂_{d-1}` on `Ω^{d-1}`.
pub fn lower_laplacian(x: &SimplicialComplex) -> Result<OperatorMatrix> {
    let d = require_positive_dim(x)?;
    let b = boundary_matrix(x, d - 1)?;
    Ok(b.transpose().matmul(&b)?.with_role(Role::LowerLaplacian))
}

/// `Δ = Δ⁺ + Δ⁻`.
pub fn full_laplacian(x: &SimplicialComplex) -> Result<OperatorMatrix> {
    Ok(upper_laplacian(x)?.add(&lower_laplacian(x)?)?.with_role(Role::FullLaplacian))
}

/// Diagonal matrix of `(d-1)`-cell degrees.
pub fn degree_operator(x: &SimplicialComplex) -> Result<OperatorMatrix> {
    let d = require_positive_dim(x)?;
    let deg = x.degrees(d - 1);
    Ok(OperatorMatrix::from_triplets(
        Role::Degree,
        deg.len(),
        deg.len(),
        deg.iter().enumerate().map(|(i, &k)| (i, i, k as i64)).collect(),
    ))
}

/// `Δ⁺_τ`: the part of `Δ⁺` seen from the `(d-2)`-cell `τ`.
///
/// Each `d`-cell `ρ ⊃ τ` has exactly two facets containing `τ`; `Δ⁺_τ` is
/// the sum over such `ρ` of the rank-one block `b_ρ b_ρᵀ` restricted to those
/// two facets, where `b_ρ` is the column of `∂_d` for `ρ`.
pub fn localized_upper_laplacian(x: &SimplicialComplex, tau: &Cell) -> Result<OperatorMatrix> {
    let d = require_positive_dim(x)?;
    if tau.dim() != d as isize - 2 || !x.contains(tau) {
        return Err(Error::Precondition(format!("{tau} is not a (d-2)-cell of the complex")));
    }
    let rows = x.cells(d - 1);
    let mut trip = Vec::new();
    for rho in x.top_cells() {
        if !tau.is_subset_of(rho) {
            continue;
        }
        let facets: Vec<(usize, i64)> = (0..rho.len())
            .filter(|&i| !tau.contains_vertex(rho.vertices()[i]))
            .map(|i| {
                let idx = rows.get_index_of(&rho.face(i)).expect("downward closed");
                (idx, if i % 2 == 0 { 1 } else { -1 })
            })
            .collect();
        debug_assert_eq!(facets.len(), 2);
        for &(a, sa) in &facets {
            for &(b, sb) in &facets {
                trip.push((a, b, sa * sb));
            }
        }
    }
    Ok(OperatorMatrix::from_triplets(
        Role::LocalizedUpper(tau.clone()),
        rows.len(),
        rows.len(),
        trip,
    ))
}

/// `f_τ(v) = f(vτ)` on the vertices of `lk τ` (in increasing original id).
pub fn link_restriction(x: &SimplicialComplex, f: &Form, tau: &Cell) -> Result<Vec<f64>> {
    let verts = x.cofacet_vertices(tau);
    verts
        .iter()
        .map(|&v| {
            let mut ordered = vec![v];
            ordered.extend_from_slice(tau.vertices());
            f.eval(x, &OrientedCell::new(ordered)?)
        })
        .collect()
}

/// `M` expressed in an orthonormal basis of `Z_{d-1} = ker ∂_{d-1}`:
/// returns `Qᵀ M Q` where the columns of `Q` span the cycles.
pub fn restriction_to_cycles(x: &SimplicialComplex, m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let q = cycle_basis(x)?;
    let n = q.nrows();
    if m.shape() != (n, n) {
        return Err(Error::Shape {
            expected: (n, n),
            found: m.shape(),
        });
    }
    Ok(linalg::symmetrize(q.transpose() * m * &q))
}

/// Orthonormal basis of `Z_{d-1}` as matrix columns.
pub fn cycle_basis(x: &SimplicialComplex) -> Result<DMatrix<f64>> {
    let d = require_positive_dim(x)?;
    Ok(linalg::kernel_basis(&boundary_matrix(x, d - 1)?.to_dense()))
}

/// Orthonormal bases of the three summands of
/// `Ω^{d-1} = B^{d-1} ⊕ H_{d-1} ⊕ B_{d-1}`.
#[derive(Clone, Debug)]
pub struct HodgeDecomposition {
    /// `im ∂*_{d-1}`
    pub exact: DMatrix<f64>,
    /// `ker Δ`
    pub harmonic: DMatrix<f64>,
    /// `im ∂_d`
    pub coexact: DMatrix<f64>,
}

impl HodgeDecomposition {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.exact.ncols(), self.harmonic.ncols(), self.coexact.ncols())
    }
}

pub fn hodge_decomposition(x: &SimplicialComplex) -> Result<HodgeDecomposition> {
    let d = require_positive_dim(x)?;
    let exact = linalg::range_basis(&coboundary_matrix(x, d - 1)?.to_dense());
    let coexact = linalg::range_basis(&boundary_matrix(x, d)?.to_dense());
    let harmonic = linalg::kernel_basis(&full_laplacian(x)?.to_dense());
    Ok(HodgeDecomposition {
        exact,
        harmonic,
        coexact,
    })
}

/// Sign of the oriented cell `[v, σ_0, …]` relative to the canonical order
/// of `σ ∪ {v}`.
pub fn cone_sign(v: usize, sigma: &Cell) -> i64 {
    let mut seq = vec![v];
    seq.extend_from_slice(sigma.vertices());
    sorting_sign(&seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn cell(v: &[usize]) -> Cell {
        Cell::new(v.to_vec()).unwrap()
    }

    #[test]
    fn triangle_boundary_column() {
        let x = SimplicialComplex::from_top_cells(3, vec![vec![0, 1, 2]]).unwrap();
        let b = boundary_matrix(&x, 2).unwrap();
        let e = |v: &[usize]| x.index_of(&cell(v)).unwrap();
        assert_eq!(b.get(e(&[1, 2]), 0), 1);
        assert_eq!(b.get(e(&[0, 2]), 0), -1);
        assert_eq!(b.get(e(&[0, 1]), 0), 1);
    }

    #[test]
    fn path_boundary_orientation() {
        // (∂f)(v) = Σ_{w∼v} f([w,v]); indicator of [0,1] gives f([0,1]) = 1 at
        // v = 1 and f([1,0]) = -1 at v = 0.
        let p = fixtures::path_graph(3);
        let b = boundary_matrix(&p, 1).unwrap();
        let ind = vec![1, 0];
        assert_eq!(b.apply_int(&ind), vec![-1, 1, 0]);
        // brute-force the definition over oriented cells
        for v in 0..3usize {
            let sigma = Cell::vertex(v);
            let mut total = 0i64;
            for w in p.cofacet_vertices(&sigma) {
                let oriented = OrientedCell::new(vec![w, v]).unwrap();
                let canon = oriented.cell();
                let idx = p.index_of(&canon).unwrap();
                total += oriented.sign() * ind[idx];
            }
            assert_eq!(total, b.apply_int(&ind)[v]);
        }
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        for x in [fixtures::mobius(), fixtures::bowtie(), SimplicialComplex::complete(5, 3).unwrap()] {
            for j in 1..=x.dim() {
                let p = boundary_matrix(&x, j - 1).unwrap().matmul(&boundary_matrix(&x, j).unwrap()).unwrap();
                assert!(p.is_zero());
            }
        }
    }

    #[test]
    fn boundary_rejects_dimension() {
        assert!(boundary_matrix(&fixtures::bowtie(), 3).is_err());
    }

    #[test]
    fn graph_upper_laplacian_is_graph_laplacian() {
        let c = fixtures::cycle_graph(5);
        let l = upper_laplacian(&c).unwrap();
        for v in 0..5 {
            assert_eq!(l.get(v, v), 2);
            assert_eq!(l.get(v, (v + 1) % 5), -1);
        }
        assert_eq!(l.nnz(), 15);
    }

    #[test]
    fn graph_lower_laplacian_is_all_ones() {
        let c = fixtures::cycle_graph(4);
        let l = lower_laplacian(&c).unwrap();
        assert_eq!(l.nnz(), 16);
        assert!(l.triplets().iter().all(|t| t.2 == 1));
    }

    #[test]
    fn no_top_cells_means_zero_upper() {
        let x = SimplicialComplex::with_dimension(4, 2, (0..4).flat_map(|a| (a + 1..4).map(move |b| vec![a, b])))
            .unwrap();
        assert!(upper_laplacian(&x).unwrap().is_zero());
        assert!(degree_operator(&x).unwrap().is_zero());
    }

    #[test]
    fn degree_operator_cases() {
        let k = SimplicialComplex::complete(5, 2).unwrap();
        assert_eq!(degree_operator(&k).unwrap(), OperatorMatrix::identity(10).scale(3).with_role(Role::Degree));
        let b = degree_operator(&fixtures::bowtie()).unwrap();
        assert_eq!(b, OperatorMatrix::identity(6).with_role(Role::Degree));
    }

    #[test]
    fn upper_laplacian_diagonal_is_degree() {
        let m = fixtures::mobius();
        let l = upper_laplacian(&m).unwrap();
        let deg = m.degrees(1);
        for (i, k) in deg.iter().enumerate() {
            assert_eq!(l.get(i, i), *k as i64);
        }
    }

    #[test]
    fn complete_complex_restriction_is_scalar() {
        let k = SimplicialComplex::complete(5, 2).unwrap();
        let r = restriction_to_cycles(&k, &upper_laplacian(&k).unwrap().to_dense()).unwrap();
        // dim Z_1 = C(4,2) = 6
        assert_eq!(r.shape(), (6, 6));
        assert!((r - DMatrix::identity(6, 6) * 5.0).norm() < 1e-9);
    }

    #[test]
    fn identity_restricts_to_identity() {
        let m = fixtures::mobius();
        let r = restriction_to_cycles(&m, &DMatrix::identity(10, 10)).unwrap();
        assert_eq!(r.shape(), (6, 6));
        assert!((r - DMatrix::identity(6, 6)).norm() < 1e-9);
        assert!(matches!(
            restriction_to_cycles(&m, &DMatrix::identity(3, 3)),
            Err(Error::Shape { .. })
        ));
    }

    #[test]
    fn graph_cycles_are_sum_zero() {
        let c = fixtures::cycle_graph(6);
        let q = cycle_basis(&c).unwrap();
        assert_eq!(q.ncols(), 5);
        for col in q.column_iter() {
            assert!(col.sum().abs() < 1e-12);
        }
    }

    #[test]
    fn localized_laplacian_on_triangle() {
        let x = SimplicialComplex::from_top_cells(3, vec![vec![0, 1, 2]]).unwrap();
        let l = localized_upper_laplacian(&x, &Cell::vertex(0)).unwrap();
        let e01 = x.index_of(&cell(&[0, 1])).unwrap();
        let e02 = x.index_of(&cell(&[0, 2])).unwrap();
        let e12 = x.index_of(&cell(&[1, 2])).unwrap();
        assert_eq!(l.get(e01, e01), 1);
        assert_eq!(l.get(e02, e02), 1);
        // [0,1] and [0,2] appear with signs +1 and -1 in ∂[0,1,2]
        assert_eq!(l.get(e01, e02), -1);
        assert_eq!(l.get(e12, e12), 0);
        assert!(localized_upper_laplacian(&x, &cell(&[0, 1])).is_err());
    }

    #[test]
    fn coordinate_dump() {
        let x = SimplicialComplex::from_top_cells(3, vec![vec![0, 1, 2]]).unwrap();
        let mut out = Vec::new();
        boundary_matrix(&x, 2).unwrap().write_coordinate(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text, "% boundary_2 3x1 nnz=3\n0 0 1\n1 0 -1\n2 0 1\n");
    }
}
