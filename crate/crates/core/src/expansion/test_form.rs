//! The explicit `(d-1)`-form built from a partition, whose Rayleigh quotient
//! equals the partition's Cheeger ratio.

use nalgebra::DVector;

use super::{check_dim, CellTable, Partition};
use crate::complex::{sorting_sign, SimplicialComplex};
use crate::error::{Error, Result};
use crate::operators::{self, Form};

/// `f(σ) = sgn(π)·|A_{π(d)}|` where `σ = [σ_0, …, σ_{d-1}]` has `σ_i ∈
/// A_{π(i)}` and `π(d)` is the block `σ` misses; `f(σ) = 0` when two
/// vertices of `σ` share a block.
#[derive(Clone, Debug, PartialEq)]
pub struct TestForm {
    pub partition: Partition,
    /// Values on canonically ordered `(d-1)`-cells
    pub coeffs: Vec<i64>,
}

/// Builds the test form of a partition of a complete-skeleton complex.
pub fn cheeger_test_form(x: &SimplicialComplex, p: &Partition) -> Result<TestForm> {
    let d = check_dim(x)?;
    if !x.is_complete_skeleton() {
        return Err(Error::Precondition("the test form requires a complete skeleton".into()));
    }
    if p.blocks().len() != d + 1 || p.n_vertices() != x.n_vertices() {
        return Err(Error::Precondition(format!(
            "expected a partition of {} vertices into {} blocks",
            x.n_vertices(),
            d + 1
        )));
    }
    let labels = p.labels();
    let sizes = p.sizes();
    let coeffs = x
        .cells(d - 1)
        .iter()
        .map(|sigma| {
            let mut pi: Vec<usize> = sigma.vertices().iter().map(|&v| labels[v] as usize).collect();
            let mut seen = vec![false; d + 1];
            for &b in &pi {
                if seen[b] {
                    return 0;
                }
                seen[b] = true;
            }
            let missing = seen.iter().position(|s| !s).expect("d labels among d + 1 blocks");
            pi.push(missing);
            sorting_sign(&pi) * sizes[missing] as i64
        })
        .collect();
    Ok(TestForm {
        partition: p.clone(),
        coeffs,
    })
}

/// Outcome of checking the test form's properties exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct TestFormCheck {
    /// `∂_{d-1} f = 0`
    pub is_cycle: bool,
    pub norm_sq: i64,
    /// `n·∏|A_i|`
    pub expected_norm_sq: i64,
    /// `|∂*_d f| = n` on transversal cells, `0` elsewhere
    pub coboundary_ok: bool,
    pub f_count: u64,
    /// `⟨Δ⁺f, f⟩ / ⟨f, f⟩`, evaluated in floating point
    pub rayleigh: f64,
    /// `n·|F| / ∏|A_i|`
    pub expected_rayleigh: f64,
}

impl TestFormCheck {
    pub fn holds(&self, tol: f64) -> bool {
        self.is_cycle
            && self.norm_sq == self.expected_norm_sq
            && self.coboundary_ok
            && (self.rayleigh - self.expected_rayleigh).abs() <= tol
    }
}

impl TestForm {
    pub fn to_form(&self, x: &SimplicialComplex) -> Form {
        Form {
            dim: x.dim() as isize - 1,
            coeffs: DVector::from_iterator(self.coeffs.len(), self.coeffs.iter().map(|&c| c as f64)),
        }
    }

    pub fn norm_sq(&self) -> i64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Verifies every guaranteed property of the form on `x`.
    pub fn check(&self, x: &SimplicialComplex) -> Result<TestFormCheck> {
        let d = check_dim(x)?;
        let n = x.n_vertices() as i64;
        let labels = self.partition.labels();
        let product = self.partition.product() as i64;

        let boundary = operators::boundary_matrix(x, d - 1)?.apply_int(&self.coeffs);
        let is_cycle = boundary.iter().all(|&v| v == 0);

        let cob = operators::boundary_matrix(x, d)?.transpose().apply_int(&self.coeffs);
        let full = (1u64 << (d + 1)) - 1;
        let mut coboundary_ok = true;
        let mut f_count = 0u64;
        for (sigma, &val) in x.top_cells().iter().zip(&cob) {
            let transversal = super::is_transversal(sigma.vertices(), &labels, full);
            f_count += transversal as u64;
            let want = if transversal { n } else { 0 };
            coboundary_ok &= val.abs() == want;
        }
        debug_assert_eq!(f_count, CellTable::top(x).count_transversal(&labels));

        let f = self.to_form(x);
        let upper = operators::upper_laplacian(x)?;
        let norm_sq = self.norm_sq();
        let rayleigh = upper.apply(&f.coeffs).dot(&f.coeffs) / norm_sq as f64;
        Ok(TestFormCheck {
            is_cycle,
            norm_sq,
            expected_norm_sq: n * product,
            coboundary_ok,
            f_count,
            rayleigh,
            expected_rayleigh: (n as f64) * f_count as f64 / product as f64,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::cheeger_exact;
    use crate::fixtures;
    use crate::spectral;

    #[test]
    fn graph_form_is_cut_vector() {
        let k = SimplicialComplex::complete(5, 1).unwrap();
        let p = Partition::new(5, vec![vec![0, 3], vec![1, 2, 4]]).unwrap();
        let f = cheeger_test_form(&k, &p).unwrap();
        assert_eq!(f.coeffs, vec![3, -2, -2, 3, -2]);
        let c = f.check(&k).unwrap();
        assert!(c.holds(1e-12));
        // n |E(A, Ā)| / (|A||Ā|) with 6 cut edges
        assert!((c.rayleigh - 5.0 * 6.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn mobius_argmin_form() {
        let m = fixtures::mobius();
        let h = cheeger_exact(&m).unwrap();
        let c = cheeger_test_form(&m, &h.argmin).unwrap().check(&m).unwrap();
        assert!(c.holds(1e-9));
        assert!((c.rayleigh - 1.25).abs() < 1e-12);
        assert!(spectral::spectral_gap(&m).unwrap() <= c.rayleigh);
    }

    #[test]
    fn three_dimensional_form() {
        let k = SimplicialComplex::complete(6, 3).unwrap();
        let p = Partition::new(6, vec![vec![0, 1], vec![2], vec![3, 4], vec![5]]).unwrap();
        let c = cheeger_test_form(&k, &p).unwrap().check(&k).unwrap();
        assert!(c.holds(1e-9));
        assert_eq!(c.f_count, 4);
    }

    #[test]
    fn rejects_bad_input() {
        let b = fixtures::bowtie();
        let p = Partition::new(5, vec![vec![0], vec![1], vec![2, 3, 4]]).unwrap();
        assert!(cheeger_test_form(&b, &p).is_err());
        let m = fixtures::mobius();
        let two = Partition::new(5, vec![vec![0], vec![1, 2, 3, 4]]).unwrap();
        assert!(cheeger_test_form(&m, &two).is_err());
    }
}
