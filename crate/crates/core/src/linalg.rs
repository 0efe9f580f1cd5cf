//! Dense symmetric eigensolves, numerical rank, orthonormal kernel/range
//! bases, and a Lanczos path for extreme eigenvalues of large operators.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Relative singular-value cutoff for rank decisions.
pub const RANK_TOL: f64 = 1e-10;

/// Absolute cutoff below which an eigenvalue of an integer Laplacian counts
/// as zero.
pub const ZERO_EIGENVALUE_TOL: f64 = 1e-6;

const SYMMETRY_TOL: f64 = 1e-12;

/// Largest `|a_ij - a_ji|`.
pub fn asymmetry(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

fn check_symmetric(m: &DMatrix<f64>) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::Shape {
            expected: (m.nrows(), m.nrows()),
            found: (m.nrows(), m.ncols()),
        });
    }
    let a = asymmetry(m);
    if a > SYMMETRY_TOL {
        return Err(Error::NotSymmetric(a));
    }
    Ok(())
}

/// Eigenvalues (ascending) and matching eigenvector columns.
pub fn symmetric_eigen(m: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    check_symmetric(m)?;
    let n = m.nrows();
    if n == 0 {
        return Ok((Vec::new(), DMatrix::zeros(0, 0)));
    }
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((values, vectors))
}

/// Full spectrum, ascending.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    check_symmetric(m)?;
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    let mut values: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Number of singular values above `RANK_TOL * σ_max`.
pub fn numerical_rank(m: &DMatrix<f64>) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().copied().fold(0.0f64, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > RANK_TOL * max).count()
}

/// Orthonormal basis (as columns) of `ker m`.
///
/// The rank comes from the singular values of `m`; the basis vectors are the
/// eigenvectors of `mᵀm` belonging to its `ncols - rank` smallest
/// eigenvalues.
pub fn kernel_basis(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.ncols();
    let rank = numerical_rank(m);
    if rank == 0 {
        return DMatrix::identity(n, n);
    }
    let gram = m.transpose() * m;
    let (_, vecs) = symmetric_eigen(&symmetrize(gram)).expect("gram matrix is symmetric");
    vecs.columns(0, n - rank).into_owned()
}

/// Orthonormal basis (as columns) of the column space of `m`.
pub fn range_basis(m: &DMatrix<f64>) -> DMatrix<f64> {
    let rows = m.nrows();
    let rank = numerical_rank(m);
    if rank == 0 {
        return DMatrix::zeros(rows, 0);
    }
    let gram = m * m.transpose();
    let (_, vecs) = symmetric_eigen(&symmetrize(gram)).expect("gram matrix is symmetric");
    vecs.columns(rows - rank, rank).into_owned()
}

/// `(m + mᵀ) / 2`; removes rounding asymmetry from Gram products.
pub fn symmetrize(m: DMatrix<f64>) -> DMatrix<f64> {
    let t = m.transpose();
    (m + t) * 0.5
}

/// Extreme eigenvalues `(min, max)` of a symmetric operator restricted to an
/// invariant subspace, by Lanczos with full reorthogonalization.
///
/// `apply` must map the subspace to itself; `project` maps an arbitrary
/// vector into the subspace (used only on the start vector and to suppress
/// drift). The start vector is drawn from a fixed seed.
pub fn lanczos_extremes<A, P>(dim: usize, apply: A, project: P, max_steps: usize, tol: f64) -> Option<(f64, f64)>
where
    A: Fn(&DVector<f64>) -> DVector<f64>,
    P: Fn(&DVector<f64>) -> DVector<f64>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1a2c);
    let start = DVector::from_fn(dim, |_, _| rng.random::<f64>() - 0.5);
    let mut q = project(&start);
    let norm = q.norm();
    if norm == 0.0 {
        return None;
    }
    q /= norm;

    let mut basis: Vec<DVector<f64>> = vec![q];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut result = None;

    for step in 0..max_steps.min(dim) {
        let qj = &basis[step];
        let mut w = project(&apply(qj));
        let alpha = qj.dot(&w);
        alphas.push(alpha);
        // full reorthogonalization, twice
        for _ in 0..2 {
            for b in &basis {
                let c = b.dot(&w);
                w.axpy(-c, b, 1.0);
            }
        }
        let beta = w.norm();

        let k = alphas.len();
        let t = DMatrix::from_fn(k, k, |r, c| {
            if r == c {
                alphas[r]
            } else if r + 1 == c {
                betas[r]
            } else if c + 1 == r {
                betas[c]
            } else {
                0.0
            }
        });
        let eig = SymmetricEigen::new(t);
        let (imin, imax) = argmin_argmax(eig.eigenvalues.as_slice());
        let lo = eig.eigenvalues[imin];
        let hi = eig.eigenvalues[imax];
        result = Some((lo, hi));
        let scale = lo.abs().max(hi.abs()).max(1.0);
        let res_lo = (beta * eig.eigenvectors[(k - 1, imin)]).abs();
        let res_hi = (beta * eig.eigenvectors[(k - 1, imax)]).abs();
        if beta <= tol * scale || (res_lo <= tol * scale && res_hi <= tol * scale) {
            break;
        }
        betas.push(beta);
        basis.push(w / beta);
    }
    result
}

fn argmin_argmax(v: &[f64]) -> (usize, usize) {
    let mut lo = 0;
    let mut hi = 0;
    for (i, x) in v.iter().enumerate() {
        if *x < v[lo] {
            lo = i;
        }
        if *x > v[hi] {
            hi = i;
        }
    }
    (lo, hi)
}
