//! Floating-point depth estimates from sampled candidate points.

use nalgebra::{DMatrix, DVector};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use rayon::prelude::*;

use super::{DepthResult, Placement, Witness};
use crate::complex::SimplicialComplex;

const HULL_TOL: f64 = 1e-12;

/// Whether `x` lies in the convex hull of `pts`, up to a relative tolerance.
///
/// Tries the full point set first, then every subset: by Carathéodory a
/// point of the hull lies in the hull of an affinely independent subset,
/// whose Gram system is nonsingular.
pub fn in_hull(pts: &[&[f64]], x: &[f64]) -> bool {
    let scale = pts
        .iter()
        .flat_map(|p| p.iter())
        .chain(x.iter())
        .fold(1.0f64, |m, v| m.max(v.abs()));
    let tol = HULL_TOL * scale;
    let m = pts.len();
    let full = (1usize << m) - 1;
    std::iter::once(full)
        .chain((1..full).rev())
        .any(|mask| {
            let subset: Vec<&[f64]> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| pts[i]).collect();
            in_subset_hull(&subset, x, tol)
        })
}

fn in_subset_hull(pts: &[&[f64]], x: &[f64], tol: f64) -> bool {
    let dim = x.len();
    let base = pts[0];
    let k = pts.len() - 1;
    let rhs = DVector::from_iterator(dim, x.iter().zip(base).map(|(a, b)| a - b));
    if k == 0 {
        return rhs.norm() <= tol;
    }
    let edges = DMatrix::from_fn(dim, k, |r, c| pts[c + 1][r] - base[r]);
    let gram = edges.transpose() * &edges;
    let Some(chol) = gram.clone().cholesky() else {
        return false;
    };
    if gram.determinant().abs() <= f64::EPSILON * gram.norm().powi(k as i32) {
        return false;
    }
    let lambda = chol.solve(&(edges.transpose() * &rhs));
    let residual = (&edges * &lambda - &rhs).norm();
    residual <= tol * 16.0 && lambda.iter().all(|&l| l >= -1e-12) && lambda.sum() <= 1.0 + 1e-12
}

/// Depth at `point` using the floating-point hull test.
pub fn depth_at_sampled(x: &SimplicialComplex, phi: &Placement, point: &[f64]) -> (usize, Vec<bool>) {
    let containing: Vec<bool> = x
        .top_cells()
        .iter()
        .map(|cell| {
            let pts: Vec<&[f64]> = cell.vertices().iter().map(|&v| phi.coords()[v].as_slice()).collect();
            in_hull(&pts, point)
        })
        .collect();
    (containing.iter().filter(|&&c| c).count(), containing)
}

/// Largest depth over vertex images, cell centroids, and `samples` uniform
/// points of random faces (of dimension at least 1) of uniformly chosen top
/// cells. A lower bound on the true maximum.
pub(crate) fn sampled_max_depth(x: &SimplicialComplex, phi: &Placement, samples: usize, seed: u64) -> DepthResult {
    let top = x.top_cells();
    let dim = phi.dim();
    let mut points: Vec<(Vec<f64>, Witness)> = Vec::new();
    let mut used: Vec<usize> = top.iter().flat_map(|c| c.vertices().iter().copied()).collect();
    used.sort_unstable();
    used.dedup();
    for v in used {
        points.push((phi.coords()[v].clone(), Witness::Vertex(v)));
    }
    for cell in top {
        points.push((centroid(phi, cell.vertices(), &vec![1.0; cell.len()]), Witness::Sample));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let cell = &top[rng.random_range(0..top.len())];
        let size = rng.random_range(2.min(cell.len())..=cell.len());
        let face: Vec<usize> = cell.vertices().choose_multiple(&mut rng, size).copied().collect();
        let weights: Vec<f64> = (0..size).map(|_| rng.sample::<f64, _>(Exp1)).collect();
        points.push((centroid(phi, &face, &weights), Witness::Sample));
    }
    debug_assert!(points.iter().all(|p| p.0.len() == dim));
    let (depth, idx) = points
        .par_iter()
        .enumerate()
        .map(|(i, (p, _))| (depth_at_sampled(x, phi, p).0, i))
        .reduce_with(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
        .expect("at least one candidate");
    let (point, witness) = points.swap_remove(idx);
    let containing = depth_at_sampled(x, phi, &point).1;
    DepthResult::new(point, witness, depth, containing, true)
}

fn centroid(phi: &Placement, verts: &[usize], weights: &[f64]) -> Vec<f64> {
    let total: f64 = weights.iter().sum();
    let mut out = vec![0.0; phi.dim()];
    for (&v, &w) in verts.iter().zip(weights) {
        for (o, c) in out.iter_mut().zip(&phi.coords()[v]) {
            *o += w / total * c;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_membership() {
        let a = [0.0, 0.0];
        let b = [1.0, 0.0];
        let c = [0.0, 1.0];
        let tri = [&a[..], &b[..], &c[..]];
        assert!(in_hull(&tri, &[0.2, 0.2]));
        assert!(in_hull(&tri, &[0.5, 0.5]));
        assert!(in_hull(&tri, &[0.0, 0.0]));
        assert!(!in_hull(&tri, &[0.6, 0.6]));
        assert!(!in_hull(&tri, &[-0.1, 0.2]));
    }

    #[test]
    fn degenerate_hulls_use_subsets() {
        let a = [0.0, 0.0];
        let b = [1.0, 1.0];
        let c = [2.0, 2.0];
        let line = [&a[..], &b[..], &c[..]];
        assert!(in_hull(&line, &[1.5, 1.5]));
        assert!(!in_hull(&line, &[1.5, 1.0]));
        assert!(!in_hull(&line, &[2.5, 2.5]));
        let same = [&a[..], &a[..], &a[..]];
        assert!(in_hull(&same, &[0.0, 0.0]));
        assert!(!in_hull(&same, &[0.0, 1e-3]));
    }

    #[test]
    fn tetrahedron_in_space() {
        let o = [0.0, 0.0, 0.0];
        let x = [1.0, 0.0, 0.0];
        let y = [0.0, 1.0, 0.0];
        let z = [0.0, 0.0, 1.0];
        let t = [&o[..], &x[..], &y[..], &z[..]];
        assert!(in_hull(&t, &[0.1, 0.2, 0.3]));
        assert!(!in_hull(&t, &[0.5, 0.5, 0.5]));
    }
}
