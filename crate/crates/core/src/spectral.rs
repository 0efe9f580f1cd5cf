//! Spectra of the upper Laplacian, the spectral gap `λ(X)`, Betti numbers,
//! the density identity and `ρ_α`.

use nalgebra::DVector;
use serde::Serialize;

use crate::complex::{binomial, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{self, ZERO_EIGENVALUE_TOL};
use crate::operators::{self, OperatorMatrix};

/// Above this many `(d-1)`-cells only the extremes of the restricted
/// spectrum are computed, iteratively.
pub const DENSE_LIMIT: usize = 5_000;

/// Tolerance for agreement between the spectral-gap routes.
pub const ROUTE_TOL: f64 = 1e-8;

/// Eigenvalues of a symmetric integer operator, ascending.
pub fn symmetric_spectrum(m: &OperatorMatrix) -> Result<Vec<f64>> {
    let (r, c) = m.shape();
    if r != c {
        return Err(Error::Shape {
            expected: (r, r),
            found: (r, c),
        });
    }
    if !m.is_symmetric() {
        let worst = m
            .triplets()
            .iter()
            .map(|&(i, j, v)| (v - m.get(j, i)).abs())
            .max()
            .unwrap_or(0);
        return Err(Error::NotSymmetric(worst as f64));
    }
    linalg::symmetric_eigenvalues(&m.to_dense())
}

fn top_dim(x: &SimplicialComplex) -> Result<usize> {
    match x.dim() {
        0 => Err(Error::InvalidDimension {
            dim: 0,
            reason: "spectral quantities need d >= 1".into(),
        }),
        d => Ok(d),
    }
}

fn require_complete_skeleton(x: &SimplicialComplex, what: &str) -> Result<()> {
    if x.is_complete_skeleton() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} requires a complete (d-1)-skeleton")))
    }
}

/// `rank ∂_j` for `j = 0..=d`.
pub fn boundary_ranks(x: &SimplicialComplex) -> Result<Vec<usize>> {
    (0..=x.dim())
        .map(|j| Ok(linalg::numerical_rank(&operators::boundary_matrix(x, j)?.to_dense())))
        .collect()
}

/// Reduced Betti numbers `β_{-1}, β_0, …, β_d` (index `j + 1`).
pub fn betti_numbers(x: &SimplicialComplex) -> Result<Vec<usize>> {
    let ranks = boundary_ranks(x)?;
    let d = x.dim();
    let rank = |j: isize| -> usize {
        if j < 0 || j as usize > d {
            0
        } else {
            ranks[j as usize]
        }
    };
    Ok((-1..=d as isize)
        .map(|j| x.count(j) - rank(j) - rank(j + 1))
        .collect())
}

/// `Σ_j (-1)^j |X^j|` over `j = -1..=d`.
pub fn euler_characteristic(x: &SimplicialComplex) -> i64 {
    (-1..=x.dim() as isize)
        .map(|j| if j.rem_euclid(2) == 0 { 1 } else { -1 } * x.count(j) as i64)
        .sum()
}

/// `Spec Δ⁺|_{Z_{d-1}}`, ascending: the sorted `Spec Δ⁺` with its first
/// `rank ∂_{d-1} = dim B^{d-1}` entries dropped.
pub fn restricted_spectrum(x: &SimplicialComplex) -> Result<Vec<f64>> {
    let d = top_dim(x)?;
    let spectrum = symmetric_spectrum(&operators::upper_laplacian(x)?)?;
    let r = linalg::numerical_rank(&operators::boundary_matrix(x, d - 1)?.to_dense());
    Ok(spectrum[r..].to_vec())
}

/// The spectral gap computed three ways.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapRoutes {
    /// min eigenvalue of `Δ⁺` in an orthonormal basis of `Z_{d-1}`
    pub restriction: f64,
    /// `λ_r` in the sorted `Spec Δ⁺`
    pub indexed: f64,
    /// `r = (|X^{d-1}| - β_{d-1}) - (|X^d| - β_d)`
    pub gap_index: usize,
    /// `min Spec Δ`, complete skeletons only
    pub full_laplacian: Option<f64>,
    /// `C(n-1, d-1)`, complete skeletons only
    pub complete_index: Option<usize>,
}

impl GapRoutes {
    /// Largest pairwise disagreement among the available routes.
    pub fn spread(&self) -> f64 {
        let mut vals = vec![self.restriction, self.indexed];
        vals.extend(self.full_laplacian);
        let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        hi - lo
    }

    pub fn value(&self) -> f64 {
        self.indexed
    }
}

/// Evaluates every applicable route without checking agreement.
pub fn spectral_gap_routes(x: &SimplicialComplex) -> Result<GapRoutes> {
    let d = top_dim(x)?;
    let upper = operators::upper_laplacian(x)?;
    let spectrum = symmetric_spectrum(&upper)?;

    let restricted = operators::restriction_to_cycles(x, &upper.to_dense())?;
    let restriction = linalg::symmetric_eigenvalues(&restricted)?
        .first()
        .copied()
        .ok_or_else(|| Error::Precondition("Z_{d-1} is trivial".into()))?;

    let betti = betti_numbers(x)?;
    let beta = |j: usize| betti[j + 1];
    let gap_index = (x.count(d as isize - 1) - beta(d - 1)) - (x.count(d as isize) - beta(d));
    let indexed = spectrum[gap_index];

    let (full_laplacian, complete_index) = if x.is_complete_skeleton() {
        let full = symmetric_spectrum(&operators::full_laplacian(x)?)?;
        (Some(full[0]), Some(binomial(x.n_vertices() - 1, d - 1) as usize))
    } else {
        (None, None)
    };
    Ok(GapRoutes {
        restriction,
        indexed,
        gap_index,
        full_laplacian,
        complete_index,
    })
}

/// `λ(X)`, with all applicable routes required to agree to [`ROUTE_TOL`].
pub fn spectral_gap(x: &SimplicialComplex) -> Result<f64> {
    let routes = spectral_gap_routes(x)?;
    if routes.spread() > ROUTE_TOL {
        return Err(Error::RouteDisagreement(format!("{routes:?}")));
    }
    if let Some(ci) = routes.complete_index {
        if ci != routes.gap_index {
            return Err(Error::RouteDisagreement(format!(
                "gap index {} but C(n-1,d-1) = {ci}",
                routes.gap_index
            )));
        }
    }
    Ok(routes.value())
}

/// `(min, max)` of `Spec Δ⁺|_{Z_{d-1}}`.
///
/// Dense up to `dense_limit` cells of dimension `d-1`. Beyond that, Lanczos
/// on `Z_{d-1}` using `P_Z v = v - Δ⁻v/n`, which needs a complete skeleton.
pub fn restricted_extremes(x: &SimplicialComplex, dense_limit: usize) -> Result<(f64, f64)> {
    let d = top_dim(x)?;
    let rows = x.count(d as isize - 1);
    if rows <= dense_limit {
        let spec = restricted_spectrum(x)?;
        return match (spec.first(), spec.last()) {
            (Some(&lo), Some(&hi)) => Ok((lo, hi)),
            _ => Err(Error::Precondition("Z_{d-1} is trivial".into())),
        };
    }
    require_complete_skeleton(x, "the iterative eigensolver")?;
    let upper = operators::upper_laplacian(x)?;
    let b = operators::boundary_matrix(x, d - 1)?;
    let bt = b.transpose();
    let n = x.n_vertices() as f64;
    let project = |v: &DVector<f64>| v - bt.apply(&b.apply(v)) / n;
    let dim_z = binomial(x.n_vertices() - 1, d) as usize;
    linalg::lanczos_extremes(rows, |v| upper.apply(v), project, dim_z.min(400), 1e-10)
        .ok_or_else(|| Error::Precondition("Z_{d-1} is trivial".into()))
}

/// `ρ_α = max |α - λ|` over `Spec Δ⁺|_{Z_{d-1}}`, given its extremes.
pub fn rho_from_extremes(alpha: f64, (lo, hi): (f64, f64)) -> f64 {
    (alpha - lo).abs().max((alpha - hi).abs())
}

/// `ρ_α = ‖(αI - Δ⁺)|_{Z_{d-1}}‖`.
pub fn rho_alpha(x: &SimplicialComplex, alpha: f64) -> Result<f64> {
    require_complete_skeleton(x, "ρ_α")?;
    Ok(rho_from_extremes(alpha, restricted_extremes(x, DENSE_LIMIT)?))
}

/// `δ = λ_avg/n = k/(n-d)` for complete skeletons.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityIdentity {
    pub delta: f64,
    pub k_avg: f64,
    pub lambda_avg: f64,
    pub max_abs_residual: f64,
}

/// Computes both sides of the density identity. `λ_avg` is the mean of the
/// computed restricted spectrum.
pub fn density_identity(x: &SimplicialComplex) -> Result<DensityIdentity> {
    require_complete_skeleton(x, "the density identity")?;
    let spec = restricted_spectrum(x)?;
    Ok(density_from_lambda_avg(x, spec.iter().sum::<f64>() / spec.len() as f64))
}

fn density_from_lambda_avg(x: &SimplicialComplex, lambda_avg: f64) -> DensityIdentity {
    let d = x.dim();
    let n = x.n_vertices();
    let top = x.count(d as isize) as f64;
    let delta = top / binomial(n, d + 1) as f64;
    let k_avg = (d + 1) as f64 * top / binomial(n, d) as f64;
    let residual = (delta - lambda_avg / n as f64)
        .abs()
        .max((delta - k_avg / (n - d) as f64).abs());
    DensityIdentity {
        delta,
        k_avg,
        lambda_avg,
        max_abs_residual: residual,
    }
}

/// Average `(d-1)`-cell degree.
pub fn average_degree(x: &SimplicialComplex) -> f64 {
    let d = x.dim();
    (d + 1) as f64 * x.count(d as isize) as f64 / x.count(d as isize - 1).max(1) as f64
}

/// Eigendata and derived quantities for one complex.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralReport {
    pub n: usize,
    pub d: usize,
    /// `Spec Δ⁺` ascending; absent on the iterative path
    pub spectrum: Option<Vec<f64>>,
    pub restricted_min: f64,
    pub restricted_max: f64,
    pub spectral_gap: f64,
    pub routes: Option<GapRoutes>,
    pub gap_index: Option<usize>,
    pub betti: Option<Vec<usize>>,
    pub zero_multiplicity: Option<usize>,
    pub min_full_laplacian: Option<f64>,
    pub lambda_avg: f64,
    pub trace: i64,
    pub density: Option<DensityIdentity>,
    /// `(α, ρ_α)` pairs
    pub rho: Vec<(f64, f64)>,
    pub iterative: bool,
}

/// Full spectral analysis; `alphas` are only evaluated for complete
/// skeletons.
pub fn spectral_report(x: &SimplicialComplex, alphas: &[f64]) -> Result<SpectralReport> {
    spectral_report_with_limit(x, alphas, DENSE_LIMIT)
}

pub fn spectral_report_with_limit(x: &SimplicialComplex, alphas: &[f64], dense_limit: usize) -> Result<SpectralReport> {
    let d = top_dim(x)?;
    let upper = operators::upper_laplacian(x)?;
    let trace = upper.trace();
    let complete = x.is_complete_skeleton();
    let rows = x.count(d as isize - 1);

    let mut report = SpectralReport {
        n: x.n_vertices(),
        d,
        spectrum: None,
        restricted_min: 0.0,
        restricted_max: 0.0,
        spectral_gap: 0.0,
        routes: None,
        gap_index: None,
        betti: None,
        zero_multiplicity: None,
        min_full_laplacian: None,
        lambda_avg: 0.0,
        trace,
        density: None,
        rho: Vec::new(),
        iterative: rows > dense_limit,
    };

    if report.iterative {
        let (lo, hi) = restricted_extremes(x, dense_limit)?;
        report.restricted_min = lo;
        report.restricted_max = hi;
        report.spectral_gap = lo;
        // Δ⁺ vanishes on B^{d-1}, so tr Δ⁺ is the trace on Z_{d-1}
        report.lambda_avg = trace as f64 / binomial(x.n_vertices() - 1, d) as f64;
    } else {
        let spectrum = symmetric_spectrum(&upper)?;
        let routes = spectral_gap_routes(x)?;
        if routes.spread() > ROUTE_TOL {
            return Err(Error::RouteDisagreement(format!("{routes:?}")));
        }
        let restricted = &spectrum[routes.gap_index..];
        report.restricted_min = restricted.first().copied().unwrap_or(0.0);
        report.restricted_max = restricted.last().copied().unwrap_or(0.0);
        report.lambda_avg = restricted.iter().sum::<f64>() / restricted.len().max(1) as f64;
        report.spectral_gap = routes.value();
        report.gap_index = Some(routes.gap_index);
        report.zero_multiplicity = Some(spectrum.iter().filter(|&&v| v.abs() < ZERO_EIGENVALUE_TOL).count());
        report.min_full_laplacian = Some(symmetric_spectrum(&operators::full_laplacian(x)?)?[0]);
        report.betti = Some(betti_numbers(x)?);
        report.routes = Some(routes);
        report.spectrum = Some(spectrum);
    }
    if complete {
        report.density = Some(density_from_lambda_avg(x, report.lambda_avg));
        let extremes = (report.restricted_min, report.restricted_max);
        report.rho = alphas.iter().map(|&a| (a, rho_from_extremes(a, extremes))).collect();
    }
    Ok(report)
}
