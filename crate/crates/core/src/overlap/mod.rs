//! Geometric overlap of straight-line placements.
//!
//! A placement sends each vertex to a point of `ℝ^d`. The depth of a point
//! is the number of top cells whose closed image hull contains it; the
//! overlap of a placement is the largest depth as a fraction of `|X^d|`.

mod exact;
mod sample;

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use sample::{depth_at_sampled, in_hull};

use crate::complex::{binomial, SimplicialComplex};
use crate::error::{Error, Result};
use crate::spectral;

/// Candidate points evaluated per placement when `d ≥ 3`.
pub const DEFAULT_SAMPLES: usize = 2_000;

/// Vertex images in `ℝ^dim`, indexed by vertex.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Placement {
    dim: usize,
    coords: Vec<Vec<f64>>,
}

impl Placement {
    pub fn new(dim: usize, coords: Vec<Vec<f64>>) -> Result<Self> {
        for (v, c) in coords.iter().enumerate() {
            if c.len() != dim {
                return Err(Error::Parameter(format!(
                    "vertex {v} has {} coordinates, expected {dim}",
                    c.len()
                )));
            }
            if c.iter().any(|x| !x.is_finite()) {
                return Err(Error::Parameter(format!("vertex {v} has a non-finite coordinate")));
            }
        }
        Ok(Placement { dim, coords })
    }

    /// Independent uniform coordinates in `[0, 1)`.
    pub fn random<R: Rng>(n: usize, dim: usize, rng: &mut R) -> Self {
        let coords = (0..n).map(|_| (0..dim).map(|_| rng.random::<f64>()).collect()).collect();
        Placement { dim, coords }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_vertices(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Vec<f64>] {
        &self.coords
    }

    /// Applies `v ↦ A v + b`.
    pub fn map_affine(&self, a: &[Vec<f64>], b: &[f64]) -> Placement {
        let coords = self
            .coords
            .iter()
            .map(|c| {
                (0..self.dim)
                    .map(|r| a[r].iter().zip(c).map(|(x, y)| x * y).sum::<f64>() + b[r])
                    .collect()
            })
            .collect();
        Placement { dim: self.dim, coords }
    }

    /// Reads lines `id x_1 … x_d`. Blank lines and `#` comments are skipped;
    /// every id in `0..n` must appear exactly once.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows: Vec<(usize, Vec<f64>, usize)> = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line_no = ln + 1;
            let content = line.split('#').next().unwrap_or("");
            let mut tokens = tokens_with_columns(content);
            let Some((col, id_tok)) = tokens.next() else {
                continue;
            };
            let id: usize = id_tok.parse().map_err(|_| Error::Parse {
                line: line_no,
                column: col,
                message: format!("expected a vertex id, found `{id_tok}`"),
            })?;
            let mut coords = Vec::new();
            for (col, tok) in tokens {
                let v: f64 = tok.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    column: col,
                    message: format!("expected a number, found `{tok}`"),
                })?;
                if !v.is_finite() {
                    return Err(Error::Parse {
                        line: line_no,
                        column: col,
                        message: "coordinates must be finite".into(),
                    });
                }
                coords.push(v);
            }
            if let Some(first) = rows.first() {
                if first.1.len() != coords.len() {
                    return Err(Error::Parse {
                        line: line_no,
                        column: 1,
                        message: format!("expected {} coordinates, found {}", first.1.len(), coords.len()),
                    });
                }
            } else if coords.is_empty() {
                return Err(Error::Parse {
                    line: line_no,
                    column: line.len() + 1,
                    message: "expected at least one coordinate".into(),
                });
            }
            rows.push((id, coords, line_no));
        }
        let n = rows.len();
        let dim = rows.first().map_or(0, |r| r.1.len());
        let mut coords: Vec<Option<Vec<f64>>> = vec![None; n];
        for (id, c, line_no) in rows {
            let slot = coords.get_mut(id).ok_or(Error::Parse {
                line: line_no,
                column: 1,
                message: format!("vertex id {id} out of range for {n} vertices"),
            })?;
            if slot.is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    column: 1,
                    message: format!("vertex {id} listed twice"),
                });
            }
            *slot = Some(c);
        }
        Placement::new(dim, coords.into_iter().map(|c| c.expect("ids fill 0..n")).collect())
    }

    /// Writes one line per vertex; values round-trip exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, c) in self.coords.iter().enumerate() {
            let _ = write!(out, "{v}");
            for x in c {
                let _ = write!(out, " {x:?}");
            }
            out.push('\n');
        }
        out
    }

    fn check_for(&self, x: &SimplicialComplex) -> Result<()> {
        if x.dim() == 0 || self.dim != x.dim() {
            return Err(Error::InvalidDimension {
                dim: self.dim as isize,
                reason: format!("placement must be into ℝ^{} for a {}-complex", x.dim(), x.dim()),
            });
        }
        if self.n_vertices() != x.n_vertices() {
            return Err(Error::Precondition(format!(
                "placement has {} vertices, complex has {}",
                self.n_vertices(),
                x.n_vertices()
            )));
        }
        if x.top_cells().is_empty() {
            return Err(Error::Precondition("the complex has no top cells".into()));
        }
        Ok(())
    }
}

/// 1-based columns of whitespace-separated tokens.
fn tokens_with_columns(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace().map(move |t| {
        let offset = t.as_ptr() as usize - line.as_ptr() as usize;
        (line[..offset].chars().count() + 1, t)
    })
}

/// Where a depth witness comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Witness {
    Vertex(usize),
    /// Proper crossing of two edges, given as vertex pairs
    Crossing((usize, usize), (usize, usize)),
    Sample,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DepthResult {
    /// Rounded to `f64` when the exact witness is a rational crossing
    pub point: Vec<f64>,
    pub witness: Witness,
    pub depth: usize,
    pub total: usize,
    pub fraction: f64,
    /// Set when `depth` is only a lower bound on the maximum
    pub approximate: bool,
    /// Per top cell, in canonical order
    pub containing: Vec<bool>,
}

impl DepthResult {
    pub(crate) fn new(point: Vec<f64>, witness: Witness, depth: usize, containing: Vec<bool>, approximate: bool) -> Self {
        let total = containing.len();
        DepthResult {
            point,
            witness,
            depth,
            total,
            fraction: depth as f64 / total as f64,
            approximate,
            containing,
        }
    }
}

/// Maximum depth of `φ`: exact for `d ≤ 2`, sampled for `d ≥ 3`.
pub fn max_depth(x: &SimplicialComplex, phi: &Placement) -> Result<DepthResult> {
    max_depth_with(x, phi, DEFAULT_SAMPLES, 0)
}

/// As [`max_depth`], with the sampling parameters used when `d ≥ 3`.
pub fn max_depth_with(x: &SimplicialComplex, phi: &Placement, samples: usize, seed: u64) -> Result<DepthResult> {
    phi.check_for(x)?;
    Ok(match x.dim() {
        1 => exact::max_depth_line(x, phi),
        2 => {
            let mut used: Vec<usize> = x.top_cells().iter().flat_map(|c| c.vertices().to_vec()).collect();
            used.sort_unstable();
            used.dedup();
            exact::Planar::new(x, phi).max_depth(&used)
        }
        _ => sample::sampled_max_depth(x, phi, samples, seed),
    })
}

/// Sampled maximum depth in any dimension; always flagged approximate.
pub fn sampled_max_depth(x: &SimplicialComplex, phi: &Placement, samples: usize, seed: u64) -> Result<DepthResult> {
    phi.check_for(x)?;
    Ok(sample::sampled_max_depth(x, phi, samples, seed))
}

/// Exact depth at a point, for `d ≤ 2`.
pub fn depth_at(x: &SimplicialComplex, phi: &Placement, point: &[f64]) -> Result<usize> {
    phi.check_for(x)?;
    if point.len() != phi.dim() {
        return Err(Error::Shape {
            expected: (phi.dim(), 1),
            found: (point.len(), 1),
        });
    }
    match x.dim() {
        1 => Ok(exact::depth_line(x, phi, point[0])),
        2 => {
            let planar = exact::Planar::with_extra(x, phi, point);
            Ok(planar.depth(&planar.point(point)))
        }
        d => Err(Error::Unsupported(format!("exact depth at a point needs d ≤ 2, got {d}"))),
    }
}

/// Exact depth at a witness located by its combinatorial description, for
/// `d ≤ 2`.
pub fn depth_at_witness(x: &SimplicialComplex, phi: &Placement, w: &Witness) -> Result<usize> {
    phi.check_for(x)?;
    match (x.dim(), w) {
        (1, Witness::Vertex(v)) => Ok(exact::depth_line(x, phi, phi.coords()[*v][0])),
        (2, Witness::Vertex(_) | Witness::Crossing(..)) => {
            let planar = exact::Planar::new(x, phi);
            let p = planar
                .witness_point(w)
                .ok_or_else(|| Error::Precondition("the edges no longer cross".into()))?;
            Ok(planar.depth(&p))
        }
        _ => Err(Error::Unsupported("witness has no exact location".into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SearchStrategy {
    Random,
    AdversarialDescent,
}

impl std::str::FromStr for SearchStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(SearchStrategy::Random),
            "adversarial-descent" | "descent" => Ok(SearchStrategy::AdversarialDescent),
            _ => Err(Error::Parameter(format!("unknown search strategy `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OverlapSearch {
    pub strategy: SearchStrategy,
    pub seed: u64,
    pub iterations: usize,
    /// Smallest max-depth fraction over tried placements
    pub best_fraction: f64,
    pub best_depth: usize,
    pub best_placement: Placement,
    /// Best fraction after each iteration
    pub history: Vec<f64>,
    /// Set when depths came from sampling, so the bound is not certified
    pub approximate: bool,
}

/// Upper bound on overlap(X) from `iterations` placements.
///
/// `Random` draws placement `i` from stream `i`. `AdversarialDescent` starts
/// from a random placement and moves one coordinate at a time, keeping moves
/// that do not raise the max depth. Both are prefix-consistent: fewer
/// iterations try a prefix of the same placements.
pub fn overlap_upper_bound(
    x: &SimplicialComplex,
    strategy: SearchStrategy,
    seed: u64,
    iterations: usize,
) -> Result<OverlapSearch> {
    if iterations == 0 {
        return Err(Error::Parameter("iterations must be positive".into()));
    }
    let n = x.n_vertices();
    let d = x.dim();
    let eval = |phi: &Placement, i: usize| max_depth_with(x, phi, DEFAULT_SAMPLES, seed ^ i as u64);
    let mut history = Vec::with_capacity(iterations);
    let mut best: Option<(DepthResult, Placement)> = None;
    let mut approximate = false;
    let mut consider = |r: DepthResult, phi: &Placement, history: &mut Vec<f64>| {
        approximate |= r.approximate;
        if best.as_ref().is_none_or(|b| r.depth < b.0.depth) {
            best = Some((r, phi.clone()));
        }
        history.push(best.as_ref().expect("set above").0.fraction);
    };
    match strategy {
        SearchStrategy::Random => {
            for i in 0..iterations {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64);
                let phi = Placement::random(n, d, &mut rng);
                consider(eval(&phi, i)?, &phi, &mut history);
            }
        }
        SearchStrategy::AdversarialDescent => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut current = Placement::random(n, d, &mut rng);
            let mut current_depth = eval(&current, 0)?;
            consider(current_depth.clone(), &current, &mut history);
            for i in 1..iterations {
                let step = 0.5 / (1.0 + i as f64 / n.max(1) as f64).sqrt();
                let v = rng.random_range(0..n);
                let axis = rng.random_range(0..d);
                let delta = (rng.random::<f64>() * 2.0 - 1.0) * step;
                let mut trial = current.clone();
                trial.coords[v][axis] += delta;
                let r = eval(&trial, i)?;
                if r.depth <= current_depth.depth {
                    current = trial.clone();
                    current_depth = r.clone();
                }
                consider(r, &trial, &mut history);
            }
        }
    }
    let (r, placement) = best.expect("at least one iteration");
    Ok(OverlapSearch {
        strategy,
        seed,
        iterations,
        best_fraction: r.fraction,
        best_depth: r.depth,
        best_placement: placement,
        history,
        approximate,
    })
}

/// Exact overlap over all placements of a graph at distinct points of the
/// line, found by trying every vertex order. Needs `n ≤ 10`.
pub fn line_overlap_exhaustive(x: &SimplicialComplex) -> Result<(f64, Placement)> {
    let n = x.n_vertices();
    if x.dim() != 1 || n > 10 {
        return Err(Error::Precondition("exhaustive line placements need a graph on at most 10 vertices".into()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut best: Option<(usize, Placement)> = None;
    let mut visit = |order: &[usize]| -> Result<()> {
        let mut coords = vec![vec![0.0]; n];
        for (pos, &v) in order.iter().enumerate() {
            coords[v][0] = pos as f64;
        }
        let phi = Placement { dim: 1, coords };
        let r = max_depth(x, &phi)?;
        if best.as_ref().is_none_or(|b| r.depth < b.0) {
            best = Some((r.depth, phi));
        }
        Ok(())
    };
    // Heap's algorithm
    let mut c = vec![0usize; n];
    visit(&order)?;
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            visit(&order)?;
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    let (depth, phi) = best.expect("at least one order");
    Ok((depth as f64 / x.count(1) as f64, phi))
}

/// Both variants of the spectral lower bound on overlap(X).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralOverlapBound {
    pub c_d: f64,
    pub k: f64,
    /// `max |λ - k|` over the restricted spectrum
    pub eps: f64,
    pub lambda_avg: f64,
    /// `max |λ - λ_avg|` over the restricted spectrum
    pub eps_prime: f64,
    /// `(c^d / e^{d+1})(c - ε(d+1)/k)`
    pub bound_k: f64,
    /// `(c^d n / e^{d+1}(n-d))(c - ε'(d+1)/λ_avg)`
    pub bound_lambda: f64,
    pub bound: f64,
    pub vacuous: bool,
}

/// The two closed-form bounds, without reference to a complex.
pub fn overlap_bound_formulas(d: usize, n: usize, c_d: f64, k: f64, eps: f64, lambda_avg: f64, eps_prime: f64) -> (f64, f64) {
    let e = std::f64::consts::E.powi(d as i32 + 1);
    let cd = c_d.powi(d as i32);
    let dd = (d + 1) as f64;
    let bound_k = cd / e * (c_d - eps * dd / k);
    let bound_lambda = cd * n as f64 / (e * (n - d) as f64) * (c_d - eps_prime * dd / lambda_avg);
    (bound_k, bound_lambda)
}

pub fn check_pach_constant(c_d: f64) -> Result<()> {
    if !(c_d > 0.0 && c_d <= 1.0) {
        return Err(Error::Parameter(format!("c_d must lie in (0, 1], got {c_d}")));
    }
    Ok(())
}

/// Spectral lower bound on overlap(X) for a complete-skeleton complex, with
/// `ε` and `ε'` measured from the restricted spectrum.
pub fn spectral_overlap_bound(x: &SimplicialComplex, c_d: f64) -> Result<SpectralOverlapBound> {
    check_pach_constant(c_d)?;
    if !x.is_complete_skeleton() {
        return Err(Error::Precondition("the spectral overlap bound requires a complete skeleton".into()));
    }
    let d = x.dim();
    let n = x.n_vertices();
    if d == 0 || n <= d {
        return Err(Error::InvalidDimension {
            dim: d as isize,
            reason: "need 1 ≤ d < n".into(),
        });
    }
    let (lo, hi) = spectral::restricted_extremes(x, spectral::DENSE_LIMIT)?;
    let k = spectral::average_degree(x);
    let lambda_avg = (d + 1) as f64 * x.count(d as isize) as f64 / binomial(n - 1, d) as f64;
    let eps = spectral::rho_from_extremes(k, (lo, hi));
    let eps_prime = spectral::rho_from_extremes(lambda_avg, (lo, hi));
    let (bound_k, bound_lambda) = overlap_bound_formulas(d, n, c_d, k, eps, lambda_avg, eps_prime);
    let bound = if bound_k.is_nan() { bound_lambda } else { bound_k.max(bound_lambda) };
    Ok(SpectralOverlapBound {
        c_d,
        k,
        eps,
        lambda_avg,
        eps_prime,
        bound_k,
        bound_lambda,
        bound,
        vacuous: !(bound > 0.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn place(coords: &[&[f64]]) -> Placement {
        Placement::new(coords[0].len(), coords.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    #[test]
    fn single_triangle() {
        let x = SimplicialComplex::from_top_cells(3, [vec![0, 1, 2]]).unwrap();
        let r = max_depth(&x, &place(&[&[0.0, 0.0], &[1.0, 0.0], &[0.3, 0.9]])).unwrap();
        assert_eq!((r.depth, r.fraction), (1, 1.0));
        assert!(!r.approximate);
    }

    #[test]
    fn path_uses_closed_hulls() {
        let x = fixtures::path_graph(3);
        let r = max_depth(&x, &place(&[&[0.0], &[1.0], &[2.0]])).unwrap();
        assert_eq!(r.depth, 2);
        assert_eq!(r.point, vec![1.0]);
        assert_eq!(r.witness, Witness::Vertex(1));
    }

    #[test]
    fn separated_triangles() {
        let x = fixtures::disjoint_triangles(2);
        let phi = place(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[10.0, 0.0], &[11.0, 0.0], &[10.0, 1.0]]);
        assert_eq!(max_depth(&x, &phi).unwrap().depth, 1);
        let search = overlap_upper_bound(&x, SearchStrategy::Random, 3, 20).unwrap();
        assert_eq!(search.best_fraction, 0.5);
    }

    #[test]
    fn collapsed_placement_has_full_depth() {
        let x = SimplicialComplex::complete(5, 2).unwrap();
        let phi = Placement::new(2, vec![vec![0.5, 0.5]; 5]).unwrap();
        let r = max_depth(&x, &phi).unwrap();
        assert_eq!(r.depth, 10);
        let x3 = SimplicialComplex::complete(5, 3).unwrap();
        let r3 = max_depth(&x3, &Placement::new(3, vec![vec![1.0, 2.0, 3.0]; 5]).unwrap()).unwrap();
        assert_eq!(r3.depth, 5);
        assert!(r3.approximate);
    }

    #[test]
    fn crossing_witness() {
        // two triangles overlapping only near a crossing of their edges
        let x = fixtures::disjoint_triangles(2);
        let phi = place(&[&[0.0, 0.0], &[2.0, 0.0], &[1.0, 2.0], &[0.0, 1.5], &[2.0, 1.5], &[1.0, 3.5]]);
        let r = max_depth(&x, &phi).unwrap();
        assert_eq!(r.depth, 2);
        assert_eq!(depth_at_witness(&x, &phi, &r.witness).unwrap(), 2);
        assert_eq!(depth_at(&x, &phi, &[1.0, 1.75]).unwrap(), 2);
        assert_eq!(depth_at(&x, &phi, &[0.1, 0.1]).unwrap(), 1);
    }

    #[test]
    fn cycle_on_a_line() {
        let c4 = fixtures::cycle_graph(4);
        let (frac, _) = line_overlap_exhaustive(&c4).unwrap();
        // some vertex image always meets its two edges and one spanning edge
        assert_eq!(frac, 0.75);
        let search = overlap_upper_bound(&c4, SearchStrategy::AdversarialDescent, 1, 50).unwrap();
        assert!(search.best_fraction <= 0.75);
    }

    #[test]
    fn search_history_is_monotone_and_prefix_consistent() {
        let x = SimplicialComplex::complete(6, 2).unwrap();
        for strategy in [SearchStrategy::Random, SearchStrategy::AdversarialDescent] {
            let long = overlap_upper_bound(&x, strategy, 9, 30).unwrap();
            assert!(long.history.windows(2).all(|w| w[1] <= w[0]));
            assert!(long.best_fraction > 0.0 && long.best_fraction <= 1.0);
            let short = overlap_upper_bound(&x, strategy, 9, 12).unwrap();
            assert_eq!(short.history[..], long.history[..12]);
            assert!(long.best_fraction <= short.best_fraction);
        }
    }

    #[test]
    fn placement_text_round_trip() {
        let phi = place(&[&[0.1, -2.5], &[1e-300, 3.0], &[0.0, 7.25]]);
        let back = Placement::parse(&phi.to_text()).unwrap();
        assert_eq!(back, phi);
        let shuffled = Placement::parse("# header\n2 0 7.25\n0 0.1 -2.5\n\n1 1e-300 3\n").unwrap();
        assert_eq!(shuffled, phi);
    }

    #[test]
    fn placement_parse_errors() {
        let e = Placement::parse("0 1.0 2.0\n1 1.0 x2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 7, .. }), "{e:?}");
        assert!(matches!(Placement::parse("0 1.0\n0 2.0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Placement::parse("0 1.0\n5 2.0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Placement::parse("0 1.0\n1 2.0 3.0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Placement::parse("0 inf\n"), Err(Error::Parse { line: 1, column: 3, .. })));
    }

    #[test]
    fn placement_must_match_complex() {
        let x = fixtures::mobius();
        assert!(max_depth(&x, &Placement::new(1, vec![vec![0.0]; 5]).unwrap()).is_err());
        assert!(max_depth(&x, &Placement::new(2, vec![vec![0.0, 0.0]; 4]).unwrap()).is_err());
        assert!(Placement::new(2, vec![vec![0.0]]).is_err());
        assert!(Placement::new(1, vec![vec![f64::NAN]]).is_err());
    }

    #[test]
    fn spectral_bound_complete() {
        for (n, d) in [(6, 1), (7, 2), (6, 3)] {
            let x = SimplicialComplex::complete(n, d).unwrap();
            for c in [0.1, 0.5, 1.0] {
                let b = spectral_overlap_bound(&x, c).unwrap();
                let e = std::f64::consts::E.powi(d as i32 + 1);
                let closed = c.powi(d as i32) * n as f64 / (e * (n - d) as f64) * c;
                assert!((b.bound_lambda - closed).abs() < 1e-12);
                assert!((b.bound - closed).abs() < 1e-12);
                assert!(b.eps_prime < 1e-9);
                assert!((b.lambda_avg - n as f64).abs() < 1e-12);
                assert!(!b.vacuous);
            }
        }
    }

    #[test]
    fn spectral_bound_vacuous_and_errors() {
        let m = fixtures::mobius();
        let b = spectral_overlap_bound(&m, 0.5).unwrap();
        assert!(b.eps >= b.k);
        assert!(b.vacuous);
        let k = SimplicialComplex::complete(5, 2).unwrap();
        for bad in [0.0, -0.1, 1.5, f64::NAN] {
            assert!(matches!(spectral_overlap_bound(&k, bad), Err(Error::Parameter(_))));
        }
        assert!(spectral_overlap_bound(&fixtures::bowtie(), 0.5).is_err());
    }

    #[test]
    fn spectral_bound_below_line_overlap() {
        for n in 3..=7 {
            let k = SimplicialComplex::complete(n, 1).unwrap();
            let b = spectral_overlap_bound(&k, 0.5).unwrap();
            let (frac, _) = line_overlap_exhaustive(&k).unwrap();
            assert!(b.bound <= frac + 1e-9);
        }
    }
}
