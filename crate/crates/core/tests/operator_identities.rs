use cheeger_core::complex::for_each_subset;
use cheeger_core::operators::{self, Form};
use cheeger_core::{binomial, fixtures, spectral, Cell, OperatorMatrix, SimplicialComplex};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random complex: `n` vertices, dimension `d`, each `d`-subset kept with
/// the given mask; with `complete`, every `(d-1)`-subset is also present.
fn build(n: usize, d: usize, mask: &[bool], complete: bool) -> SimplicialComplex {
    let mut cells = Vec::new();
    if complete {
        for_each_subset(n, d, |s| cells.push(s.to_vec()));
    }
    let mut i = 0;
    for_each_subset(n, d + 1, |s| {
        if mask[i % mask.len()] {
            cells.push(s.to_vec());
        }
        i += 1;
    });
    SimplicialComplex::with_dimension(n, d, cells).unwrap()
}

fn complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    (4usize..=7, 1usize..=3, any::<bool>())
        .prop_flat_map(|(n, d, complete)| {
            let d = d.min(n - 2).max(1);
            let m = binomial(n, d + 1) as usize;
            (Just(n), Just(d), prop::collection::vec(any::<bool>(), m), Just(complete))
        })
        .prop_map(|(n, d, mask, complete)| build(n, d, &mask, complete))
}

fn random_vec(len: usize, rng: &mut ChaCha8Rng) -> DVector<f64> {
    DVector::from_fn(len, |_, _| rng.random_range(-1.0..1.0))
}

fn dense_eq(a: &DMatrix<f64>, b: &DMatrix<f64>, tol: f64) -> bool {
    a.shape() == b.shape() && (a - b).abs().max() <= tol
}

fn sum_localized(x: &SimplicialComplex) -> OperatorMatrix {
    let d = x.dim();
    let rows = x.count(d as isize - 1);
    let mut total = OperatorMatrix::zeros(cheeger_core::Role::Derived, rows, rows);
    for tau in x.level(d as isize - 2) {
        total = total.add(&operators::localized_upper_laplacian(x, tau).unwrap()).unwrap();
    }
    total
}

fn link_upper_form(x: &SimplicialComplex, tau: &Cell, g: &[f64]) -> f64 {
    let (lk, _) = x.link(tau).unwrap();
    if lk.dim() == 0 || lk.count(1) == 0 {
        return 0.0;
    }
    let g = DVector::from_column_slice(g);
    operators::upper_laplacian(&lk).unwrap().apply(&g).dot(&g)
}

fn check_identities(x: &SimplicialComplex, forms: usize, seed: u64) -> Result<(), TestCaseError> {
    let d = x.dim();
    let n = x.n_vertices();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for j in 1..=d {
        let b1 = operators::boundary_matrix(x, j - 1).unwrap();
        let b2 = operators::boundary_matrix(x, j).unwrap();
        prop_assert!(b1.matmul(&b2).unwrap().is_zero());
    }
    for j in 0..=d {
        let b = operators::boundary_matrix(x, j).unwrap();
        let cob = operators::coboundary_matrix(x, j).unwrap();
        let (r, c) = b.shape();
        let f = random_vec(r, &mut rng);
        let g = random_vec(c, &mut rng);
        let lhs = cob.apply(&f).dot(&g);
        let rhs = f.dot(&b.apply(&g));
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
    }

    let upper = operators::upper_laplacian(x).unwrap();
    let lower = operators::lower_laplacian(x).unwrap();
    let full = operators::full_laplacian(x).unwrap();
    for m in [&upper, &lower, &full] {
        prop_assert!(m.is_symmetric());
        let spec = spectral::symmetric_spectrum(m).unwrap();
        prop_assert!(spec.iter().all(|&l| l >= -1e-9));
    }
    let k_max = x.degrees(d - 1).into_iter().max().unwrap_or(0) as f64;
    let spec = spectral::symmetric_spectrum(&upper).unwrap();
    prop_assert!(spec.iter().all(|&l| l <= (d + 1) as f64 * k_max + 1e-9));
    prop_assert_eq!(upper.trace(), ((d + 1) * x.count(d as isize)) as i64);
    let sum: f64 = spec.iter().sum();
    prop_assert!((sum - upper.trace() as f64).abs() < 1e-8);

    // Garland (1): Δ⁺ = Σ_τ Δ⁺_τ − (d−1)D
    let degree = operators::degree_operator(x).unwrap();
    let rebuilt = sum_localized(x).linear_combination(1, &degree, -(d as i64 - 1)).unwrap();
    prop_assert!(rebuilt.sub(&upper).unwrap().is_zero());

    let cycles = operators::cycle_basis(x).unwrap();
    for t in 0..forms {
        let f = if t % 2 == 0 || cycles.ncols() == 0 {
            Form {
                dim: d as isize - 1,
                coeffs: random_vec(x.count(d as isize - 1), &mut rng),
            }
        } else {
            Form {
                dim: d as isize - 1,
                coeffs: &cycles * random_vec(cycles.ncols(), &mut rng),
            }
        };
        let is_cycle = t % 2 == 1 && cycles.ncols() > 0;
        let mut restricted_norms = 0.0;
        for tau in x.level(d as isize - 2) {
            let local = operators::localized_upper_laplacian(x, tau).unwrap();
            let f_tau = operators::link_restriction(x, &f, tau).unwrap();
            // Garland (2)
            let lhs = local.apply(&f.coeffs).dot(&f.coeffs);
            let rhs = link_upper_form(x, tau, &f_tau);
            prop_assert!((lhs - rhs).abs() <= 1e-9, "tau {tau}: {lhs} vs {rhs}");
            // Garland (3): cycles restrict to sum-zero vertex functions
            if is_cycle {
                prop_assert!(f_tau.iter().sum::<f64>().abs() <= 1e-9);
            }
            restricted_norms += f_tau.iter().map(|v| v * v).sum::<f64>();
        }
        // Garland (4)
        let norm = f.coeffs.dot(&f.coeffs);
        prop_assert!((restricted_norms - d as f64 * norm).abs() <= 1e-9 * (1.0 + norm));
    }

    let hodge = operators::hodge_decomposition(x).unwrap();
    let (a, b, c) = hodge.dims();
    prop_assert_eq!(a + b + c, x.count(d as isize - 1));
    let pairs = [(&hodge.exact, &hodge.harmonic), (&hodge.exact, &hodge.coexact), (&hodge.harmonic, &hodge.coexact)];
    for (p, q) in pairs {
        if p.ncols() > 0 && q.ncols() > 0 {
            prop_assert!((p.transpose() * q).abs().max() <= 1e-9);
        }
    }

    let betti = spectral::betti_numbers(x).unwrap();
    let chi = spectral::euler_characteristic(x);
    let alt: i64 = betti.iter().enumerate().map(|(i, &b)| if i % 2 == 1 { b as i64 } else { -(b as i64) }).sum();
    prop_assert_eq!(chi, alt);

    let routes = spectral::spectral_gap_routes(x).unwrap();
    prop_assert!(routes.spread() <= 1e-8);
    let lambda = routes.value();
    prop_assert_eq!(lambda.abs() < 1e-6, betti[d] > 0);

    if x.is_complete_skeleton() {
        let bar = x.complement().unwrap();
        prop_assert_eq!(&bar.complement().unwrap(), x);
        prop_assert_eq!(x.count(d as isize) + bar.count(d as isize), binomial(n, d + 1) as usize);
        let bar_upper = operators::upper_laplacian(&bar).unwrap();
        let n_eye = OperatorMatrix::identity(x.count(d as isize - 1)).scale(n as i64);
        prop_assert!(bar_upper.add(&full).unwrap().sub(&n_eye).unwrap().is_zero());
        let sq = lower.matmul(&lower).unwrap();
        prop_assert!(dense_eq(&sq.to_dense(), &lower.scale(n as i64).to_dense(), 1e-9));
        if betti[d] == 0 {
            let zeros = spec.iter().filter(|&&l| l.abs() < 1e-6).count();
            prop_assert_eq!(zeros as u64, binomial(n - 1, d - 1));
        }
        let dens = spectral::density_identity(x).unwrap();
        prop_assert!(dens.max_abs_residual <= 1e-9);
    }
    Ok(())
}

fn check_structure(x: &SimplicialComplex) -> Result<(), TestCaseError> {
    let d = x.dim();
    prop_assert_eq!(x.count(-1), 1);
    prop_assert_eq!(x.count(0), x.n_vertices());
    for j in 1..=d {
        for sigma in x.cells(j) {
            for i in 0..sigma.len() {
                prop_assert!(x.contains(&sigma.face(i)));
            }
        }
    }
    for j in 0..d {
        for sigma in x.cells(j) {
            let by_scan = (0..x.n_vertices())
                .filter(|&v| !sigma.contains_vertex(v) && x.contains(&sigma.with_vertex(v)))
                .count();
            prop_assert_eq!(x.degree(sigma).unwrap(), by_scan);
        }
    }
    if d >= 2 {
        for tau in x.cells(d - 2) {
            let (lk, _) = x.link(tau).unwrap();
            prop_assert_eq!(lk.n_vertices(), x.degree(tau).unwrap());
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn identities_on_random_complexes(x in complex_strategy(), seed in any::<u64>()) {
        check_structure(&x)?;
        check_identities(&x, 6, seed)?;
    }
}

#[test]
fn identities_on_fixture_corpus() {
    for (name, x) in fixtures::corpus() {
        check_structure(&x).unwrap_or_else(|e| panic!("{name}: {e}"));
        check_identities(&x, 10, 7).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn mobius_localized_sum() {
    let m = fixtures::mobius();
    let upper = operators::upper_laplacian(&m).unwrap();
    let degree = operators::degree_operator(&m).unwrap();
    assert!(sum_localized(&m).sub(&upper.add(&degree).unwrap()).unwrap().is_zero());
}
