use cheeger_core::overlap::{
    self, depth_at_sampled, depth_at_witness, max_depth, overlap_upper_bound, Placement, SearchStrategy,
};
use cheeger_core::{fixtures, SimplicialComplex};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn planar_complexes() -> Vec<SimplicialComplex> {
    vec![
        SimplicialComplex::from_top_cells(3, [vec![0, 1, 2]]).unwrap(),
        fixtures::disjoint_triangles(2),
        fixtures::bowtie(),
        fixtures::mobius(),
        SimplicialComplex::complete(5, 2).unwrap(),
    ]
}

fn random_affine(rng: &mut ChaCha8Rng, dim: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    loop {
        let a: Vec<Vec<f64>> = (0..dim).map(|_| (0..dim).map(|_| rng.random_range(-2.0..2.0)).collect()).collect();
        let det = if dim == 1 { a[0][0] } else { a[0][0] * a[1][1] - a[0][1] * a[1][0] };
        if det.abs() > 0.1 {
            let b = (0..dim).map(|_| rng.random_range(-5.0..5.0)).collect();
            return (a, b);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn exact_depth_dominates_samples(which in 0usize..5, seed in any::<u64>()) {
        let x = &planar_complexes()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = Placement::random(x.n_vertices(), 2, &mut rng);
        let exact = max_depth(x, &phi).unwrap();
        for _ in 0..200 {
            let p = [rng.random::<f64>(), rng.random::<f64>()];
            prop_assert!(overlap::depth_at(x, &phi, &p).unwrap() <= exact.depth);
        }
        let sampled = overlap::sampled_max_depth(x, &phi, 500, seed).unwrap();
        prop_assert!(sampled.depth <= exact.depth);
        prop_assert_eq!(exact.containing.iter().filter(|&&c| c).count(), exact.depth);
        // the floating-point test agrees at generic witness points
        if !matches!(exact.witness, overlap::Witness::Crossing(..)) {
            prop_assert_eq!(depth_at_sampled(x, &phi, &exact.point).0, exact.depth);
        }
    }

    #[test]
    fn depth_is_affine_invariant(which in 0usize..5, seed in any::<u64>()) {
        let x = &planar_complexes()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = Placement::random(x.n_vertices(), 2, &mut rng);
        let (a, b) = random_affine(&mut rng, 2);
        let mapped = phi.map_affine(&a, &b);
        let r = max_depth(x, &phi).unwrap();
        prop_assert_eq!(depth_at_witness(x, &mapped, &r.witness).unwrap(), r.depth);
        prop_assert_eq!(max_depth(x, &mapped).unwrap().depth, r.depth);
    }

    #[test]
    fn line_depth_is_affine_invariant(n in 3usize..=8, seed in any::<u64>()) {
        let x = SimplicialComplex::complete(n, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = Placement::random(n, 1, &mut rng);
        let (a, b) = random_affine(&mut rng, 1);
        let r = max_depth(&x, &phi).unwrap();
        let mapped = phi.map_affine(&a, &b);
        prop_assert_eq!(depth_at_witness(&x, &mapped, &r.witness).unwrap(), r.depth);
    }

    #[test]
    fn search_is_monotone(seed in any::<u64>(), iters in 1usize..25) {
        let x = SimplicialComplex::complete(5, 2).unwrap();
        for strategy in [SearchStrategy::Random, SearchStrategy::AdversarialDescent] {
            let s = overlap_upper_bound(&x, strategy, seed, iters).unwrap();
            prop_assert_eq!(s.history.len(), iters);
            prop_assert!(s.history.windows(2).all(|w| w[1] <= w[0]));
            prop_assert!(s.best_fraction > 0.0 && s.best_fraction <= 1.0);
            prop_assert_eq!(max_depth(&x, &s.best_placement).unwrap().fraction, s.best_fraction);
        }
    }
}

#[test]
fn spectral_bound_is_below_line_overlap_for_complete_graphs() {
    for n in 3..=8 {
        let k = SimplicialComplex::complete(n, 1).unwrap();
        let (frac, phi) = overlap::line_overlap_exhaustive(&k).unwrap();
        assert_eq!(max_depth(&k, &phi).unwrap().fraction, frac);
        for c in [0.1, 0.25, 0.5] {
            let b = overlap::spectral_overlap_bound(&k, c).unwrap();
            assert!(b.bound <= frac + 1e-9, "n = {n}, c = {c}");
        }
    }
}

#[test]
fn collinear_path_depth() {
    let x = fixtures::path_graph(3);
    let phi = Placement::new(1, vec![vec![0.0], vec![1.0], vec![2.0]]).unwrap();
    assert_eq!(max_depth(&x, &phi).unwrap().depth, 2);
}
