use cheeger_core::expansion::{self, cheeger_exact, cheeger_local_search};
use cheeger_core::random::{isolated_cell_check, linial_meshulam_trial, LmParams};
use cheeger_core::{binomial, io, spectral, Ratio};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generator_is_deterministic(d in 1usize..=3, n in 5usize..=9, p in 0.05f64..0.95, seed in any::<u64>(), trial in 0u64..8) {
        let params = LmParams::new(d, n, p, seed).unwrap();
        let a = linial_meshulam_trial(&params, trial).unwrap();
        let b = linial_meshulam_trial(&params, trial).unwrap();
        prop_assert_eq!(io::write_complex(&a), io::write_complex(&b));
        prop_assert!(a.is_complete_skeleton());
        prop_assert_eq!(a.dim(), d);
    }

    #[test]
    fn cheeger_bounds_hold_on_generated_complexes(n in 5usize..=8, p in 0.1f64..0.9, seed in any::<u64>()) {
        let params = LmParams::new(2, n, p, seed).unwrap();
        let x = linial_meshulam_trial(&params, 0).unwrap();
        let lambda = spectral::spectral_gap(&x).unwrap();
        let exact = cheeger_exact(&x).unwrap();
        prop_assert!(lambda <= exact.h() + 1e-9);
        let upper = cheeger_local_search(&x, seed, 3).unwrap();
        prop_assert!(lambda <= upper.h() + 1e-9);
        if let Some(cell) = isolated_cell_check(&x) {
            prop_assert_eq!(exact.value, Ratio::from_integer(0));
            let w = expansion::witness_partition(n, &cell).unwrap();
            prop_assert_eq!(expansion::partition_ratio(&x, &w).unwrap(), Ratio::from_integer(0));
            prop_assert!(lambda < 1e-6);
        }
    }
}

#[test]
fn mean_top_cell_count_matches_expectation() {
    let (d, n, p) = (2, 8, 0.3);
    let params = LmParams::new(d, n, p, 2024).unwrap();
    let trials = 600;
    let counts: Vec<f64> = (0..trials)
        .map(|t| linial_meshulam_trial(&params, t).unwrap().count(d as isize) as f64)
        .collect();
    let mean = counts.iter().sum::<f64>() / trials as f64;
    let m = binomial(n, d + 1) as f64;
    let expected = p * m;
    let se = (m * p * (1.0 - p) / trials as f64).sqrt();
    assert!((mean - expected).abs() <= 4.0 * se, "mean {mean}, expected {expected} ± {se}");
}

#[test]
fn trials_use_distinct_streams() {
    let params = LmParams::new(2, 9, 0.5, 7).unwrap();
    let a = linial_meshulam_trial(&params, 0).unwrap();
    let b = linial_meshulam_trial(&params, 1).unwrap();
    assert_ne!(a, b);
}
