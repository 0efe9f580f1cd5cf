use std::collections::BTreeSet;

use cheeger_core::complex::for_each_subset;
use cheeger_core::expansion::{
    self, cheeger_exact, cheeger_local_search, cheeger_test_form, count_f, mixing_audit, AlphaChoice,
    MixingOptions, TupleStrategy,
};
use cheeger_core::{binomial, fixtures, spectral, Partition, Ratio, SimplicialComplex};
use proptest::prelude::*;

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

fn complete_skeleton(max_n: usize) -> impl Strategy<Value = SimplicialComplex> {
    (4usize..=max_n, 1usize..=2)
        .prop_flat_map(|(n, d)| {
            let m = binomial(n, d + 1) as usize;
            (Just(n), Just(d), prop::collection::vec(any::<bool>(), m))
        })
        .prop_map(|(n, d, mask)| build(n, d, &mask, true))
}

/// Brute-force `h` over every labelling `V → {0..d}` with all labels used.
fn brute_h(x: &SimplicialComplex) -> Ratio {
    let n = x.n_vertices();
    let k = x.dim() + 1;
    let mut best: Option<Ratio> = None;
    let total = k.pow(n as u32);
    for mut code in 0..total {
        let mut labels = vec![0usize; n];
        for l in labels.iter_mut() {
            *l = code % k;
            code /= k;
        }
        let mut blocks = vec![Vec::new(); k];
        for (v, &l) in labels.iter().enumerate() {
            blocks[l].push(v);
        }
        if blocks.iter().any(|b| b.is_empty()) {
            continue;
        }
        let f = x
            .top_cells()
            .iter()
            .filter(|c| c.vertices().iter().map(|&v| labels[v]).collect::<BTreeSet<_>>().len() == k)
            .count() as u64;
        let prod: u64 = blocks.iter().map(|b| b.len() as u64).product();
        let r = Ratio::new(n as u64 * f, prod);
        if best.is_none_or(|b| r < b) {
            best = Some(r);
        }
    }
    best.unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn cheeger_inequality_and_local_search(x in complete_skeleton(7), seed in any::<u64>()) {
        let exact = cheeger_exact(&x).unwrap();
        prop_assert_eq!(exact.value, brute_h(&x));
        prop_assert_eq!(expansion::partition_ratio(&x, &exact.argmin).unwrap(), exact.value);
        let lambda = spectral::spectral_gap(&x).unwrap();
        prop_assert!(lambda <= exact.h() + 1e-9, "λ = {lambda}, h = {}", exact.h());
        let local = cheeger_local_search(&x, seed, 4).unwrap();
        prop_assert!(local.value >= exact.value);
    }

    #[test]
    fn incomplete_skeleton_has_zero_h(n in 5usize..=7, mask in prop::collection::vec(any::<bool>(), 35)) {
        let x = build(n, 2, &mask, false);
        if !x.is_complete_skeleton() {
            prop_assert_eq!(cheeger_exact(&x).unwrap().value, Ratio::from_integer(0));
            let (_, witness) = expansion::zero_witness(&x).unwrap().unwrap();
            prop_assert_eq!(expansion::partition_ratio(&x, &witness).unwrap(), Ratio::from_integer(0));
        }
    }

    #[test]
    fn count_f_is_block_symmetric(x in complete_skeleton(7), cut in prop::collection::vec(0usize..4, 7)) {
        let n = x.n_vertices();
        let k = x.dim() + 1;
        let mut sets = vec![Vec::new(); k];
        for v in 0..n {
            if cut[v] < k {
                sets[cut[v]].push(v);
            }
        }
        prop_assume!(sets.iter().all(|s| !s.is_empty()));
        let base = count_f(&x, &sets).unwrap();
        let mut rev = sets.clone();
        rev.reverse();
        prop_assert_eq!(count_f(&x, &rev).unwrap(), base);
        rev.rotate_left(1);
        prop_assert_eq!(count_f(&x, &rev).unwrap(), base);
    }

    #[test]
    fn mixing_has_no_violations(x in complete_skeleton(7)) {
        for alpha in [AlphaChoice::K, AlphaChoice::Auto] {
            let opts = MixingOptions { alpha, strategy: TupleStrategy::Exhaustive, ..MixingOptions::default() };
            let r = mixing_audit(&x, &opts).unwrap();
            prop_assert_eq!(r.violation_count, 0);
            prop_assert!(r.exhaustive);
        }
    }
}

#[test]
fn transversal_cells_have_one_type() {
    // on a complete complex every d-cell is transversal to the same number
    // of labellings
    let x = SimplicialComplex::complete(6, 2).unwrap();
    let n = 6;
    let mut per_cell = vec![0u64; x.count(2)];
    let k: usize = 3;
    for code in 0..k.pow(n as u32) {
        let mut labels = vec![0usize; n];
        let mut c = code;
        for l in labels.iter_mut() {
            *l = c % k;
            c /= k;
        }
        if (0..k).any(|b| !labels.contains(&b)) {
            continue;
        }
        for (i, cell) in x.top_cells().iter().enumerate() {
            let types: BTreeSet<usize> = cell.vertices().iter().map(|&v| labels[v]).collect();
            if types.len() == k {
                per_cell[i] += 1;
            }
        }
    }
    assert!(per_cell.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn test_form_on_every_partition_of_small_complexes() {
    for n in 4..=7 {
        let x = SimplicialComplex::complete(n, 2).unwrap();
        let tri = cheeger_core::random::LmParams::new(2, n, 0.5, n as u64).unwrap();
        let y = cheeger_core::random::linial_meshulam(&tri).unwrap();
        for z in [&x, &y] {
            let k: usize = 3;
            for code in 0..k.pow(n as u32) {
                let mut labels = vec![0u8; n];
                let mut c = code;
                for l in labels.iter_mut() {
                    *l = (c % k) as u8;
                    c /= k;
                }
                if labels[0] != 0 || (0..k as u8).any(|b| !labels.contains(&b)) {
                    continue;
                }
                let p = Partition::from_labels(&labels, k);
                let check = cheeger_test_form(z, &p).unwrap().check(z).unwrap();
                assert!(check.holds(1e-9), "{p}: {check:?}");
            }
        }
    }
}

#[test]
fn graph_cheeger_sandwich() {
    for (name, g) in [
        ("c5", fixtures::cycle_graph(5)),
        ("p5", fixtures::path_graph(5)),
        ("k5", SimplicialComplex::complete(5, 1).unwrap()),
        ("c8", fixtures::cycle_graph(8)),
    ] {
        let h = cheeger_exact(&g).unwrap().value;
        let phi = expansion::graph_phi(&g).unwrap();
        assert!(phi <= h && h <= phi * 2, "{name}: φ = {phi}, h = {h}");
    }
}
