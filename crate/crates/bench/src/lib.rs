//! Benchmark inputs shared by the criterion targets.

use cheeger_core::random::{linial_meshulam, LmParams};
use cheeger_core::SimplicialComplex;

/// A Linial–Meshulam complex with `p = c ln n / n`.
pub fn lm_complex(d: usize, n: usize, c: f64, seed: u64) -> SimplicialComplex {
    let p = (c * (n as f64).ln() / n as f64).min(1.0);
    linial_meshulam(&LmParams::new(d, n, p, seed).expect("valid parameters")).expect("generation succeeds")
}
