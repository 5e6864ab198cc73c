//! Fixed inputs shared by the benchmarks.

use polyadj_core::generators;
use polyadj_core::HPolytope;

/// Seeded random polytopes of dimension `d` with `d + 3` points.
pub fn random_batch(d: usize, count: u64) -> Vec<HPolytope> {
    let half_width = if d == 2 { 5 } else { 3 };
    (0..count)
        .map(|seed| generators::random(d, d + 3, seed, half_width).expect("valid parameters"))
        .collect()
}
