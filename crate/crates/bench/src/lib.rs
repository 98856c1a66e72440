//! Shared fixtures for the criterion benches.

use secrograph::pointprocess::{sample_eaves, sample_goods, PointSet, Window};
use secrograph::SeedSpec;

/// Standard benchmark instance: unit-intensity goods and intensity-λ
/// eavesdroppers on a plain window of side `side`.
pub fn fixture(lambda: f64, side: f64, seed: u64) -> (PointSet, PointSet) {
    let w = Window::plain(side).expect("valid window");
    let s = SeedSpec::new(seed, 0);
    (
        sample_goods(1.0, w, s).expect("sampling"),
        sample_eaves(lambda, w, s).expect("sampling"),
    )
}
