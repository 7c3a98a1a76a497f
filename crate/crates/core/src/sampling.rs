//! Seeded sampling shared by the property checkers.
//!
//! All randomness goes through [`ChaCha8Rng`] seeded with
//! `seed_from_u64(seed)`; per-trial streams are selected with
//! `set_stream(index)`, so a sample depends only on `(seed, index)` and
//! never on evaluation order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default sampling box for mean arguments.
pub const LOG_UNIFORM_LO: f64 = 1e-3;
pub const LOG_UNIFORM_HI: f64 = 1e3;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for the `index`-th independent trial under `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index);
    r
}

/// Log-uniform draw on `[lo, hi]`, `0 < lo < hi`.
pub fn log_uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let (a, b) = (lo.ln(), hi.ln());
    (a + (b - a) * rng.gen::<f64>()).exp().clamp(lo, hi)
}

/// `n` logarithmically spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..n)
                .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
                .collect()
        }
    }
}
