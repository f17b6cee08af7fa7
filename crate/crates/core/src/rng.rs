//! Seeded random substreams.
//!
//! Every random decision in the pipeline draws from a ChaCha8 stream keyed by
//! the run seed plus a path of integers (cell, fold, tree, ...), so results do
//! not depend on execution order or thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Stream domains; used as the first key so unrelated consumers never share
/// a stream even when the remaining keys coincide.
pub mod domain {
    pub const SYNTH: u64 = 1;
    pub const FOLDS: u64 = 2;
    pub const FOREST: u64 = 3;
    pub const BORUTA: u64 = 4;
    pub const SVM: u64 = 5;
    pub const TUNE: u64 = 6;
    pub const INNER_SPLIT: u64 = 7;
    pub const BAGGING: u64 = 8;
    pub const BASE: u64 = 9;
    pub const CELL: u64 = 10;
    pub const SELECTION: u64 = 11;
    pub const BOOST: u64 = 12;
    pub const META: u64 = 13;
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a 64-bit key from a seed and a key path.
pub fn derive(seed: u64, keys: &[u64]) -> u64 {
    keys.iter().fold(splitmix(seed), |acc, &k| splitmix(acc ^ splitmix(k.wrapping_add(0x632B_E59B_D9B4_E019))))
}

pub fn substream(seed: u64, keys: &[u64]) -> StreamRng {
    ChaCha8Rng::seed_from_u64(derive(seed, keys))
}

/// Standard normal draw (Box-Muller, one value per call).
pub fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>(); // (0, 1]
    let u2: f64 = rng.gen::<f64>();
    crate::math::sqrt(-2.0 * crate::math::ln(u1)) * libm::cos(2.0 * core::f64::consts::PI * u2)
}

pub fn normal<R: Rng + ?Sized>(rng: &mut R, mean: f64, std: f64) -> f64 {
    mean + std * standard_normal(rng)
}

/// Fisher-Yates shuffle.
pub fn shuffle<T, R: Rng + ?Sized>(rng: &mut R, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = rng.gen_range(0..=i);
        items.swap(i, j);
    }
}
