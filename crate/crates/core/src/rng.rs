//! Seeded random streams.
//!
//! Campaigns derive one independent ChaCha stream per (seed, index) pair so
//! results do not depend on how trials are scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type SepRng = ChaCha8Rng;

/// Independent substream `index` of the stream rooted at `seed`.
pub fn substream(seed: u64, index: u64) -> SepRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Substream for a nested campaign level (e.g. restart `index` inside trial `outer`).
pub fn nested(seed: u64, outer: u64, index: u64) -> SepRng {
    let mixed = seed ^ outer.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    substream(mixed, index)
}

/// A 64-bit seed for a nested campaign level, drawn from [`nested`].
pub fn child_seed(seed: u64, outer: u64, index: u64) -> u64 {
    nested(seed, outer, index).random()
}

pub fn gaussian_vec<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

/// Uniform point on the unit sphere in `n` dimensions.
pub fn unit_vec<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let mut v = gaussian_vec(rng, n);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-300 {
            v.iter_mut().for_each(|x| *x /= norm);
            return v;
        }
    }
}
