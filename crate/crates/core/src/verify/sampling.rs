//! Reproducible quasi-random points: a Halton sequence with one random
//! Cranley–Patterson shift drawn from a seeded ChaCha stream.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BASES: [u32; 3] = [2, 3, 5];

fn radical_inverse(mut i: u64, base: u32) -> f64 {
    let b = base as u64;
    let (mut inv, mut f) = (0.0, 1.0 / base as f64);
    while i > 0 {
        inv += (i % b) as f64 * f;
        i /= b;
        f /= base as f64;
    }
    inv
}

/// `n` points of the box `lo..hi` (per axis), determined by `seed`.
pub fn quasi_random_points(n: usize, lo: [f64; 3], hi: [f64; 3], seed: u64) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: [f64; 3] = [rng.gen(), rng.gen(), rng.gen()];
    (1..=n as u64)
        .map(|i| {
            let mut p = [0.0; 3];
            for k in 0..3 {
                let t = (radical_inverse(i, BASES[k]) + shift[k]).fract();
                p[k] = lo[k] + (hi[k] - lo[k]) * t;
            }
            p
        })
        .collect()
}
