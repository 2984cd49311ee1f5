//! Index sampling for verification sweeps: exhaustive when small, seeded otherwise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Pairs `(i, j)` in `0..d × 0..d`. All of them if there are at most `budget`,
/// otherwise `budget` pairs drawn from a generator seeded with `seed`.
pub fn index_pairs(d: usize, budget: usize, seed: u64) -> Vec<(usize, usize)> {
    if d == 0 {
        return Vec::new();
    }
    if d.saturating_mul(d) <= budget {
        return (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..budget).map(|_| (rng.gen_range(0..d), rng.gen_range(0..d))).collect()
}

/// At most `budget` indices from `0..d`, all of them when `d ≤ budget`.
pub fn indices(d: usize, budget: usize, seed: u64) -> Vec<usize> {
    if d <= budget {
        return (0..d).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..budget).map(|_| rng.gen_range(0..d)).collect()
}
