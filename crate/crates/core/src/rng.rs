//! Seed splitting.
//!
//! A run has a single user seed. Each sampling site draws from its own ChaCha
//! stream, `ChaCha8Rng::seed_from_u64(seed)` with `set_stream(site)`, so the
//! draws at one site never depend on how many draws another site made or on
//! evaluation order. Recursive calls shift every site by [`RECURSION_STRIDE`]
//! per level.
//!
//! Site assignments, in the order a construction consumes them:
//!
//! | site | use |
//! |------|-----|
//! | 0 | instance generation (permutation, edges) |
//! | 1 | instance weights |
//! | 2 | vertex sample `V'` |
//! | 3 | path sample `P'` |
//! | 4 | outer vertex sample of the large-parameter reductions |

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const GENERATE: u64 = 0;
pub const WEIGHTS: u64 = 1;
pub const VERTEX_SAMPLE: u64 = 2;
pub const PATH_SAMPLE: u64 = 3;
pub const OUTER_SAMPLE: u64 = 4;

pub const RECURSION_STRIDE: u64 = 16;

/// A seed plus the recursion depth it is being used at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeedSplit {
    seed: u64,
    depth: u64,
}

impl SeedSplit {
    pub fn new(seed: u64) -> Self {
        SeedSplit { seed, depth: 0 }
    }

    pub fn seed(self) -> u64 {
        self.seed
    }

    pub fn nested(self) -> Self {
        SeedSplit {
            seed: self.seed,
            depth: self.depth + 1,
        }
    }

    pub fn stream(self, site: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(site + self.depth * RECURSION_STRIDE);
        rng
    }
}

/// `min(1, x)` clamped to `[0, 1]`.
pub fn capped_probability(x: f64) -> f64 {
    if x.is_nan() {
        0.0
    } else {
        x.clamp(0.0, 1.0)
    }
}

/// Bernoulli-sample indices `0..len` in increasing order.
pub fn sample_indices(rng: &mut ChaCha8Rng, len: usize, p: f64) -> Vec<usize> {
    use rand::Rng;
    let p = capped_probability(p);
    (0..len).filter(|_| rng.gen_bool(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngCore;

    #[test]
    fn sites_are_independent_streams() {
        let s = SeedSplit::new(7);
        let a: Vec<u32> = {
            let mut r = s.stream(VERTEX_SAMPLE);
            (0..4).map(|_| r.next_u32()).collect()
        };
        let b: Vec<u32> = {
            let mut r = s.stream(PATH_SAMPLE);
            (0..4).map(|_| r.next_u32()).collect()
        };
        let a2: Vec<u32> = {
            let mut r = s.stream(VERTEX_SAMPLE);
            (0..4).map(|_| r.next_u32()).collect()
        };
        assert_ne!(a, b);
        assert_eq!(a, a2);
        assert_ne!(
            s.nested().stream(VERTEX_SAMPLE).next_u64(),
            s.stream(VERTEX_SAMPLE).next_u64()
        );
    }

    #[test]
    fn full_probability_keeps_everything() {
        let mut r = SeedSplit::new(1).stream(VERTEX_SAMPLE);
        assert_eq!(sample_indices(&mut r, 10, 3.5), (0..10).collect::<Vec<_>>());
        assert!(sample_indices(&mut r, 10, 0.0).is_empty());
    }
}
