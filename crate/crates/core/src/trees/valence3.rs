use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::util::{mix64, word_key};
use crate::word::{Letter, Word};

use super::{BallCache, TreeModel};

/// A tree in `X_2` with every vertex of valence 3.
///
/// The identity keeps 3 of its 4 edges; every other vertex keeps 2 of its 3
/// outward edges. The dropped direction at each vertex is drawn from a
/// generator seeded by `(seed, vertex)`, so membership is a pure function.
#[derive(Debug)]
pub struct SeededValence3 {
    seed: u64,
    outer: Option<(usize, u64)>,
    cache: BallCache,
}

impl SeededValence3 {
    pub fn new(seed: u64) -> Self {
        SeededValence3 { seed, outer: None, cache: BallCache::new() }
    }

    /// Uses `seed` for choices at vertices with `|w| < depth` and
    /// `outer_seed` beyond, so trees sharing `seed` and `depth` agree on the
    /// ball of radius `depth`.
    pub fn layered(seed: u64, depth: usize, outer_seed: u64) -> Self {
        SeededValence3 { seed, outer: Some((depth, outer_seed)), cache: BallCache::new() }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The outward direction at `w` that is not an edge of the tree.
    fn dropped(&self, w: &Word) -> Letter {
        let outward: Vec<Letter> = Letter::all(2).filter(|&l| w.last() != Some(l.inverse())).collect();
        let seed = match self.outer {
            Some((depth, outer)) if w.len() >= depth => outer,
            _ => self.seed,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(mix64(seed, word_key(w)));
        outward[rng.gen_range(0..outward.len())]
    }
}

impl TreeModel for SeededValence3 {
    fn rank(&self) -> u8 {
        2
    }

    fn contains(&self, w: &Word) -> bool {
        if w.max_index() > 2 {
            return false;
        }
        (0..w.len()).all(|i| self.dropped(&w.prefix(i)) != w.letters()[i])
    }

    fn ball_cache(&self) -> &BallCache {
        &self.cache
    }
}
