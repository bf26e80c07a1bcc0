use crate::error::{Error, Result};
use crate::pattern::Pattern;
use crate::word::{check_rank, Letter, Word};

use super::{BallCache, TreeModel};

/// The whole Cayley tree of `F_n`.
#[derive(Debug)]
pub struct FullCayley {
    n: u8,
    cache: BallCache,
}

impl FullCayley {
    pub fn new(n: u8) -> Result<Self> {
        check_rank(n)?;
        Ok(FullCayley { n, cache: BallCache::new() })
    }
}

impl TreeModel for FullCayley {
    fn rank(&self) -> u8 {
        self.n
    }

    fn contains(&self, w: &Word) -> bool {
        w.max_index() <= self.n
    }

    fn full_beyond(&self, _w: &Word) -> bool {
        true
    }

    fn ball_cache(&self) -> &BallCache {
        &self.cache
    }
}

/// A finite pattern with a branch of the Cayley tree attached at a boundary
/// vertex `v`: all reduced words `v·d·x` where `x` does not start with `d⁻¹`.
/// `v` keeps exactly one edge into the branch.
#[derive(Debug)]
pub struct Grafted {
    pattern: Pattern,
    root: Word,
    stem: Word,
    cache: BallCache,
}

impl Grafted {
    pub fn new(pattern: Pattern, v: Word, direction: Letter) -> Result<Self> {
        if !pattern.contains(&v) {
            return Err(Error::Construction(format!("{v} is not a vertex of the pattern")));
        }
        if v.len() != pattern.radius() {
            return Err(Error::Construction(format!(
                "{v} is not on the metric boundary (radius {})",
                pattern.radius()
            )));
        }
        if direction.index() > pattern.rank() {
            return Err(Error::RankMismatch { expected: pattern.rank(), found: direction.index() });
        }
        if v.last() == Some(direction.inverse()) {
            return Err(Error::Construction(format!(
                "direction {direction} at {v} is occupied by the pattern"
            )));
        }
        let stem = v.times(direction);
        Ok(Grafted { pattern, root: v, stem, cache: BallCache::new() })
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn graft_vertex(&self) -> &Word {
        &self.root
    }

    /// First vertex of the attached branch.
    pub fn stem(&self) -> &Word {
        &self.stem
    }
}

impl TreeModel for Grafted {
    fn rank(&self) -> u8 {
        self.pattern.rank()
    }

    fn contains(&self, w: &Word) -> bool {
        w.has_prefix(&self.stem) || self.pattern.contains(w)
    }

    fn full_beyond(&self, w: &Word) -> bool {
        w.has_prefix(&self.stem)
    }

    fn ball_cache(&self) -> &BallCache {
        &self.cache
    }
}

/// The branch `L_2 = {e} ∪ {a·x : x reduced, x not starting with a⁻¹}` in `F_2`.
pub fn branch_tree_l2() -> Grafted {
    Grafted::new(Pattern::point(2), Word::identity(), Letter::positive(1))
        .expect("L2 construction is valid")
}
