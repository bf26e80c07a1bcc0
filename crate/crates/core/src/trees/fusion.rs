//! Fusion of two trees into one whose orbit sees both.
//!
//! Layout, with `a`, `b` the first two positive generators:
//!
//! ```text
//!   spine      a^j, j >= 0
//!   guard      a^j b^i, 1 <= i <= j            (j >= 1)
//!   copy j     a^j b^j d⁻¹ u⁻¹ x,  x in B_j
//! ```
//!
//! `B_j` is the radius-`j` ball of `T1` for even `j` and of `T2` for odd `j`,
//! `u` is its first boundary vertex and `d` the first outward direction at
//! `u` other than `b`. The copy hangs from the guard by `u`, so its own
//! basepoint `c_j = a^j b^j d⁻¹ u⁻¹` is at distance `j + 1` from everything
//! outside the copy and the radius-`k` ball of the fused tree at `c_j` is
//! exactly `B_j` truncated to `k`, for every `k <= j`.
//!
//! Fusing a tree with itself (the same shared handle twice) gives the tree
//! back unchanged.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::pattern::Pattern;
use crate::word::{Letter, Word};

use super::{BallCache, Tree, TreeModel};

#[derive(Debug)]
struct Slot {
    ball: Arc<Pattern>,
    hang: Word,
    exit: Letter,
}

#[derive(Debug)]
pub struct Fusion {
    first: Tree,
    second: Tree,
    depth: usize,
    identical: bool,
    slots: Mutex<BTreeMap<usize, Arc<Slot>>>,
    cache: BallCache,
}

impl Fusion {
    /// `depth` is the largest witness radius the caller intends to check.
    pub fn new(first: Tree, second: Tree, depth: usize) -> Result<Self> {
        if depth < 1 {
            return Err(Error::InvalidArgument("fusion depth K must be >= 1".into()));
        }
        if first.rank() != second.rank() {
            return Err(Error::RankMismatch { expected: first.rank(), found: second.rank() });
        }
        let identical = Arc::ptr_eq(&first, &second);
        Ok(Fusion { first, second, depth, identical, slots: Mutex::new(BTreeMap::new()), cache: BallCache::new() })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn parts(&self) -> (&Tree, &Tree) {
        (&self.first, &self.second)
    }

    /// The tree copied at spine index `j`.
    pub fn copied_at(&self, j: usize) -> &Tree {
        if j % 2 == 0 {
            &self.first
        } else {
            &self.second
        }
    }

    fn slot(&self, j: usize) -> Arc<Slot> {
        let mut slots = self.slots.lock().expect("fusion slots poisoned");
        slots
            .entry(j)
            .or_insert_with(|| {
                let ball = self.copied_at(j).ball(j);
                let hang = ball.boundary().into_iter().next().expect("infinite trees reach every radius");
                let b = Letter::positive(2);
                let exit = Letter::all(self.rank())
                    .find(|&l| hang.last() != Some(l.inverse()) && l != b)
                    .expect("rank >= 2 leaves an outward direction");
                Arc::new(Slot { ball, hang, exit })
            })
            .clone()
    }

    /// Basepoint of the copy at spine index `j >= 1`.
    pub fn copy_root(&self, j: usize) -> Word {
        let slot = self.slot(j);
        self.guard_end(j).times(slot.exit.inverse()).multiply(&slot.hang.invert())
    }

    fn guard_end(&self, j: usize) -> Word {
        let (a, b) = (Letter::positive(1), Letter::positive(2));
        Word::from_letters(std::iter::repeat(a).take(j).chain(std::iter::repeat(b).take(j)))
    }
}

impl TreeModel for Fusion {
    fn rank(&self) -> u8 {
        self.first.rank()
    }

    fn contains(&self, w: &Word) -> bool {
        if self.identical {
            return self.first.contains(w);
        }
        let (a, b) = (Letter::positive(1), Letter::positive(2));
        let letters = w.letters();
        let j = letters.iter().take_while(|&&l| l == a).count();
        let rest = &letters[j..];
        if rest.is_empty() {
            return true;
        }
        if j == 0 {
            return false;
        }
        let guard = j;
        if rest.len() <= guard {
            return rest.iter().all(|&l| l == b);
        }
        if !rest[..guard].iter().all(|&l| l == b) {
            return false;
        }
        let slot = self.slot(j);
        if rest[guard] != slot.exit.inverse() {
            return false;
        }
        let tail = Word::from_letters(rest[guard + 1..].iter().copied());
        slot.ball.contains(&slot.hang.multiply(&tail))
    }

    fn full_beyond(&self, w: &Word) -> bool {
        self.identical && self.first.full_beyond(w)
    }

    fn ball_cache(&self) -> &BallCache {
        &self.cache
    }
}
