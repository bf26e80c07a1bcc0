//! Infinite pointed trees, evaluated lazily through membership queries.
//!
//! Every model answers `contains(w)` for a reduced word; balls are built
//! from that by breadth-first growth and memoized per radius.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::pattern::{BallSource, ClopenBall, Pattern};
use crate::word::{Letter, Word};

mod cayley;
mod fusion;
mod sequence;
mod shift;
mod spec;
mod valence3;

pub use cayley::{branch_tree_l2, FullCayley, Grafted};
pub use fusion::Fusion;
pub use sequence::{Patched, Periodic, SeededRandom, SequenceSource, Shifted, Substitution};
pub use shift::ShiftPath;
pub use spec::parse_tree;
pub use valence3::SeededValence3;

/// Shared handle to a tree model.
pub type Tree = Arc<dyn TreeModel>;

/// An infinite subtree of the Cayley tree of `F_n` containing the identity.
pub trait TreeModel: Send + Sync + fmt::Debug {
    fn rank(&self) -> u8;

    /// Vertex membership. Callers only pass reduced words over `F_{rank}`.
    fn contains(&self, w: &Word) -> bool;

    /// True when every reduced word extending `w` (without cancelling its last
    /// letter) is a vertex. `false` is always a safe answer.
    fn full_beyond(&self, _w: &Word) -> bool {
        false
    }

    fn ball_cache(&self) -> &BallCache;

    /// The ball of radius `m` about the identity.
    fn ball(&self, m: usize) -> Arc<Pattern> {
        self.ball_cache().get_or_grow(m, |from| grow_ball(self, from, m))
    }

    fn clopen_ball(&self, m: usize) -> ClopenBall {
        ClopenBall::from_arc(self.ball(m))
    }
}

impl<T: TreeModel + ?Sized> BallSource for T {
    fn ball_pattern(&self, m: usize) -> Arc<Pattern> {
        self.ball(m)
    }
}

/// Per-model memo of balls keyed by radius.
#[derive(Default)]
pub struct BallCache {
    balls: Mutex<BTreeMap<usize, Arc<Pattern>>>,
}

impl BallCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn get_or_grow(
        &self,
        m: usize,
        grow: impl FnOnce(Option<&Pattern>) -> Pattern,
    ) -> Arc<Pattern> {
        let mut balls = self.balls.lock().expect("ball cache poisoned");
        if let Some(p) = balls.get(&m) {
            return p.clone();
        }
        if let Some((_, bigger)) = balls.range(m..).next() {
            let p = Arc::new(bigger.truncate(m));
            balls.insert(m, p.clone());
            return p;
        }
        let below = balls.range(..m).next_back().map(|(_, p)| p.clone());
        let p = Arc::new(grow(below.as_deref()));
        balls.insert(m, p.clone());
        p
    }
}

impl fmt::Debug for BallCache {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let radii: Vec<usize> = self.balls.lock().map(|b| b.keys().copied().collect()).unwrap_or_default();
        f.debug_struct("BallCache").field("radii", &radii).finish()
    }
}

/// Breadth-first growth from an optional smaller ball up to radius `m`.
fn grow_ball<T: TreeModel + ?Sized>(tree: &T, from: Option<&Pattern>, m: usize) -> Pattern {
    let n = tree.rank();
    let (mut vertices, start) = match from {
        Some(p) => (p.vertices().clone(), p.radius()),
        None => (BTreeSet::from([Word::identity()]), 0),
    };
    let mut level: Vec<Word> = vertices.iter().filter(|w| w.len() == start).cloned().collect();
    for _ in start..m {
        let mut next = Vec::new();
        for w in &level {
            for l in Letter::all(n) {
                if w.last() == Some(l.inverse()) {
                    continue;
                }
                let c = w.times(l);
                if tree.contains(&c) {
                    next.push(c);
                }
            }
        }
        vertices.extend(next.iter().cloned());
        level = next;
    }
    Pattern::new_unchecked(n, vertices)
}

/// The ball of radius `m` about the vertex `g`, translated so `g` becomes the
/// identity: the radius-`m` ball of `(T, e)·g`.
///
/// Panics if `g` is not a vertex.
pub fn ball_at(tree: &(impl TreeModel + ?Sized), g: &Word, m: usize) -> Pattern {
    assert!(tree.contains(g), "{g} is not a vertex of the tree");
    let n = tree.rank();
    let mut vertices = BTreeSet::from([Word::identity()]);
    let mut level = vec![Word::identity()];
    for _ in 0..m {
        let mut next = Vec::new();
        for x in &level {
            for l in Letter::all(n) {
                if x.last() == Some(l.inverse()) {
                    continue;
                }
                let y = x.times(l);
                if tree.contains(&g.multiply(&y)) {
                    next.push(y);
                }
            }
        }
        vertices.extend(next.iter().cloned());
        level = next;
    }
    Pattern::new_unchecked(n, vertices)
}

/// Valence of a vertex in the tree.
pub fn valence(tree: &(impl TreeModel + ?Sized), w: &Word) -> usize {
    Letter::all(tree.rank()).filter(|&l| tree.contains(&w.times(l))).count()
}

/// `(T, e)·g`: the same tree seen from the vertex `g`.
#[derive(Debug)]
pub struct Rebased {
    base: Tree,
    g: Word,
    cache: BallCache,
}

impl Rebased {
    pub fn new(base: Tree, g: Word) -> crate::Result<Self> {
        if !base.contains(&g) {
            return Err(crate::Error::NotAVertex(g.to_string()));
        }
        Ok(Rebased { base, g, cache: BallCache::new() })
    }
}

impl TreeModel for Rebased {
    fn rank(&self) -> u8 {
        self.base.rank()
    }

    fn contains(&self, w: &Word) -> bool {
        self.base.contains(&self.g.multiply(w))
    }

    fn full_beyond(&self, w: &Word) -> bool {
        // descendants of w map onto descendants of g·w only when the last
        // letter survives the translation
        let gw = self.g.multiply(w);
        !w.is_identity() && gw.last() == w.last() && self.base.full_beyond(&gw)
    }

    fn ball_cache(&self) -> &BallCache {
        &self.cache
    }
}

/// Image of a tree in `X_2` (or any `X_k`) under a letterwise injection of
/// generators into `F_n`.
#[derive(Debug)]
pub struct Relabeled {
    base: Tree,
    map: Vec<u8>,
    inverse: Vec<u8>,
    n: u8,
    cache: BallCache,
}

impl Relabeled {
    pub fn new(base: Tree, map: Vec<u8>, n: u8) -> crate::Result<Self> {
        crate::pattern::check_injection(&map, base.rank(), n)?;
        let mut inverse = vec![0u8; n as usize + 1];
        for (i, &t) in map.iter().enumerate() {
            inverse[t as usize] = i as u8 + 1;
        }
        Ok(Relabeled { base, map, inverse, n, cache: BallCache::new() })
    }

    pub fn map(&self) -> &[u8] {
        &self.map
    }
}

impl TreeModel for Relabeled {
    fn rank(&self) -> u8 {
        self.n
    }

    fn contains(&self, w: &Word) -> bool {
        if w.letters().iter().any(|l| self.inverse[l.index() as usize] == 0) {
            return false;
        }
        self.base.contains(&w.relabel(|i| self.inverse[i as usize]))
    }

    fn ball_cache(&self) -> &BallCache {
        &self.cache
    }
}
