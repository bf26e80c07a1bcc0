//! Orbit exploration: distinct radius-`ℓ` patterns seen from the vertices
//! of one tree.
//!
//! Balls are identified through hash-consed shape ids. The shape of the part
//! of the tree hanging from `w` away from one neighbour, cut at depth `r`, is
//! interned from the sorted list of `(direction, child shape)` pairs, so two
//! rebased balls are equal exactly when their root ids are. Regions the model
//! reports as full Cayley branches collapse to a precomputed shape.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pattern::Pattern;
use crate::trees::{ball_at, TreeModel};
use crate::word::{Letter, Word};

type ShapeId = u32;

struct ShapeInterner<'t, T: TreeModel + ?Sized> {
    tree: &'t T,
    table: HashMap<Vec<(Letter, ShapeId)>, ShapeId>,
    halves: HashMap<(Word, Option<Letter>, usize), ShapeId>,
    full: HashMap<(Option<Letter>, usize), ShapeId>,
}

impl<'t, T: TreeModel + ?Sized> ShapeInterner<'t, T> {
    fn new(tree: &'t T) -> Self {
        ShapeInterner { tree, table: HashMap::new(), halves: HashMap::new(), full: HashMap::new() }
    }

    fn intern(&mut self, children: Vec<(Letter, ShapeId)>) -> ShapeId {
        let next = self.table.len() as ShapeId;
        *self.table.entry(children).or_insert(next)
    }

    /// Shape of the full Cayley branch leaving through every direction but `from`.
    fn full_half(&mut self, from: Option<Letter>, r: usize) -> ShapeId {
        if let Some(&id) = self.full.get(&(from, r)) {
            return id;
        }
        let mut children = Vec::new();
        if r > 0 {
            for d in Letter::all(self.tree.rank()).filter(|&d| Some(d) != from) {
                children.push((d, self.full_half(Some(d.inverse()), r - 1)));
            }
        }
        let id = self.intern(children);
        self.full.insert((from, r), id);
        id
    }

    /// Shape seen from `w` when the edge towards `w·from` is removed.
    fn half(&mut self, w: &Word, from: Option<Letter>, r: usize) -> ShapeId {
        if r == 0 {
            return self.intern(Vec::new());
        }
        let outward = w.last().is_some() && from == w.last().map(Letter::inverse);
        if outward && self.tree.full_beyond(w) {
            return self.full_half(from, r);
        }
        let key = (w.clone(), from, r);
        if let Some(&id) = self.halves.get(&key) {
            return id;
        }
        let mut children = Vec::new();
        for d in Letter::all(self.tree.rank()).filter(|&d| Some(d) != from) {
            let c = w.times(d);
            if self.tree.contains(&c) {
                children.push((d, self.half(&c, Some(d.inverse()), r - 1)));
            }
        }
        let id = self.intern(children);
        self.halves.insert(key, id);
        id
    }

    fn ball(&mut self, g: &Word, r: usize) -> ShapeId {
        self.half(g, None, r)
    }
}

/// Result of [`orbit_cover_count`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCount {
    pub radius: usize,
    pub depth: usize,
    /// Distinct radius-`radius` patterns at vertices with `|g| <= depth`.
    pub count: usize,
    /// The same count for `|g| <= depth - 1`.
    pub previous: usize,
    /// `count == previous`: no new pattern appeared at the last depth.
    pub stabilized: bool,
}

fn check_depth(radius: usize, depth: usize) -> Result<()> {
    if depth < radius {
        return Err(Error::InvalidArgument(format!(
            "exploration depth R = {depth} must be at least the radius {radius}"
        )));
    }
    Ok(())
}

/// Representatives of each distinct rebased ball, keyed by shape, plus the
/// count of shapes seen before the last depth.
fn explore<T: TreeModel + ?Sized>(tree: &T, radius: usize, depth: usize) -> (Vec<Word>, usize) {
    let mut shapes = ShapeInterner::new(tree);
    let mut first_seen: HashMap<ShapeId, Word> = HashMap::new();
    let vertices = tree.ball(depth);
    let (inner, outer): (Vec<&Word>, Vec<&Word>) = vertices.vertices().iter().partition(|g| g.len() < depth);
    for g in inner {
        let id = shapes.ball(g, radius);
        first_seen.entry(id).or_insert_with(|| g.clone());
    }
    let previous = first_seen.len();
    for g in outer {
        let id = shapes.ball(g, radius);
        first_seen.entry(id).or_insert_with(|| g.clone());
    }
    let mut reps: Vec<Word> = first_seen.into_values().collect();
    reps.sort();
    (reps, previous)
}

/// Number of distinct radius-`radius` patterns of `(T, e)·g` over vertices
/// `g` with `|g| <= depth`, with the stabilization flag.
pub fn orbit_cover_count<T: TreeModel + ?Sized>(tree: &T, radius: usize, depth: usize) -> Result<OrbitCount> {
    check_depth(radius, depth)?;
    let (reps, previous) = explore(tree, radius, depth);
    Ok(OrbitCount { radius, depth, count: reps.len(), previous, stabilized: reps.len() == previous })
}

/// The distinct patterns themselves, canonically ordered.
pub fn orbit_patterns<T: TreeModel + ?Sized>(tree: &T, radius: usize, depth: usize) -> Result<Vec<Pattern>> {
    check_depth(radius, depth)?;
    let (reps, _) = explore(tree, radius, depth);
    let mut out: Vec<Pattern> = reps.iter().map(|g| ball_at(tree, g, radius)).collect();
    out.sort_by_cached_key(Pattern::output_key);
    Ok(out)
}

/// Brute-force count: builds every rebased ball as an explicit vertex set.
/// Returns the counts at `depth` and `depth - 1`.
pub fn orbit_cover_count_direct<T: TreeModel + ?Sized>(tree: &T, radius: usize, depth: usize) -> Result<(usize, usize)> {
    check_depth(radius, depth)?;
    let vertices = tree.ball(depth);
    let (inner, outer): (Vec<&Word>, Vec<&Word>) = vertices.vertices().iter().partition(|g| g.len() < depth);
    let mut seen: BTreeSet<Pattern> = inner.into_iter().map(|g| ball_at(tree, g, radius)).collect();
    let previous = seen.len();
    seen.extend(outer.into_iter().map(|g| ball_at(tree, g, radius)));
    Ok((seen.len(), previous))
}

/// A witness for the fusion contract: the vertex `g` of the fused tree whose
/// rebased radius-`k` ball equals the radius-`k` ball of part `part`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionWitness {
    pub k: usize,
    pub part: usize,
    pub vertex: Option<String>,
}

/// Searches the vertices of `fused` with `|g| <= search_radius`, in shortlex
/// order, for witnesses at every `k <= depth` and every part.
pub fn fusion_witnesses<F, P>(fused: &F, parts: &[&P], depth: usize, search_radius: usize) -> Vec<FusionWitness>
where
    F: TreeModel + ?Sized,
    P: TreeModel + ?Sized,
{
    let targets: Vec<Vec<std::sync::Arc<Pattern>>> =
        parts.iter().map(|t| (0..=depth).map(|k| t.ball(k)).collect()).collect();
    let mut found: BTreeMap<(usize, usize), Word> = BTreeMap::new();
    let total = (depth + 1) * parts.len();
    for g in fused.ball(search_radius).vertices() {
        if found.len() == total {
            break;
        }
        let around = ball_at(fused, g, depth);
        for (i, balls) in targets.iter().enumerate() {
            for (k, target) in balls.iter().enumerate() {
                if found.contains_key(&(k, i)) {
                    continue;
                }
                if around.truncate(k) == **target {
                    found.insert((k, i), g.clone());
                }
            }
        }
    }
    (1..=depth)
        .flat_map(|k| (0..parts.len()).map(move |i| (k, i)))
        .map(|(k, i)| FusionWitness { k, part: i + 1, vertex: found.get(&(k, i)).map(Word::to_string) })
        .collect()
}
