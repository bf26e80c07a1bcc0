//! Finite patterns (balls of pointed trees), the rebasing action and the
//! ball ultrametric.
//!
//! A pattern is a prefix-closed set of reduced words containing the
//! identity. In the Cayley tree of a free group such a set spans a subtree,
//! and two labelled pointed subtrees are isomorphic exactly when their
//! vertex sets coincide, so pattern identity is plain set equality.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::word::{check_rank, Letter, Word};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    n: u8,
    vertices: BTreeSet<Word>,
}

#[derive(Serialize, Deserialize)]
struct PatternRepr {
    n: u8,
    vertices: Vec<String>,
}

impl Pattern {
    /// Validates and builds a pattern over `F_n`.
    pub fn new(n: u8, vertices: BTreeSet<Word>) -> Result<Self> {
        check_rank(n)?;
        if !vertices.contains(&Word::identity()) {
            return Err(Error::InvalidPattern("missing the identity".into()));
        }
        for w in &vertices {
            if w.max_index() > n {
                return Err(Error::RankMismatch { expected: n, found: w.max_index() });
            }
            if let Some(p) = w.parent() {
                if !vertices.contains(&p) {
                    return Err(Error::InvalidPattern(format!("{w} present without its parent {p}")));
                }
            }
        }
        Ok(Pattern { n, vertices })
    }

    /// Builds without validation; callers guarantee the invariants.
    pub(crate) fn new_unchecked(n: u8, vertices: BTreeSet<Word>) -> Self {
        debug_assert!(Pattern::new(n, vertices.clone()).is_ok());
        Pattern { n, vertices }
    }

    /// The single-vertex pattern `{e}`.
    pub fn point(n: u8) -> Self {
        Pattern { n, vertices: BTreeSet::from([Word::identity()]) }
    }

    pub fn from_words<I, S>(n: u8, words: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let vertices = words
            .into_iter()
            .map(|s| s.as_ref().parse::<Word>())
            .collect::<Result<BTreeSet<_>>>()?;
        Pattern::new(n, vertices)
    }

    pub fn rank(&self) -> u8 {
        self.n
    }

    pub fn vertices(&self) -> &BTreeSet<Word> {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.vertices.contains(w)
    }

    /// Largest vertex length.
    pub fn radius(&self) -> usize {
        // shortlex order puts the longest word last
        self.vertices.iter().next_back().map_or(0, Word::len)
    }

    /// Vertices at exactly distance `r` from the identity.
    pub fn sphere(&self, r: usize) -> impl Iterator<Item = &Word> {
        self.vertices.iter().filter(move |w| w.len() == r)
    }

    /// The metric boundary: vertices at distance `radius()`.
    pub fn boundary(&self) -> Vec<Word> {
        self.sphere(self.radius()).cloned().collect()
    }

    /// Number of neighbours of `w` inside the pattern.
    pub fn valence(&self, w: &Word) -> usize {
        Letter::all(self.n).filter(|&l| self.vertices.contains(&w.times(l))).count()
    }

    pub fn truncate(&self, m: usize) -> Pattern {
        Pattern {
            n: self.n,
            vertices: self.vertices.iter().filter(|w| w.len() <= m).cloned().collect(),
        }
    }

    /// Moves the basepoint to `g`: the vertex set `{g⁻¹ w}`.
    pub fn rebase(&self, g: &Word) -> Result<Pattern> {
        if !self.vertices.contains(g) {
            return Err(Error::NotAVertex(g.to_string()));
        }
        let gi = g.invert();
        Ok(Pattern {
            n: self.n,
            vertices: self.vertices.iter().map(|w| gi.multiply(w)).collect(),
        })
    }

    /// Letterwise relabelling of generators through an injection
    /// `{1..rank} → {1..target}`.
    pub fn relabel(&self, map: &[u8], target: u8) -> Result<Pattern> {
        let map = check_injection(map, self.n, target)?;
        Ok(Pattern {
            n: target,
            vertices: self.vertices.iter().map(|w| w.relabel(|i| map[i as usize - 1])).collect(),
        })
    }

    /// Canonical serialization: compact JSON with shortlex-sorted vertices.
    pub fn to_canonical_json(&self) -> String {
        let repr = PatternRepr {
            n: self.n,
            vertices: self.vertices.iter().map(|w| w.to_string()).collect(),
        };
        serde_json::to_string(&repr).expect("pattern serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let repr: PatternRepr =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("pattern json: {e}")))?;
        Pattern::from_words(repr.n, repr.vertices)
    }

    /// SHA-256 of the canonical serialization, hex encoded.
    pub fn content_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_canonical_json().as_bytes()))
    }

    /// Sort key for canonical output: shortlex on the serialized bytes.
    pub fn output_key(&self) -> (usize, String) {
        let s = self.to_canonical_json();
        (s.len(), s)
    }
}

/// Checks that `map` is an injection `{1..source} → {1..target}`.
pub(crate) fn check_injection(map: &[u8], source: u8, target: u8) -> Result<&[u8]> {
    check_rank(target)?;
    if map.len() != source as usize {
        return Err(Error::InvalidArgument(format!(
            "relabelling must list {source} images, got {}",
            map.len()
        )));
    }
    let mut seen = BTreeSet::new();
    for &i in map {
        if i == 0 || i > target {
            return Err(Error::InvalidArgument(format!("image {i} outside 1..={target}")));
        }
        if !seen.insert(i) {
            return Err(Error::InvalidArgument(format!("relabelling is not injective ({i} repeated)")));
        }
    }
    Ok(map)
}

impl PartialOrd for Pattern {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pattern {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rank(), self.vertices()).cmp(&(other.rank(), other.vertices()))
    }
}

impl Serialize for Pattern {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PatternRepr { n: self.n, vertices: self.vertices.iter().map(|w| w.to_string()).collect() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Pattern {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PatternRepr::deserialize(deserializer)?;
        Pattern::from_words(repr.n, repr.vertices).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_json())
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_json())
    }
}

/// The clopen set of trees whose radius-`m` ball is a given pattern.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ClopenBall {
    pattern: Arc<Pattern>,
}

impl ClopenBall {
    /// The pattern must reach its radius; an empty boundary can't come from an
    /// infinite tree.
    pub fn new(pattern: Pattern, m: usize) -> Result<Self> {
        if pattern.radius() != m {
            return Err(Error::InvalidPattern(format!(
                "ball of radius {m} needs a vertex at distance {m}, pattern radius is {}",
                pattern.radius()
            )));
        }
        Ok(ClopenBall { pattern: Arc::new(pattern) })
    }

    pub fn from_arc(pattern: Arc<Pattern>) -> Self {
        ClopenBall { pattern }
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn radius(&self) -> usize {
        self.pattern.radius()
    }

    /// Whether a tree with the given ball of radius `>= self.radius()` lies in this set.
    pub fn contains_tree(&self, source: &(impl BallSource + ?Sized)) -> bool {
        *source.ball_pattern(self.radius()) == *self.pattern
    }
}

/// `b1 ⊆ b2` as sets of trees.
pub fn ball_containment(b1: &ClopenBall, b2: &ClopenBall) -> bool {
    let (m1, m2) = (b1.radius(), b2.radius());
    m1 >= m2 && b1.pattern.truncate(m2) == *b2.pattern
}

/// Drops every ball contained in another one. In an ultrametric space any two
/// balls are nested or disjoint, so the result is a partition of the union.
///
/// Output order: increasing radius, then canonical pattern order.
pub fn partition_reduce(cover: &[ClopenBall]) -> Vec<ClopenBall> {
    let mut sorted: Vec<&ClopenBall> = cover.iter().collect();
    sorted.sort_by_cached_key(|b| (b.radius(), b.pattern.output_key()));
    let mut kept: Vec<ClopenBall> = Vec::new();
    for b in sorted {
        if !kept.iter().any(|k| ball_containment(b, k)) {
            kept.push(b.clone());
        }
    }
    kept
}

/// Anything that can report its ball of a given radius about the identity.
pub trait BallSource {
    fn ball_pattern(&self, m: usize) -> Arc<Pattern>;
}

impl BallSource for Pattern {
    fn ball_pattern(&self, m: usize) -> Arc<Pattern> {
        Arc::new(self.truncate(m))
    }
}

/// Result of comparing two trees up to a cap. The metric is `e^{-r}`; only
/// the exponent is ever stored.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Agreement {
    /// Balls agree up to exactly this radius and differ one step further.
    Exact(usize),
    /// Balls agree at the cap; the true exponent is at least this.
    AtLeast(usize),
}

impl Agreement {
    /// The exponent as a lower bound.
    pub fn radius(self) -> usize {
        match self {
            Agreement::Exact(r) | Agreement::AtLeast(r) => r,
        }
    }

    pub fn is_capped(self) -> bool {
        matches!(self, Agreement::AtLeast(_))
    }

    /// `e^{-r}`, for display only.
    pub fn distance(self) -> f64 {
        (-(self.radius() as f64)).exp()
    }
}

impl fmt::Display for Agreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Agreement::Exact(r) => write!(f, "{r}"),
            Agreement::AtLeast(r) => write!(f, ">={r}"),
        }
    }
}

/// Largest `r <= cap` at which the two balls coincide.
pub fn agreement_radius(
    a: &(impl BallSource + ?Sized),
    b: &(impl BallSource + ?Sized),
    cap: usize,
) -> Agreement {
    let pa = a.ball_pattern(cap);
    let pb = b.ball_pattern(cap);
    pattern_agreement(&pa, &pb, cap)
}

/// Agreement radius of two patterns both known to radius at least `cap`.
pub fn pattern_agreement(pa: &Pattern, pb: &Pattern, cap: usize) -> Agreement {
    // first length at which the vertex sets differ
    let first_diff = pa
        .vertices()
        .symmetric_difference(pb.vertices())
        .filter(|w| w.len() <= cap)
        .map(Word::len)
        .min();
    match first_diff {
        None => Agreement::AtLeast(cap),
        Some(l) => Agreement::Exact(l - 1),
    }
}

/// Same as [`agreement_radius`]; named for the metric `d = e^{-r}`.
pub fn distance_exponent(
    a: &(impl BallSource + ?Sized),
    b: &(impl BallSource + ?Sized),
    cap: usize,
) -> Agreement {
    agreement_radius(a, b, cap)
}
