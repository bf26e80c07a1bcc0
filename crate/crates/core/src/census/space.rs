use std::fmt;

use crate::error::{Error, Result};
use crate::pattern::{check_injection, Pattern};
use crate::trees::{parse_tree, Tree};
use crate::word::{check_rank, Letter, Word};

/// How far an orbit exploration reaches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Depth {
    /// Vertices `g` with `|g| <= R`.
    Fixed(usize),
    /// `R = m + offset` for a radius-`m` query.
    Ahead(usize),
}

impl Depth {
    pub fn at(self, m: usize) -> usize {
        match self {
            Depth::Fixed(r) => r,
            Depth::Ahead(k) => m + k,
        }
    }
}

/// The invariant subsets of `X_n` the census knows how to enumerate.
#[derive(Clone)]
pub enum SpaceSpec {
    /// All of `X_n`.
    Full { n: u8 },
    /// Trees in `X_2` with every vertex of valence 3.
    Valence3,
    /// Image of the full shift on `alphabet` symbols under the path
    /// embedding with generator assignment `alpha`.
    Shift { alphabet: usize, alpha: Vec<u8>, n: u8 },
    /// Orbit closure of one tree, explored to a finite depth.
    Orbit { tree: Tree, label: String, depth: Depth },
}

impl SpaceSpec {
    pub fn full(n: u8) -> Result<Self> {
        check_rank(n)?;
        Ok(SpaceSpec::Full { n })
    }

    pub fn shift(alphabet: usize, alpha: Vec<u8>, n: u8) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::InvalidArgument("empty alphabet".into()));
        }
        if alphabet > n as usize {
            return Err(Error::InvalidArgument(format!("alphabet of size {alphabet} does not embed into F_{n}")));
        }
        check_injection(&alpha, alphabet as u8, n)?;
        Ok(SpaceSpec::Shift { alphabet, alpha, n })
    }

    pub fn orbit(tree: Tree, label: impl Into<String>, depth: Depth) -> Result<Self> {
        if let Depth::Fixed(0) = depth {
            return Err(Error::InvalidArgument("orbit exploration depth must be >= 1".into()));
        }
        Ok(SpaceSpec::Orbit { tree, label: label.into(), depth })
    }

    /// Parses `full:n=2`, `valence3`, `shift:k=2[:alpha=1,2][:n=2]`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("space spec {s:?}: {why}"));
        let mut fields = s.split(':');
        match fields.next().unwrap_or_default() {
            "full" => {
                let n = fields
                    .next()
                    .and_then(|f| f.strip_prefix("n="))
                    .ok_or_else(|| bad("expected full:n=<rank>"))?
                    .parse()
                    .map_err(|_| bad("bad rank"))?;
                if fields.next().is_some() {
                    return Err(bad("trailing fields"));
                }
                SpaceSpec::full(n)
            }
            "valence3" if s == "valence3" => Ok(SpaceSpec::Valence3),
            "shift" => {
                let mut k = None;
                let mut alpha = None;
                let mut n = None;
                for f in fields {
                    if let Some(v) = f.strip_prefix("k=") {
                        k = Some(v.parse::<usize>().map_err(|_| bad("bad k"))?);
                    } else if let Some(v) = f.strip_prefix("alpha=") {
                        alpha = Some(
                            v.split(',')
                                .map(|g| g.parse::<u8>().map_err(|_| bad("bad alpha")))
                                .collect::<Result<Vec<_>>>()?,
                        );
                    } else if let Some(v) = f.strip_prefix("n=") {
                        n = Some(v.parse::<u8>().map_err(|_| bad("bad n"))?);
                    } else {
                        return Err(bad(&format!("unknown field {f:?}")));
                    }
                }
                let k = k.ok_or_else(|| bad("missing k=<alphabet size>"))?;
                let alpha = alpha.unwrap_or_else(|| (1..=k as u8).collect());
                let n = n.unwrap_or_else(|| alpha.iter().copied().max().unwrap_or(2).max(2));
                SpaceSpec::shift(k, alpha, n)
            }
            _ => Err(bad("unknown space")),
        }
    }

    /// Orbit closure of a tree given by a tree spec string.
    pub fn parse_orbit(tree_spec: &str, depth: Depth, seed: u64) -> Result<Self> {
        let tree = parse_tree(tree_spec, seed)?;
        // `valence3` may fall back to the default seed, so the name records it
        let seeded = tree_spec.split(['|', ':']).any(|f| f == "valence3");
        let label = if seeded { format!("{tree_spec}#seed={seed}") } else { tree_spec.to_string() };
        SpaceSpec::orbit(tree, label, depth)
    }

    pub fn rank(&self) -> u8 {
        match self {
            SpaceSpec::Full { n } | SpaceSpec::Shift { n, .. } => *n,
            SpaceSpec::Valence3 => 2,
            SpaceSpec::Orbit { tree, .. } => tree.rank(),
        }
    }

    /// Stable name, used in outputs and cache keys.
    pub fn name(&self) -> String {
        match self {
            SpaceSpec::Full { n } => format!("full:n={n}"),
            SpaceSpec::Valence3 => "valence3".into(),
            SpaceSpec::Shift { alphabet, alpha, n } => {
                let a: Vec<String> = alpha.iter().map(u8::to_string).collect();
                format!("shift:k={alphabet}:alpha={}:n={n}", a.join(","))
            }
            SpaceSpec::Orbit { label, depth, .. } => match depth {
                Depth::Fixed(r) => format!("orbit:{label}:R={r}"),
                Depth::Ahead(k) => format!("orbit:{label}:R=m+{k}"),
            },
        }
    }

    /// Children choices at a boundary vertex `b` of a pattern, for the local
    /// spaces. Each choice is the list of new directions leaving `b`.
    pub(crate) fn child_options(&self, b: &Word) -> Vec<Vec<Letter>> {
        let n = self.rank();
        let outward: Vec<Letter> = Letter::all(n).filter(|&l| b.last() != Some(l.inverse())).collect();
        match self {
            SpaceSpec::Full { .. } => subsets(&outward, None),
            SpaceSpec::Valence3 => subsets(&outward, Some(if b.is_identity() { 3 } else { 2 })),
            SpaceSpec::Shift { alpha, .. } => {
                let gens = alpha.iter().map(|&i| Letter::positive(i));
                match b.last() {
                    None => {
                        let mut out = Vec::new();
                        for x in gens.clone() {
                            for y in gens.clone() {
                                let mut c = vec![x, y.inverse()];
                                c.sort();
                                out.push(c);
                            }
                        }
                        out
                    }
                    Some(l) if l.is_positive() => gens.map(|g| vec![g]).collect(),
                    Some(_) => gens.map(|g| vec![g.inverse()]).collect(),
                }
            }
            SpaceSpec::Orbit { .. } => unreachable!("orbit spaces are not refined locally"),
        }
    }

    /// Whether `p` satisfies the local constraints of this space below its
    /// radius. Orbit spaces are checked by the caller.
    pub(crate) fn locally_valid(&self, p: &Pattern) -> std::result::Result<(), String> {
        if p.rank() != self.rank() {
            return Err(format!("pattern rank {} differs from space rank {}", p.rank(), self.rank()));
        }
        let radius = p.radius();
        match self {
            SpaceSpec::Full { .. } | SpaceSpec::Orbit { .. } => Ok(()),
            SpaceSpec::Valence3 => {
                for v in p.vertices().iter().filter(|v| v.len() < radius) {
                    let val = p.valence(v);
                    if val != 3 {
                        return Err(format!("interior vertex {v} has valence {val}"));
                    }
                }
                Ok(())
            }
            SpaceSpec::Shift { alpha, .. } => {
                for v in p.vertices().iter().filter(|v| v.len() < radius) {
                    let mut incoming = 0;
                    let mut outgoing = 0;
                    for l in Letter::all(p.rank()) {
                        if !p.contains(&v.times(l)) {
                            continue;
                        }
                        if !alpha.contains(&l.index()) {
                            return Err(format!("edge at {v} labelled {} outside the image", l.index()));
                        }
                        if l.is_positive() {
                            outgoing += 1;
                        } else {
                            incoming += 1;
                        }
                    }
                    if incoming != 1 || outgoing != 1 {
                        return Err(format!("vertex {v} has {incoming} incoming and {outgoing} outgoing edges"));
                    }
                }
                Ok(())
            }
        }
    }
}

/// Subsets of `items` (optionally of a fixed size), in bitmask order.
fn subsets(items: &[Letter], size: Option<usize>) -> Vec<Vec<Letter>> {
    (0u32..1 << items.len())
        .filter(|mask| size.map_or(true, |s| mask.count_ones() as usize == s))
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &l)| l)
                .collect()
        })
        .collect()
}

impl fmt::Debug for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
