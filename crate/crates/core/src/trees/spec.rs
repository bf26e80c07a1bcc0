//! Compact tree descriptions used on the command line:
//!
//! ```text
//! cayley:n=2
//! branch:l2
//! graft:<pattern-file>:<vertex>:<dir>
//! shiftpath:<source>:<gens>[:n=<rank>]    source = tm | periodic=<word> | random=<seed>/<size>
//! valence3[:seed=<seed>]
//! fuse:<spec>|<spec>:K=<depth>
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::pattern::Pattern;
use crate::word::{Letter, Word};

use super::{
    branch_tree_l2, FullCayley, Fusion, Grafted, Periodic, SeededRandom, SeededValence3, SequenceSource,
    ShiftPath, Substitution, Tree,
};

fn bad(spec: &str, why: impl std::fmt::Display) -> Error {
    Error::Parse(format!("tree spec {spec:?}: {why}"))
}

fn key_value<'a>(spec: &str, field: &'a str, key: &str) -> Result<&'a str> {
    field
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| bad(spec, format!("expected {key}=<value>, got {field:?}")))
}

/// Parses a generator list such as `a,b` or `1,3`.
fn generators(spec: &str, list: &str) -> Result<Vec<u8>> {
    list.split(',')
        .map(|g| {
            if let Ok(i) = g.parse::<u8>() {
                return Ok(i);
            }
            let mut chars = g.chars();
            match (chars.next(), chars.next()) {
                (Some(c @ 'a'..='z'), None) => Ok(c as u8 - b'a' + 1),
                _ => Err(bad(spec, format!("bad generator {g:?}"))),
            }
        })
        .collect()
}

fn sequence(spec: &str, src: &str) -> Result<Arc<dyn SequenceSource>> {
    if src == "tm" {
        return Ok(Arc::new(Substitution::thue_morse()));
    }
    if let Some(word) = src.strip_prefix("periodic=") {
        return Ok(Arc::new(Periodic::new(word)?));
    }
    if let Some(rest) = src.strip_prefix("random=") {
        let (seed, size) = rest.split_once('/').ok_or_else(|| bad(spec, "random=<seed>/<size>"))?;
        let seed = seed.parse().map_err(|_| bad(spec, "bad seed"))?;
        let size = size.parse().map_err(|_| bad(spec, "bad alphabet size"))?;
        return Ok(Arc::new(SeededRandom::new(seed, size)?));
    }
    if let Some(rules) = src.strip_prefix("subst=") {
        // subst=x>xy;y>yx
        let mut map = BTreeMap::new();
        let mut start = None;
        for rule in rules.split(';') {
            let (lhs, rhs) = rule.split_once('>').ok_or_else(|| bad(spec, format!("bad rule {rule:?}")))?;
            let mut c = lhs.chars();
            let (Some(sym), None) = (c.next(), c.next()) else {
                return Err(bad(spec, format!("bad rule {rule:?}")));
            };
            start.get_or_insert(sym);
            map.insert(sym, rhs.to_string());
        }
        let start = start.ok_or_else(|| bad(spec, "empty substitution"))?;
        return Ok(Arc::new(Substitution::new(&map, start)?));
    }
    Err(bad(spec, format!("unknown sequence source {src:?}")))
}

/// Parses a tree description. `default_seed` is used by `valence3` when no
/// seed is given.
pub fn parse_tree(spec: &str, default_seed: u64) -> Result<Tree> {
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    match kind {
        "cayley" => {
            let n = key_value(spec, rest, "n")?.parse().map_err(|_| bad(spec, "bad rank"))?;
            Ok(Arc::new(FullCayley::new(n)?))
        }
        "branch" if rest == "l2" => Ok(Arc::new(branch_tree_l2())),
        "valence3" => {
            let seed = if rest.is_empty() {
                default_seed
            } else {
                key_value(spec, rest, "seed")?.parse().map_err(|_| bad(spec, "bad seed"))?
            };
            Ok(Arc::new(SeededValence3::new(seed)))
        }
        "shiftpath" => {
            let fields: Vec<&str> = rest.split(':').collect();
            if fields.len() < 2 || fields.len() > 3 {
                return Err(bad(spec, "expected shiftpath:<source>:<gens>[:n=<rank>]"));
            }
            let source = sequence(spec, fields[0])?;
            let alpha = generators(spec, fields[1])?;
            let n = match fields.get(2) {
                Some(f) => key_value(spec, f, "n")?.parse().map_err(|_| bad(spec, "bad rank"))?,
                None => alpha.iter().copied().max().unwrap_or(2).max(2),
            };
            Ok(Arc::new(ShiftPath::new(source, alpha, n)?))
        }
        "graft" => {
            let (file, tail) = rest.rsplit_once(':').ok_or_else(|| bad(spec, "expected graft:<file>:<vertex>:<dir>"))?;
            let (file, vertex) = file.rsplit_once(':').ok_or_else(|| bad(spec, "expected graft:<file>:<vertex>:<dir>"))?;
            let text = std::fs::read_to_string(file)?;
            let pattern = Pattern::from_json(text.trim())?;
            let v: Word = vertex.parse()?;
            let d: i16 = tail.parse().map_err(|_| bad(spec, "bad direction"))?;
            if d == 0 || d.unsigned_abs() > 127 {
                return Err(bad(spec, "bad direction"));
            }
            let dir = Letter::new(d.unsigned_abs() as u8, d > 0)?;
            Ok(Arc::new(Grafted::new(pattern, v, dir)?))
        }
        "fuse" => {
            let (parts, k) = rest.rsplit_once(":K=").ok_or_else(|| bad(spec, "expected fuse:<a>|<b>:K=<k>"))?;
            let (a, b) = parts.split_once('|').ok_or_else(|| bad(spec, "expected fuse:<a>|<b>:K=<k>"))?;
            let k = k.parse().map_err(|_| bad(spec, "bad K"))?;
            let first = parse_tree(a, default_seed)?;
            // the same description twice shares one handle, so the fusion is the tree itself
            let second = if a == b { first.clone() } else { parse_tree(b, default_seed)? };
            Ok(Arc::new(Fusion::new(first, second, k)?))
        }
        _ => Err(bad(spec, "unknown tree kind")),
    }
}
