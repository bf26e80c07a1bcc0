//! Brute-force enumeration used to cross-check the refinement engine.
//!
//! Local spaces: every subset of the radius-`m` Cayley ball that contains
//! `e` is tried as a bitmask and kept when it is prefix-closed, reaches radius
//! `m` and passes the local constraints. Orbit spaces: every rebased ball is
//! built explicitly. Single-threaded on purpose.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::pattern::Pattern;
use crate::trees::ball_at;
use crate::word::{words_up_to, Word};

use super::space::SpaceSpec;

/// Largest Cayley ball (vertex count) the subset search accepts.
pub const ORACLE_MAX_VERTICES: usize = 20;

pub fn oracle_enumerate(spec: &SpaceSpec, m: usize) -> Result<Vec<Pattern>> {
    let mut out = match spec {
        SpaceSpec::Orbit { tree, depth, .. } => {
            let r = depth.at(m);
            if r < m {
                return Err(Error::InvalidArgument(format!("exploration depth {r} below radius {m}")));
            }
            let set: BTreeSet<Pattern> =
                tree.ball(r).vertices().iter().map(|g| ball_at(&**tree, g, m)).collect();
            set.into_iter().collect()
        }
        _ => subset_search(spec, m)?,
    };
    out.sort_by_cached_key(Pattern::output_key);
    Ok(out)
}

fn subset_search(spec: &SpaceSpec, m: usize) -> Result<Vec<Pattern>> {
    let n = spec.rank();
    let ball = words_up_to(n, m);
    if ball.len() > ORACLE_MAX_VERTICES {
        return Err(Error::InvalidArgument(format!(
            "oracle refuses {spec} at m = {m}: the Cayley ball has {} vertices, limit {ORACLE_MAX_VERTICES}",
            ball.len()
        )));
    }
    // ball[0] is e; bit i of the mask stands for ball[i + 1]
    let index: HashMap<&Word, usize> = ball.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let parent: Vec<Option<usize>> = ball.iter().map(|w| w.parent().map(|p| index[&p])).collect();
    let mut found = Vec::new();
    for mask in 0u32..1 << (ball.len() - 1) {
        let present = |i: usize| i == 0 || mask >> (i - 1) & 1 == 1;
        let closed = (1..ball.len()).filter(|&i| present(i)).all(|i| parent[i].map_or(true, present));
        if !closed {
            continue;
        }
        let vertices: BTreeSet<Word> = (0..ball.len()).filter(|&i| present(i)).map(|i| ball[i].clone()).collect();
        let p = Pattern::new(n, vertices)?;
        if p.radius() == m && spec.locally_valid(&p).is_ok() {
            found.push(p);
        }
    }
    Ok(found)
}
