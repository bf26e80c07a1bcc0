use std::sync::Arc;

use crate::error::{Error, Result};
use crate::pattern::check_injection;
use crate::word::{Letter, Word};

use super::{BallCache, SequenceSource, TreeModel};

/// The bi-infinite path `λ: Z → F_n` with `λ(0) = e` and, for every integer
/// `k`, `λ(k) = λ(k-1)·α(σ(k-1))`.
///
/// All labels are positive, so the path never backtracks: `λ(k)` for `k > 0`
/// is a word of positive letters, for `k < 0` a word of negative ones.
#[derive(Debug)]
pub struct ShiftPath {
    source: Arc<dyn SequenceSource>,
    alpha: Vec<u8>,
    n: u8,
    cache: BallCache,
}

impl ShiftPath {
    /// `alpha[i]` is the generator index assigned to the `i`-th alphabet symbol.
    pub fn new(source: Arc<dyn SequenceSource>, alpha: Vec<u8>, n: u8) -> Result<Self> {
        let size = source.alphabet().len();
        if size > n as usize {
            return Err(Error::InvalidArgument(format!(
                "alphabet of size {size} does not embed into F_{n}"
            )));
        }
        check_injection(&alpha, size as u8, n).map_err(|e| match e {
            Error::InvalidArgument(msg) => Error::InvalidArgument(format!("alpha: {msg}")),
            other => other,
        })?;
        Ok(ShiftPath { source, alpha, n, cache: BallCache::new() })
    }

    pub fn source(&self) -> &Arc<dyn SequenceSource> {
        &self.source
    }

    pub fn alpha(&self) -> &[u8] {
        &self.alpha
    }

    /// Label of the edge `λ(k-1) → λ(k)`.
    pub fn label(&self, k: i64) -> Letter {
        Letter::positive(self.alpha[self.source.letter(k - 1)])
    }

    /// The vertex `λ(k)`.
    pub fn vertex(&self, k: i64) -> Word {
        if k >= 0 {
            Word::from_letters((1..=k).map(|i| self.label(i)))
        } else {
            Word::from_letters((0..-k).map(|i| self.label(-i).inverse()))
        }
    }
}

impl TreeModel for ShiftPath {
    fn rank(&self) -> u8 {
        self.n
    }

    fn contains(&self, w: &Word) -> bool {
        let letters = w.letters();
        match letters.first() {
            None => true,
            Some(l) if l.is_positive() => letters
                .iter()
                .enumerate()
                .all(|(i, &l)| l == self.label(i as i64 + 1)),
            Some(_) => letters
                .iter()
                .enumerate()
                .all(|(i, &l)| l == self.label(-(i as i64)).inverse()),
        }
    }

    fn ball_cache(&self) -> &BallCache {
        &self.cache
    }
}
