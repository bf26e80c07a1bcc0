//! Reduced words in the free group `F_n` and adjacency in its Cayley tree.
//!
//! A generator letter is stored as a signed index: `+i` is the `i`-th
//! positive generator, `-i` its inverse. Positive letters are exactly the
//! non-symmetric generating set, so the edge between `w` and `w·h` for a
//! positive `h` is the edge leaving `w` labelled `h`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported rank. Letters are stored in an `i8`.
pub const MAX_RANK: u8 = 127;

/// A signed generator of `F_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Letter(i8);

impl Letter {
    /// Builds a letter from a generator index in `1..=127` and a sign.
    pub fn new(index: u8, positive: bool) -> Result<Self> {
        if index == 0 || index > MAX_RANK {
            return Err(Error::InvalidLetter(format!("generator index {index}")));
        }
        let v = index as i8;
        Ok(Letter(if positive { v } else { -v }))
    }

    pub fn positive(index: u8) -> Self {
        Letter::new(index, true).expect("generator index out of range")
    }

    pub fn negative(index: u8) -> Self {
        Letter::new(index, false).expect("generator index out of range")
    }

    pub fn raw(self) -> i8 {
        self.0
    }

    pub fn index(self) -> u8 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// Sort key: generator index first, positive before negative.
    fn key(self) -> (u8, bool) {
        (self.index(), self.0 < 0)
    }

    /// All `2n` letters of `F_n` in canonical order `1, -1, 2, -2, ...`.
    pub fn all(n: u8) -> impl Iterator<Item = Letter> {
        (1..=n).flat_map(|i| [Letter::positive(i), Letter::negative(i)])
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A freely reduced word; also a vertex of the Cayley tree.
///
/// Ordering is shortlex: length first, then letter by letter.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    /// The identity.
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    /// Reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Builds a word from signed indices, reducing as it goes.
    pub fn from_signed(raw: &[i8]) -> Result<Self> {
        let mut w = Word::identity();
        for &r in raw {
            if r == 0 || r == i8::MIN {
                return Err(Error::InvalidLetter(format!("{r}")));
            }
            w.push(Letter(r));
        }
        Ok(w)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    /// Largest generator index appearing in the word.
    pub fn max_index(&self) -> u8 {
        self.letters.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    /// Right-multiplies by one letter, cancelling if needed.
    pub fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    /// `self · l` as a new word.
    pub fn times(&self, l: Letter) -> Word {
        let mut w = self.clone();
        w.push(l);
        w
    }

    /// The parent vertex (one step toward the identity).
    pub fn parent(&self) -> Option<Word> {
        if self.letters.is_empty() {
            None
        } else {
            Some(Word { letters: self.letters[..self.letters.len() - 1].to_vec() })
        }
    }

    /// The prefix of length `k`.
    pub fn prefix(&self, k: usize) -> Word {
        Word { letters: self.letters[..k.min(self.len())].to_vec() }
    }

    pub fn has_prefix(&self, p: &Word) -> bool {
        self.letters.starts_with(&p.letters)
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn invert(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// Tree distance between two vertices.
    pub fn distance(&self, other: &Word) -> usize {
        let common = self
            .letters
            .iter()
            .zip(&other.letters)
            .take_while(|(a, b)| a == b)
            .count();
        self.len() + other.len() - 2 * common
    }

    /// Applies a letterwise relabelling of generator indices.
    pub fn relabel(&self, map: impl Fn(u8) -> u8) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .map(|l| {
                    let i = map(l.index()) as i8;
                    Letter(if l.is_positive() { i } else { -i })
                })
                .collect(),
        }
    }
}

/// The `2n` neighbours of `w` in the Cayley tree of `F_n`, in canonical letter order.
pub fn neighbors(w: &Word, n: u8) -> Result<Vec<Word>> {
    check_rank(n)?;
    if w.max_index() > n {
        return Err(Error::RankMismatch { expected: n, found: w.max_index() });
    }
    Ok(Letter::all(n).map(|l| w.times(l)).collect())
}

/// Rejects ranks outside `2..=MAX_RANK`.
pub fn check_rank(n: u8) -> Result<()> {
    if n < 2 || n > MAX_RANK {
        return Err(Error::InvalidRank(n));
    }
    Ok(())
}

/// All reduced words of length at most `m` in `F_n`, shortlex ordered.
pub fn words_up_to(n: u8, m: usize) -> Vec<Word> {
    let mut out = vec![Word::identity()];
    let mut level = vec![Word::identity()];
    for _ in 0..m {
        let mut next = Vec::with_capacity(level.len() * (2 * n as usize - 1));
        for w in &level {
            for l in Letter::all(n) {
                if w.last() != Some(l.inverse()) {
                    next.push(w.times(l));
                }
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses the `.`-joined token form (`e` for the identity). The input must
    /// already be reduced.
    fn from_str(s: &str) -> Result<Self> {
        if s == "e" {
            return Ok(Word::identity());
        }
        let mut letters = Vec::new();
        for tok in s.split('.') {
            let v: i16 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad word token {tok:?} in {s:?}")))?;
            if v == 0 || v.unsigned_abs() > MAX_RANK as u16 || tok.starts_with('+') {
                return Err(Error::Parse(format!("bad word token {tok:?} in {s:?}")));
            }
            letters.push(Letter(v as i8));
        }
        if letters.windows(2).any(|p| p[0] == p[1].inverse()) {
            return Err(Error::Parse(format!("word {s:?} is not reduced")));
        }
        Ok(Word { letters })
    }
}
