//! Bi-infinite sequences over a finite alphabet, used to drive shift-path trees.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::util::mix64;

/// A map `Z → A`. Symbols are reported as indices into `alphabet()`.
pub trait SequenceSource: Send + Sync + fmt::Debug {
    fn alphabet(&self) -> &[char];

    fn letter(&self, k: i64) -> usize;

    fn symbol(&self, k: i64) -> char {
        self.alphabet()[self.letter(k)]
    }
}

fn alphabet_of(chars: impl IntoIterator<Item = char>) -> Vec<char> {
    chars.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

/// The periodic sequence `...www.www...` with `letter(0) = w[0]`.
#[derive(Debug, Clone)]
pub struct Periodic {
    alphabet: Vec<char>,
    period: Vec<usize>,
}

impl Periodic {
    pub fn new(word: &str) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::InvalidArgument("periodic word must be non-empty".into()));
        }
        Self::with_alphabet(word, &alphabet_of(word.chars()))
    }

    /// Uses a given alphabet, which must contain every symbol of `word`.
    pub fn with_alphabet(word: &str, alphabet: &[char]) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::InvalidArgument("periodic word must be non-empty".into()));
        }
        let period = word
            .chars()
            .map(|c| {
                alphabet
                    .iter()
                    .position(|&a| a == c)
                    .ok_or_else(|| Error::InvalidArgument(format!("symbol {c:?} not in alphabet")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Periodic { alphabet: alphabet.to_vec(), period })
    }
}

impl SequenceSource for Periodic {
    fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    fn letter(&self, k: i64) -> usize {
        self.period[k.rem_euclid(self.period.len() as i64) as usize]
    }
}

/// Two-sided fixed point of a primitive substitution.
///
/// The right half is the limit of `σ^p(a)` and the left half the limit of
/// `σ^p(b)` read from its end, where `a` is the start letter, `b·a` is a
/// legal two-letter word and `p` makes both seeds fixed by the first/last
/// letter maps.
pub struct Substitution {
    alphabet: Vec<char>,
    images: Vec<Vec<usize>>,
    power: usize,
    expansion: Mutex<(Vec<usize>, Vec<usize>)>,
}

impl Substitution {
    pub fn new(rules: &BTreeMap<char, String>, start: char) -> Result<Self> {
        let alphabet: Vec<char> = rules.keys().copied().collect();
        if alphabet.is_empty() {
            return Err(Error::InvalidArgument("substitution has no rules".into()));
        }
        let index = |c: char| alphabet.iter().position(|&a| a == c);
        let mut images = Vec::with_capacity(alphabet.len());
        for (c, img) in rules {
            if img.is_empty() {
                return Err(Error::InvalidArgument(format!("rule for {c:?} is erasing")));
            }
            images.push(
                img.chars()
                    .map(|s| {
                        index(s).ok_or_else(|| {
                            Error::InvalidArgument(format!("rule for {c:?} uses unknown symbol {s:?}"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let a = index(start)
            .ok_or_else(|| Error::InvalidArgument(format!("start symbol {start:?} has no rule")))?;

        let d = alphabet.len();
        if let Some(c) = non_primitive_witness(&images) {
            return Err(Error::InvalidArgument(format!(
                "substitution is not primitive: no power of it reaches every symbol from {:?}",
                alphabet[c]
            )));
        }
        if images.iter().all(|img| img.len() == 1) {
            return Err(Error::InvalidArgument("substitution does not grow".into()));
        }

        let period_of = |f: &dyn Fn(usize) -> usize, x: usize| -> Option<usize> {
            let mut y = x;
            for p in 1..=d {
                y = f(y);
                if y == x {
                    return Some(p);
                }
            }
            None
        };
        let first = |c: usize| images[c][0];
        let last = |c: usize| *images[c].last().unwrap();
        let pa = period_of(&first, a).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "no power of the substitution has a right fixed point starting with {start:?}"
            ))
        })?;

        // legal two-letter words from a long prefix of the right fixed point
        let mut word = vec![a];
        while word.len() < 4096 {
            let next = apply(&images, &word, pa);
            if next.len() == word.len() {
                break;
            }
            word = next;
        }
        let legal: BTreeSet<(usize, usize)> = word.windows(2).map(|w| (w[0], w[1])).collect();
        let (b, qb) = (0..d)
            .filter(|&b| legal.contains(&(b, a)))
            .find_map(|b| period_of(&last, b).map(|q| (b, q)))
            .ok_or_else(|| {
                Error::InvalidArgument(format!("no left seed found for a two-sided fixed point at {start:?}"))
            })?;
        let power = lcm(pa, qb);
        Ok(Substitution {
            alphabet,
            images,
            power,
            expansion: Mutex::new((vec![a], vec![b])),
        })
    }

    /// Thue–Morse: `x → xy`, `y → yx`, started at `x`.
    pub fn thue_morse() -> Self {
        let rules = BTreeMap::from([('x', "xy".to_string()), ('y', "yx".to_string())]);
        Substitution::new(&rules, 'x').expect("Thue-Morse is primitive")
    }
}

fn apply(images: &[Vec<usize>], word: &[usize], times: usize) -> Vec<usize> {
    let mut w = word.to_vec();
    for _ in 0..times {
        w = w.iter().flat_map(|&c| images[c].iter().copied()).collect();
    }
    w
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Primitivity via the incidence matrix: some power `M^k`, `k <= (d-1)^2 + 1`,
/// must be strictly positive. Returns a symbol that fails to reach everything.
fn non_primitive_witness(images: &[Vec<usize>]) -> Option<usize> {
    let d = images.len();
    let step: Vec<BTreeSet<usize>> = images.iter().map(|img| img.iter().copied().collect()).collect();
    let bound = (d - 1) * (d - 1) + 1;
    let mut reach = step.clone();
    for _ in 1..bound {
        reach = reach
            .iter()
            .map(|set| set.iter().flat_map(|&c| step[c].iter().copied()).collect())
            .collect();
    }
    (0..d).find(|&c| reach[c].len() != d)
}

impl SequenceSource for Substitution {
    fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    fn letter(&self, k: i64) -> usize {
        let mut exp = self.expansion.lock().expect("substitution cache poisoned");
        if k >= 0 {
            let need = k as usize + 1;
            while exp.0.len() < need {
                exp.0 = apply(&self.images, &exp.0, self.power);
            }
            exp.0[k as usize]
        } else {
            let back = (-k) as usize;
            while exp.1.len() < back {
                exp.1 = apply(&self.images, &exp.1, self.power);
            }
            exp.1[exp.1.len() - back]
        }
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Substitution")
            .field("alphabet", &self.alphabet)
            .field("images", &self.images)
            .field("power", &self.power)
            .finish()
    }
}

/// Independent uniformly random letters, reproducible from a seed.
#[derive(Debug, Clone)]
pub struct SeededRandom {
    alphabet: Vec<char>,
    seed: u64,
}

impl SeededRandom {
    pub fn new(seed: u64, size: usize) -> Result<Self> {
        const SYMBOLS: &str = "xyzabcdefghijklmnopqrstuvw";
        if size == 0 || size > SYMBOLS.len() {
            return Err(Error::InvalidArgument(format!("alphabet size {size} outside 1..=26")));
        }
        Ok(SeededRandom { alphabet: SYMBOLS.chars().take(size).collect(), seed })
    }
}

impl SequenceSource for SeededRandom {
    fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    fn letter(&self, k: i64) -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(mix64(self.seed, k as u64));
        rng.gen_range(0..self.alphabet.len())
    }
}

/// `k ↦ base(k + by)`.
#[derive(Debug, Clone)]
pub struct Shifted {
    base: Arc<dyn SequenceSource>,
    by: i64,
}

impl Shifted {
    pub fn new(base: Arc<dyn SequenceSource>, by: i64) -> Self {
        Shifted { base, by }
    }
}

impl SequenceSource for Shifted {
    fn alphabet(&self) -> &[char] {
        self.base.alphabet()
    }

    fn letter(&self, k: i64) -> usize {
        self.base.letter(k + self.by)
    }
}

/// A base sequence with finitely many positions overridden.
#[derive(Debug, Clone)]
pub struct Patched {
    base: Arc<dyn SequenceSource>,
    overrides: BTreeMap<i64, usize>,
}

impl Patched {
    pub fn new(base: Arc<dyn SequenceSource>, overrides: BTreeMap<i64, usize>) -> Result<Self> {
        let size = base.alphabet().len();
        if let Some((k, s)) = overrides.iter().find(|(_, &s)| s >= size) {
            return Err(Error::InvalidArgument(format!("override {s} at {k} outside the alphabet")));
        }
        Ok(Patched { base, overrides })
    }
}

impl SequenceSource for Patched {
    fn alphabet(&self) -> &[char] {
        self.base.alphabet()
    }

    fn letter(&self, k: i64) -> usize {
        self.overrides.get(&k).copied().unwrap_or_else(|| self.base.letter(k))
    }
}
