//! Pattern census: exact enumeration of radius-`m` balls of invariant
//! subsets, cover counts, dimension estimates and growth diagnostics.
//!
//! Local spaces are enumerated level by level: every pattern of radius `m-1`
//! is refined by choosing, at each boundary vertex, one of the admissible
//! sets of new edges. Orbit closures go through [`orbit`].

use std::ops::RangeInclusive;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pattern::Pattern;
use crate::word::{Letter, Word};

mod cache;
mod embed;
mod estimate;
mod oracle;
mod orbit;
mod space;

pub use cache::{PatternCache, FORMAT_VERSION};
pub use embed::{hoelder_check, relabel_embed, sequence_agreement, HoelderReport};
pub use estimate::{
    box_dim_estimates, closed_form_count, growth_diagnostic, ln_biguint, CountRow, CountTable, DimensionEstimate,
    EstimateRow, GrowthDiagnostic, GrowthLevel, Method,
};
pub use oracle::{oracle_enumerate, ORACLE_MAX_VERTICES};
pub use orbit::{
    fusion_witnesses, orbit_cover_count, orbit_cover_count_direct, orbit_patterns, FusionWitness, OrbitCount,
};
pub use space::{Depth, SpaceSpec};

/// Largest `m` each kind of space is enumerated to before refusing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub full: usize,
    pub valence3: usize,
    pub shift: usize,
    pub orbit: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { full: 2, valence3: 3, shift: 5, orbit: 9 }
    }
}

impl Limits {
    /// The same bound for every space.
    pub fn uniform(m: usize) -> Self {
        Limits { full: m, valence3: m, shift: m, orbit: m }
    }

    pub fn bound(&self, spec: &SpaceSpec) -> usize {
        match spec {
            SpaceSpec::Full { .. } => self.full,
            SpaceSpec::Valence3 => self.valence3,
            SpaceSpec::Shift { .. } => self.shift,
            SpaceSpec::Orbit { .. } => self.orbit,
        }
    }
}

/// Enumeration engine with its own worker pool.
pub struct Census {
    pool: rayon::ThreadPool,
    workers: usize,
    limits: Limits,
    cache: Option<PatternCache>,
}

impl Census {
    /// `workers = 0` means one per available core.
    pub fn new(workers: usize) -> Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("cannot start {workers} workers: {e}")))?;
        let workers = pool.current_num_threads();
        Ok(Census { pool, workers, limits: Limits::default(), cache: None })
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn with_cache(mut self, cache: PatternCache) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// Runs `f` inside this engine's worker pool.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        self.pool.install(f)
    }

    fn check_bound(&self, what: &'static str, spec: &SpaceSpec, m: usize) -> Result<()> {
        let bound = self.limits.bound(spec);
        if m <= bound {
            return Ok(());
        }
        // every orbit has at least one pattern; local spaces have a formula
        let lower_bound = closed_form_count(spec, bound).unwrap_or_else(BigUint::one);
        Err(Error::ResourceBound { what, space: spec.name(), m, bound, lower_bound })
    }

    /// The distinct radius-`m` patterns of `spec`, canonically ordered.
    pub fn enumerate(&self, spec: &SpaceSpec, m: usize) -> Result<Vec<Pattern>> {
        self.check_bound("enumeration", spec, m)?;
        let key = spec.name();
        if let Some(hit) = self.cache.as_ref().and_then(|c| c.load(&key, m)) {
            return Ok(hit);
        }
        let out = match spec {
            SpaceSpec::Orbit { tree, depth, .. } => orbit_patterns(&**tree, m, depth.at(m))?,
            _ => {
                let mut level = vec![Pattern::point(spec.rank())];
                for r in 1..=m {
                    level = self.refine_all(spec, &level, r)?;
                }
                level
            }
        };
        if let Some(c) = &self.cache {
            c.store(&key, m, &out)?;
        }
        Ok(out)
    }

    fn refine_all(&self, spec: &SpaceSpec, parents: &[Pattern], m: usize) -> Result<Vec<Pattern>> {
        let children: Vec<Pattern> = self.pool.install(|| {
            let mut all: Vec<Pattern> = parents.par_iter().flat_map_iter(|p| refine_local(spec, p)).collect();
            all.par_sort_by_cached_key(Pattern::output_key);
            all
        });
        if let Some(w) = children.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Invariant(format!("duplicate pattern {} at m = {m} in {spec}", w[0])));
        }
        Ok(children)
    }

    /// Number of radius-`m` patterns.
    pub fn count(&self, spec: &SpaceSpec, m: usize) -> Result<CountRow> {
        let count = match spec {
            SpaceSpec::Orbit { tree, depth, .. } => {
                self.check_bound("orbit count", spec, m)?;
                orbit_cover_count(&**tree, m, depth.at(m))?.count.into()
            }
            _ => self.enumerate(spec, m)?.len().into(),
        };
        Ok(CountRow { m, count, method: Method::Recursive })
    }

    pub fn count_table(&self, spec: &SpaceSpec, ms: RangeInclusive<usize>) -> Result<CountTable> {
        if ms.is_empty() {
            return Err(Error::InvalidArgument("empty range".into()));
        }
        let rows = ms.map(|m| self.count(spec, m)).collect::<Result<Vec<_>>>()?;
        CountTable::new(spec.name(), rows)
    }

    /// Radius-`m` patterns whose truncation to `m - 1` is `p`.
    pub fn refine(&self, p: &Pattern, spec: &SpaceSpec) -> Result<Vec<Pattern>> {
        let m = p.radius() + 1;
        self.check_bound("refinement", spec, m)?;
        let mut out = match spec {
            SpaceSpec::Orbit { .. } => {
                if !self.enumerate(spec, m - 1)?.contains(p) {
                    return Err(Error::NotRealizable {
                        space: spec.name(),
                        reason: format!("{p} is not a radius-{} pattern of the orbit", m - 1),
                    });
                }
                let mut kids = self.enumerate(spec, m)?;
                kids.retain(|c| c.truncate(m - 1) == *p);
                kids
            }
            _ => {
                spec.locally_valid(p).map_err(|reason| Error::NotRealizable { space: spec.name(), reason })?;
                refine_local(spec, p)
            }
        };
        out.sort_by_cached_key(Pattern::output_key);
        Ok(out)
    }
}

/// Every admissible one-step extension of `p` in a local space.
fn refine_local(spec: &SpaceSpec, p: &Pattern) -> Vec<Pattern> {
    let boundary = p.boundary();
    let options: Vec<Vec<Vec<Letter>>> = boundary.iter().map(|b| spec.child_options(b)).collect();
    if options.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; boundary.len()];
    loop {
        let mut added: Vec<Word> = Vec::new();
        for (b, (opts, &c)) in boundary.iter().zip(options.iter().zip(&choice)) {
            added.extend(opts[c].iter().map(|&l| b.times(l)));
        }
        // an empty extension would leave the radius at m - 1
        if !added.is_empty() {
            let mut vertices = p.vertices().clone();
            vertices.extend(added);
            out.push(Pattern::new_unchecked(p.rank(), vertices));
        }
        // odometer over the choices
        let mut i = 0;
        loop {
            if i == choice.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < options[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// [`Census::enumerate`] on a default single-worker engine.
pub fn enumerate_patterns(spec: &SpaceSpec, m: usize) -> Result<Vec<Pattern>> {
    Census::new(1)?.enumerate(spec, m)
}

/// [`Census::count`] on a default single-worker engine.
pub fn count_covers(spec: &SpaceSpec, m: usize) -> Result<CountRow> {
    Census::new(1)?.count(spec, m)
}

/// [`Census::refine`] on a default single-worker engine.
pub fn refine(p: &Pattern, spec: &SpaceSpec) -> Result<Vec<Pattern>> {
    Census::new(1)?.refine(p, spec)
}
