//! Isomorph-free exhaustive search over pure complexes.
//!
//! Candidate facets are the `(d+1)`-subsets of `{0..n-1}` in lexicographic
//! order, and a complex is a set of candidates. Sets are generated in an
//! orderly fashion: a set is kept only if it is the lexicographically least
//! sorted facet list in its isomorphism class, and children extend a set by
//! candidates after its last one. Removing the last facet of a canonical set
//! leaves a canonical set, so every class is reached exactly once.

use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::connectivity::is_strongly_connected_fast;
use crate::constructions::{bound_connected, bound_pure, ConstructionError};
use crate::homology::is_homology_nontrivial;

pub const DEFAULT_MAX_N: usize = 8;
pub const MAX_N_ENV: &str = "HOMEX_MAX_N";

/// A set of candidates is stored in a `u128`, so the candidate list may not
/// be longer than this.
const MAX_CANDIDATES: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("n = {n} exceeds the enumeration cap {cap} (raise it with --max-n or {MAX_N_ENV})")]
    Capacity { n: usize, cap: usize },
    #[error("{candidates} candidate facets for n = {n}, d = {d}; at most {MAX_CANDIDATES} are supported")]
    TooManyCandidates { n: usize, d: usize, candidates: usize },
    #[error("need n >= d+1, got n = {n}, d = {d}")]
    TooFewVertices { n: usize, d: usize },
    #[error(transparent)]
    Domain(#[from] ConstructionError),
    #[error("no witness for d = {d}, k = {k} up to n = {cap}")]
    NoWitness { d: usize, k: usize, cap: usize },
    #[error("smallest witness has {found} vertices but the closed-form bound is {bound}")]
    BoundMismatch { found: usize, bound: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", content = "m", rename_all = "snake_case")]
pub enum SearchMode {
    Pure,
    /// Strongly connected w.r.t. the given dimension.
    Strong(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchConstraint {
    pub d: usize,
    pub k: usize,
    pub mode: SearchMode,
    pub n: usize,
}

impl SearchConstraint {
    pub fn validate(&self) -> Result<(), SearchError> {
        match self.mode {
            SearchMode::Pure => {
                bound_pure(self.d, self.k)?;
            }
            SearchMode::Strong(m) => {
                bound_connected(self.d, self.k, m)?;
            }
        }
        if self.n < self.d + 1 {
            return Err(SearchError::TooFewVertices { n: self.n, d: self.d });
        }
        Ok(())
    }

    fn admits(&self, x: &SimplicialComplex) -> bool {
        match self.mode {
            SearchMode::Pure => true,
            SearchMode::Strong(m) => is_strongly_connected_fast(x, m),
        }
    }
}

/// The closed-form bound that applies to a search mode.
pub fn applicable_bound(d: usize, k: usize, mode: SearchMode) -> Result<usize, SearchError> {
    Ok(match mode {
        SearchMode::Pure => bound_pure(d, k)?,
        SearchMode::Strong(m) => bound_connected(d, k, m)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
    pub max_n: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { jobs: 0, max_n: configured_max_n() }
    }
}

/// The cap from `HOMEX_MAX_N`, or [`DEFAULT_MAX_N`].
pub fn configured_max_n() -> usize {
    std::env::var(MAX_N_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_MAX_N)
}

fn serialize_secs<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub constraint: SearchConstraint,
    /// Isomorphism classes of pure complexes using exactly `n` vertices.
    pub canonical_classes: u64,
    /// Labeled complexes those classes stand for.
    pub labeled_complexes: u64,
    /// Classes that passed the mode filter and had their homology computed.
    pub complexes_examined: u64,
    /// Canonical forms with nontrivial `H_k`, in canonical order.
    pub witnesses: Vec<SimplicialComplex>,
    #[serde(rename = "elapsed_secs", serialize_with = "serialize_secs")]
    pub elapsed: Duration,
}

impl SearchReport {
    /// Equality of everything but the elapsed time.
    pub fn same_contents(&self, other: &SearchReport) -> bool {
        self.constraint == other.constraint
            && self.canonical_classes == other.canonical_classes
            && self.labeled_complexes == other.labeled_complexes
            && self.complexes_examined == other.complexes_examined
            && self.witnesses == other.witnesses
    }
}

/// Candidate facets and the action of every vertex permutation on them.
struct Space {
    n: usize,
    candidates: Vec<Face>,
    vertex_masks: Vec<u32>,
    /// `perm_table[p * len + b]`: bit of the image of the candidate at bit `b`.
    perm_table: Vec<u8>,
    perms: usize,
}

impl Space {
    fn new(n: usize, d: usize, max_n: usize) -> Result<Space, SearchError> {
        if n > max_n {
            return Err(SearchError::Capacity { n, cap: max_n });
        }
        if n < d + 1 {
            return Err(SearchError::TooFewVertices { n, d });
        }
        let candidates: Vec<Face> =
            (0..n as Vertex).combinations(d + 1).map(|c| Face::new(c).expect("combinations are distinct")).collect();
        let len = candidates.len();
        if len > MAX_CANDIDATES {
            return Err(SearchError::TooManyCandidates { n, d, candidates: len });
        }
        let vertex_masks: Vec<u32> =
            candidates.iter().map(|f| f.vertices().iter().fold(0, |m, &v| m | 1 << v)).collect();
        let mut index_of = vec![u8::MAX; 1 << n];
        for (i, &m) in vertex_masks.iter().enumerate() {
            index_of[m as usize] = i as u8;
        }
        let mut perm_table = Vec::new();
        let mut perms = 0;
        for p in (0..n).permutations(n) {
            perms += 1;
            for i in 0..len {
                let image = candidates[Self::index_of_bit(len, i)]
                    .vertices()
                    .iter()
                    .fold(0usize, |m, &v| m | 1 << p[v as usize]);
                perm_table.push(Self::bit_of_index(len, index_of[image] as usize) as u8);
            }
        }
        Ok(Space { n, candidates, vertex_masks, perm_table, perms })
    }

    // Candidate `i` lives at bit `len-1-i`, so among sets of equal size a
    // larger mask is a lexicographically smaller sorted facet list.
    fn bit_of_index(len: usize, i: usize) -> usize {
        len - 1 - i
    }

    fn index_of_bit(len: usize, b: usize) -> usize {
        len - 1 - b
    }

    fn len(&self) -> usize {
        self.candidates.len()
    }

    fn apply(&self, p: usize, set: u128) -> u128 {
        let row = &self.perm_table[p * self.len()..(p + 1) * self.len()];
        let mut out = 0u128;
        let mut rest = set;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            out |= 1u128 << row[b];
            rest &= rest - 1;
        }
        out
    }

    fn is_canonical(&self, set: u128) -> bool {
        (1..self.perms).all(|p| self.apply(p, set) <= set)
    }

    fn automorphisms(&self, set: u128) -> u64 {
        (0..self.perms).filter(|&p| self.apply(p, set) == set).count() as u64
    }

    fn covers_all(&self, set: u128) -> bool {
        let mut cover = 0u32;
        let mut rest = set;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            cover |= self.vertex_masks[Self::index_of_bit(self.len(), b)];
            rest &= rest - 1;
        }
        cover == (1u32 << self.n) - 1
    }

    /// Candidate indices in increasing order; sorting by these sorts by facet list.
    fn indices(&self, set: u128) -> Vec<usize> {
        (0..self.len()).filter(|&i| set >> Self::bit_of_index(self.len(), i) & 1 == 1).collect()
    }

    fn complex(&self, set: u128) -> SimplicialComplex {
        SimplicialComplex::from_antichain(self.indices(set).into_iter().map(|i| self.candidates[i].clone()).collect())
    }

    /// Canonical children: add one candidate after the last one in `set`.
    fn children(&self, set: u128) -> impl Iterator<Item = u128> + '_ {
        let lowest = if set == 0 { self.len() } else { set.trailing_zeros() as usize };
        (0..lowest).map(move |b| set | 1u128 << b).filter(|&c| self.is_canonical(c))
    }

    fn factorial(&self) -> u64 {
        self.perms as u64
    }
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool").install(f)
}

/// Visits every canonical set, in parallel over a breadth-first frontier, and
/// returns the values produced by `visit` in canonical order.
fn walk<T: Send>(space: &Space, jobs: usize, visit: impl Fn(u128) -> Option<T> + Sync) -> Vec<T> {
    with_pool(jobs, || {
        let target = 64 * rayon::current_num_threads().max(1);
        let mut out: Vec<(u128, T)> = Vec::new();
        let mut frontier = vec![0u128];
        while !frontier.is_empty() && frontier.len() < target {
            let mut next = Vec::new();
            for &s in &frontier {
                if let Some(t) = visit(s) {
                    out.push((s, t));
                }
                next.extend(space.children(s));
            }
            frontier = next;
        }
        let rest: Vec<Vec<(u128, T)>> = frontier
            .par_iter()
            .map(|&root| {
                let mut found = Vec::new();
                let mut stack = vec![root];
                while let Some(s) = stack.pop() {
                    if let Some(t) = visit(s) {
                        found.push((s, t));
                    }
                    stack.extend(space.children(s));
                }
                found
            })
            .collect();
        out.extend(rest.into_iter().flatten());
        out.sort_by_cached_key(|&(s, _)| space.indices(s));
        out.into_iter().map(|(_, t)| t).collect()
    })
}

/// Every pure `d`-complex with exactly `n` vertices, one per isomorphism
/// class, as its canonical form, in canonical order.
pub fn enumerate_pure_canonical(n: usize, d: usize) -> Result<Vec<SimplicialComplex>, SearchError> {
    enumerate_with(n, d, &SearchOptions::default())
}

pub fn enumerate_with(n: usize, d: usize, opts: &SearchOptions) -> Result<Vec<SimplicialComplex>, SearchError> {
    let space = Space::new(n, d, opts.max_n)?;
    Ok(walk(&space, opts.jobs, |s| (s != 0 && space.covers_all(s)).then(|| space.complex(s))))
}

/// The lexicographically least sorted facet list over all relabelings of
/// the vertices of `x` onto `0..n-1`.
pub fn canonical_form(x: &SimplicialComplex) -> Result<SimplicialComplex, SearchError> {
    canonical_form_with_cap(x, configured_max_n())
}

pub fn canonical_form_with_cap(x: &SimplicialComplex, max_n: usize) -> Result<SimplicialComplex, SearchError> {
    let verts = x.vertex_set();
    let n = verts.len();
    if n > max_n {
        return Err(SearchError::Capacity { n, cap: max_n });
    }
    let compact = x.relabel(|v| verts.binary_search(&v).expect("vertex of x") as Vertex);
    let mut best: Option<Vec<Face>> = None;
    for p in (0..n as Vertex).permutations(n) {
        let mut facets: Vec<Face> = compact
            .facets()
            .iter()
            .map(|f| {
                Face::new(f.vertices().iter().map(|&v| p[v as usize]).collect()).expect("permutation is injective")
            })
            .collect();
        facets.sort_unstable();
        if best.as_ref().is_none_or(|b| facets < *b) {
            best = Some(facets);
        }
    }
    Ok(SimplicialComplex::from_antichain(best.unwrap_or_default()))
}

struct ClassResult {
    labeled: u64,
    examined: bool,
    witness: Option<SimplicialComplex>,
}

/// Enumerates every class for the constraint and reports those with
/// nontrivial `H_k`. An empty witness list certifies that none exists.
pub fn verify_bound(c: &SearchConstraint, opts: &SearchOptions) -> Result<SearchReport, SearchError> {
    c.validate()?;
    let start = Instant::now();
    let space = Space::new(c.n, c.d, opts.max_n)?;
    let results = walk(&space, opts.jobs, |s| {
        if s == 0 || !space.covers_all(s) {
            return None;
        }
        let labeled = space.factorial() / space.automorphisms(s);
        let x = space.complex(s);
        if !c.admits(&x) {
            return Some(ClassResult { labeled, examined: false, witness: None });
        }
        let witness = is_homology_nontrivial(&x, c.k).then_some(x);
        Some(ClassResult { labeled, examined: true, witness })
    });
    let mut report = SearchReport {
        constraint: *c,
        canonical_classes: results.len() as u64,
        labeled_complexes: results.iter().map(|r| r.labeled).sum(),
        complexes_examined: results.iter().filter(|r| r.examined).count() as u64,
        witnesses: Vec::new(),
        elapsed: Duration::ZERO,
    };
    report.witnesses = results.into_iter().filter_map(|r| r.witness).collect();
    report.elapsed = start.elapsed();
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct MinimalWitness {
    pub n_min: usize,
    pub bound: usize,
    pub witness: SimplicialComplex,
    /// One report per vertex count searched, starting at `d+1`.
    pub reports: Vec<SearchReport>,
}

/// Searches `n = d+1, d+2, ...` until a witness appears and checks that the
/// first such `n` is the closed-form bound.
pub fn find_minimal_witness(
    d: usize,
    k: usize,
    mode: SearchMode,
    opts: &SearchOptions,
) -> Result<MinimalWitness, SearchError> {
    let bound = applicable_bound(d, k, mode)?;
    let mut reports = Vec::new();
    for n in d + 1..=opts.max_n {
        let report = verify_bound(&SearchConstraint { d, k, mode, n }, opts)?;
        let first = report.witnesses.first().cloned();
        reports.push(report);
        if let Some(witness) = first {
            if n != bound {
                return Err(SearchError::BoundMismatch { found: n, bound });
            }
            return Ok(MinimalWitness { n_min: n, bound, witness, reports });
        }
    }
    Err(SearchError::NoWitness { d, k, cap: opts.max_n })
}
