//! Orbits of `s_T`: tail lengths, cycle detection, and exhaustive scans of
//! whole symmetric groups.
//!
//! Every orbit inside the finite set `S_n` is eventually periodic, so the
//! orbit of a permutation splits into a tail and a cycle. The tail length of
//! `π` is written `ord(π)`; `ord(S_n)` is the largest tail over the group.
//!
//! Exhaustive scans shard `S_n` by the first element into `n` independent
//! jobs. Each shard walks its `(n-1)!` arrangements in lexicographic order
//! and the shard results are reduced in shard order, so aggregate output is
//! identical no matter how many worker threads ran.

use std::collections::HashMap;
use std::collections::HashSet;
use std::fmt;

use crate::machine::{apply, apply_into, PatternSet, Stack};
use crate::perm::{next_permutation, Element, Permutation};

/// Full `S_n` scans above this length are refused unless the caller raises
/// the ceiling: 11! orbits is a minutes-scale run, 12! is a deliberate choice.
pub const DEFAULT_CEILING: usize = 11;

/// Discovered cycles are cached to short-circuit later orbits; the cache stops
/// growing past this many states so maps where everything is periodic cannot
/// exhaust memory.
const CACHE_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DynamicsError {
    /// An exhaustive operation was asked to run above the configured ceiling.
    CeilingExceeded { n: usize, ceiling: usize },
}

impl fmt::Display for DynamicsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynamicsError::CeilingExceeded { n, ceiling } => write!(
                f,
                "n = {n} exceeds the resource ceiling {ceiling}; raise the ceiling to opt in"
            ),
        }
    }
}

impl std::error::Error for DynamicsError {}

/// Worker count and resource ceiling for exhaustive scans.
#[derive(Debug, Clone)]
pub struct EnumerationOptions {
    /// `None` uses the global thread pool; `Some(1)` runs strictly serially.
    pub threads: Option<usize>,
    pub ceiling: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            threads: None,
            ceiling: DEFAULT_CEILING,
        }
    }
}

impl EnumerationOptions {
    pub fn with_threads(threads: usize) -> Self {
        EnumerationOptions {
            threads: Some(threads),
            ..Default::default()
        }
    }

    /// Errors when `n` is past the configured ceiling.
    pub fn guard(&self, n: usize) -> Result<(), DynamicsError> {
        if n > self.ceiling {
            Err(DynamicsError::CeilingExceeded {
                n,
                ceiling: self.ceiling,
            })
        } else {
            Ok(())
        }
    }
}

/// Tail, cycle, and entry point of one orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSummary {
    pub start: Permutation,
    /// Steps until the orbit first lands on its cycle; this is `ord(start)`.
    pub tail_length: usize,
    pub cycle_length: usize,
    /// The first periodic permutation reached.
    pub entry_point: Permutation,
}

/// Iterate-and-record cycle detection.
pub fn orbit(pi: &Permutation, t: &PatternSet) -> OrbitSummary {
    let mut states: Vec<Permutation> = vec![pi.clone()];
    let mut seen: HashMap<Permutation, usize> = HashMap::new();
    seen.insert(pi.clone(), 0);
    loop {
        let next = apply(states.last().expect("nonempty"), t);
        if let Some(&at) = seen.get(&next) {
            return OrbitSummary {
                start: pi.clone(),
                tail_length: at,
                cycle_length: states.len() - at,
                entry_point: states[at].clone(),
            };
        }
        seen.insert(next.clone(), states.len());
        states.push(next);
    }
}

/// Constant-memory two-pointer (Floyd) detector, kept as an independent
/// cross-check of [`orbit`].
pub fn orbit_two_pointer(pi: &Permutation, t: &PatternSet) -> OrbitSummary {
    let mut slow = apply(pi, t);
    let mut fast = apply(&slow, t);
    while slow != fast {
        slow = apply(&slow, t);
        fast = apply(&apply(&fast, t), t);
    }
    // Find the tail length by walking both pointers at unit speed.
    let mut tail = 0;
    let mut from_start = pi.clone();
    while from_start != slow {
        from_start = apply(&from_start, t);
        slow = apply(&slow, t);
        tail += 1;
    }
    let entry_point = from_start;
    // One lap measures the cycle.
    let mut cycle = 1;
    let mut walker = apply(&entry_point, t);
    while walker != entry_point {
        walker = apply(&walker, t);
        cycle += 1;
    }
    OrbitSummary {
        start: pi.clone(),
        tail_length: tail,
        cycle_length: cycle,
        entry_point,
    }
}

/// The tail length of the orbit of `pi`.
pub fn ord_of(pi: &Permutation, t: &PatternSet) -> usize {
    orbit(pi, t).tail_length
}

/// Reusable buffers plus a cache of complete cycles. The cache only ever
/// holds whole cycles, so the first walk state found in it is exactly the
/// orbit's entry point.
struct OrbitWalker {
    n: usize,
    walk: Vec<Element>,
    cur: Vec<Element>,
    next: Vec<Element>,
    stack: Stack,
    known_periodic: HashSet<Vec<Element>>,
}

impl OrbitWalker {
    fn new(n: usize) -> Self {
        OrbitWalker {
            n,
            walk: Vec::new(),
            cur: Vec::with_capacity(n),
            next: Vec::with_capacity(n),
            stack: Vec::with_capacity(n),
            known_periodic: HashSet::new(),
        }
    }

    fn ord(&mut self, start: &[Element], t: &PatternSet) -> usize {
        if self.known_periodic.contains(start) {
            return 0;
        }
        self.walk.clear();
        self.walk.extend_from_slice(start);
        self.cur.clear();
        self.cur.extend_from_slice(start);
        let mut steps = 0;
        loop {
            apply_into(&self.cur, t, &mut self.next, &mut self.stack);
            steps += 1;
            if self.known_periodic.contains(self.next.as_slice()) {
                return steps;
            }
            if let Some(at) = self
                .walk
                .chunks_exact(self.n)
                .position(|s| s == self.next.as_slice())
            {
                // walk[at..] is one complete cycle; remember it whole.
                if self.known_periodic.len() + (steps - at) <= CACHE_LIMIT {
                    for s in self.walk.chunks_exact(self.n).skip(at) {
                        self.known_periodic.insert(s.to_vec());
                    }
                }
                return at;
            }
            self.walk.extend_from_slice(&self.next);
            std::mem::swap(&mut self.cur, &mut self.next);
        }
    }
}

fn shard_first_values(n: usize, first: Element) -> Vec<Element> {
    let mut vals = Vec::with_capacity(n);
    vals.push(first);
    vals.extend((1..=n as Element).filter(|&v| v != first));
    vals
}

/// Visits every permutation of the shard `π_1 = first` in lexicographic
/// order, passing each arrangement and its orbit tail length to `f`.
pub fn shard_fold_with_ord(
    n: usize,
    first: Element,
    t: &PatternSet,
    mut f: impl FnMut(&[Element], usize),
) {
    assert!(n >= 1 && (1..=n as Element).contains(&first));
    let mut vals = shard_first_values(n, first);
    let mut walker = OrbitWalker::new(n);
    loop {
        let ord = walker.ord(&vals, t);
        f(&vals, ord);
        if !next_permutation(&mut vals[1..]) {
            return;
        }
    }
}

fn run_sharded<T: Send>(
    n: usize,
    threads: Option<usize>,
    job: impl Fn(Element) -> T + Send + Sync,
) -> Vec<T> {
    use rayon::prelude::*;
    let firsts: Vec<Element> = (1..=n as Element).collect();
    match threads {
        Some(1) => firsts.into_iter().map(job).collect(),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("thread pool")
            .install(|| firsts.into_par_iter().map(job).collect()),
        None => firsts.into_par_iter().map(job).collect(),
    }
}

/// Tally of orbit tail lengths across all of `S_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdCensus {
    pub n: usize,
    /// `counts[k]` = number of permutations with tail length exactly `k`.
    pub counts: Vec<u64>,
}

impl OrdCensus {
    /// `ord(S_n)`: the largest tail length that occurs.
    pub fn max_ord(&self) -> usize {
        self.counts.iter().rposition(|&c| c > 0).unwrap_or(0)
    }

    pub fn count_with_ord(&self, k: usize) -> u64 {
        self.counts.get(k).copied().unwrap_or(0)
    }

    /// Number of permutations whose tail length is at most `t`; these are the
    /// `t`-stack-sortable ones.
    pub fn count_with_ord_at_most(&self, t: usize) -> u64 {
        self.counts.iter().take(t + 1).sum()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Exhaustive tail-length census over `S_n`.
pub fn ord_census(
    n: usize,
    t: &PatternSet,
    opts: &EnumerationOptions,
) -> Result<OrdCensus, DynamicsError> {
    opts.guard(n)?;
    if n == 0 {
        return Ok(OrdCensus { n, counts: vec![] });
    }
    let shard_counts = run_sharded(n, opts.threads, |first| {
        let mut counts: Vec<u64> = Vec::new();
        shard_fold_with_ord(n, first, t, |_, ord| {
            if counts.len() <= ord {
                counts.resize(ord + 1, 0);
            }
            counts[ord] += 1;
        });
        counts
    });
    let mut counts: Vec<u64> = Vec::new();
    for sc in shard_counts {
        if counts.len() < sc.len() {
            counts.resize(sc.len(), 0);
        }
        for (k, c) in sc.into_iter().enumerate() {
            counts[k] += c;
        }
    }
    Ok(OrdCensus { n, counts })
}

/// `ord(S_n)` by exhaustive enumeration.
pub fn ord_of_sn(
    n: usize,
    t: &PatternSet,
    opts: &EnumerationOptions,
) -> Result<usize, DynamicsError> {
    Ok(ord_census(n, t, opts)?.max_ord())
}

/// All permutations of `S_n` whose tail length satisfies `pred`, in
/// lexicographic order.
pub fn permutations_where(
    n: usize,
    t: &PatternSet,
    opts: &EnumerationOptions,
    pred: impl Fn(usize) -> bool + Send + Sync,
) -> Result<Vec<Permutation>, DynamicsError> {
    opts.guard(n)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let shards = run_sharded(n, opts.threads, |first| {
        let mut hits: Vec<Permutation> = Vec::new();
        shard_fold_with_ord(n, first, t, |vals, ord| {
            if pred(ord) {
                hits.push(Permutation::from_vec_unchecked(vals.to_vec()));
            }
        });
        hits
    });
    Ok(shards.into_iter().flatten().collect())
}

/// The `t`-stack-sortable permutations: `s_T^t(π)` lands on a cycle.
pub fn sortable_set(
    passes: usize,
    n: usize,
    t: &PatternSet,
    opts: &EnumerationOptions,
) -> Result<Vec<Permutation>, DynamicsError> {
    permutations_where(n, t, opts, |ord| ord <= passes)
}

/// `|Sort_{t,n}|` without materializing the set.
pub fn sortable_count(
    passes: usize,
    n: usize,
    t: &PatternSet,
    opts: &EnumerationOptions,
) -> Result<u64, DynamicsError> {
    Ok(ord_census(n, t, opts)?.count_with_ord_at_most(passes))
}

/// Periodic points by full generic scan: the permutations with tail 0.
pub fn periodic_points_generic(
    n: usize,
    t: &PatternSet,
    opts: &EnumerationOptions,
) -> Result<Vec<Permutation>, DynamicsError> {
    permutations_where(n, t, opts, |ord| ord == 0)
}

/// Periodic points of `s_T` on `S_n`, in lexicographic order.
///
/// For `T = {123,132}` the half-decreasing permutations are enumerated
/// directly and each candidate is confirmed on a cycle by the generic
/// detector; other sets take the full scan.
pub fn periodic_points(
    n: usize,
    t: &PatternSet,
    opts: &EnumerationOptions,
) -> Result<Vec<Permutation>, DynamicsError> {
    opts.guard(n)?;
    let berlow: PatternSet = "123,132".parse().expect("valid set");
    if *t != berlow {
        return periodic_points_generic(n, t, opts);
    }
    let mut points: Vec<Permutation> = crate::perm::symmetric_group(n)
        .filter(crate::structure::is_half_decreasing)
        .collect();
    points.sort();
    for p in &points {
        assert_eq!(
            ord_of(p, t),
            0,
            "half-decreasing permutation {p} failed cycle validation"
        );
    }
    Ok(points)
}
