//! Finite coloring search.
//!
//! Solutions of `P = 0` in `[1, N]` are materialized once as constraints
//! (value sets). A coloring of `[1, N]` is bad when no constraint is
//! monochromatic. The backtracking search colors `1, 2, ..., N` in order,
//! tries colors in ascending order, fixes `color(1) = 0` and only opens color
//! `c` after `0..c` are in use.
//!
//! The tree is cut at a fixed depth into canonical prefixes which are
//! searched on a thread pool. Results are combined in prefix order, so the
//! outcome and the node statistics do not depend on the number of workers.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::poly::Polynomial;
use crate::witness::{solution_tuples, EnumerationLimits, WitnessError};

pub const DEFAULT_BUDGET: u64 = 50_000_000;
const PREFIX_DEPTH: usize = 8;
const CANCEL_CHECK_INTERVAL: u64 = 1024;

/// Colors of `1..=N`; `colors[v - 1]` is the color of `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    pub colors: Vec<u32>,
}

impl Coloring {
    pub fn new(colors: Vec<u32>) -> Self {
        Coloring { colors }
    }

    pub fn n(&self) -> u32 {
        self.colors.len() as u32
    }

    pub fn color(&self, v: u32) -> u32 {
        self.colors[(v - 1) as usize]
    }

    /// Color classes as sorted value lists, indexed by color.
    pub fn classes(&self) -> Vec<Vec<u32>> {
        let r = self.colors.iter().max().map_or(0, |&c| c as usize + 1);
        let mut out = vec![Vec::new(); r];
        for (i, &c) in self.colors.iter().enumerate() {
            out[c as usize].push(i as u32 + 1);
        }
        out
    }
}

/// A solution tuple over the name-sorted variables of the polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SolutionConstraint {
    pub values: Vec<u32>,
    pub injective: bool,
}

impl SolutionConstraint {
    pub fn is_monochromatic(&self, c: &Coloring) -> bool {
        if self.values.iter().any(|&v| v == 0 || v > c.n()) {
            return false;
        }
        let first = c.color(self.values[0]);
        self.values.iter().all(|&v| c.color(v) == first)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    BadColoring(Coloring),
    Forced,
    Inconclusive,
}

impl Outcome {
    pub fn code(&self) -> &'static str {
        match self {
            Outcome::BadColoring(_) => "bad_coloring",
            Outcome::Forced => "forced",
            Outcome::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    pub nodes: u64,
    pub constraints: usize,
    pub ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Canonical form of the polynomial.
    pub polynomial: String,
    pub r: u32,
    pub n: u32,
    pub injective: bool,
    pub outcome: Outcome,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Node limit for one coloring search.
    pub budget: u64,
    /// Worker threads; 0 uses the rayon default.
    pub workers: usize,
    pub limits: EnumerationLimits,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            workers: 0,
            limits: EnumerationLimits::default(),
        }
    }
}

impl SearchConfig {
    fn pool(&self) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .expect("thread pool")
    }
}

/// All solutions of `P` in `[1, N]`, lexicographic over the name-sorted
/// variables.
pub fn enumerate_constraints(
    p: &Polynomial,
    n: u32,
    injective: bool,
) -> Result<Vec<SolutionConstraint>, WitnessError> {
    enumerate_with(p, n, injective, EnumerationLimits::default())
}

fn enumerate_with(
    p: &Polynomial,
    n: u32,
    injective: bool,
    limits: EnumerationLimits,
) -> Result<Vec<SolutionConstraint>, WitnessError> {
    Ok(solution_tuples(p, n, injective, None, limits)?
        .into_iter()
        .map(|values| SolutionConstraint { values, injective })
        .collect())
}

/// First constraint, in lexicographic order, that is monochromatic under `c`.
pub fn monochromatic_solution(
    p: &Polynomial,
    c: &Coloring,
    injective: bool,
) -> Result<Option<SolutionConstraint>, WitnessError> {
    Ok(enumerate_constraints(p, c.n(), injective)?
        .into_iter()
        .find(|s| s.is_monochromatic(c)))
}

/// Constraints as value sets grouped by their largest element; each stored
/// set omits that element.
struct ConstraintIndex {
    by_max: Vec<Vec<Box<[u32]>>>,
}

impl ConstraintIndex {
    fn new(constraints: &[SolutionConstraint], n: u32) -> ConstraintIndex {
        let sets: BTreeSet<Vec<u32>> = constraints
            .iter()
            .filter(|c| c.values.iter().all(|&v| v <= n))
            .map(|c| {
                let s: BTreeSet<u32> = c.values.iter().copied().collect();
                s.into_iter().collect()
            })
            .collect();
        let mut by_max = vec![Vec::new(); n as usize + 1];
        for s in sets {
            let (&max, rest) = s.split_last().expect("nonempty");
            by_max[max as usize].push(rest.to_vec().into_boxed_slice());
        }
        ConstraintIndex { by_max }
    }

    fn len(&self) -> usize {
        self.by_max.iter().map(Vec::len).sum()
    }
}

enum Dfs {
    Found(Vec<u32>),
    Exhausted,
    Budget,
    Cancelled,
}

struct Engine<'a> {
    index: &'a ConstraintIndex,
    r: u32,
    n: usize,
}

impl Engine<'_> {
    /// Can the next value `colors.len() + 1` take color `c`?
    fn allowed(&self, colors: &[u32], c: u32) -> bool {
        let v = colors.len() + 1;
        self.index.by_max[v]
            .iter()
            .all(|rest| rest.iter().any(|&u| colors[u as usize - 1] != c))
    }

    fn next_colors(&self, colors: &[u32]) -> std::ops::Range<u32> {
        let open = match colors.iter().max() {
            None => 1,
            Some(&m) => (m + 2).min(self.r),
        };
        0..open
    }

    /// Canonical valid partial colorings of length `depth` in branch order.
    fn prefixes(&self, depth: usize, nodes: &mut u64) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut colors = Vec::with_capacity(depth);
        self.collect_prefixes(depth, &mut colors, nodes, &mut out);
        out
    }

    fn collect_prefixes(
        &self,
        depth: usize,
        colors: &mut Vec<u32>,
        nodes: &mut u64,
        out: &mut Vec<Vec<u32>>,
    ) {
        if colors.len() == depth {
            out.push(colors.clone());
            return;
        }
        for c in self.next_colors(colors) {
            if self.allowed(colors, c) {
                *nodes += 1;
                colors.push(c);
                self.collect_prefixes(depth, colors, nodes, out);
                colors.pop();
            }
        }
    }

    fn dfs(
        &self,
        colors: &mut Vec<u32>,
        nodes: &mut u64,
        cap: u64,
        cancelled: &dyn Fn() -> bool,
    ) -> Dfs {
        if colors.len() == self.n {
            return Dfs::Found(colors.clone());
        }
        for c in self.next_colors(colors) {
            if !self.allowed(colors, c) {
                continue;
            }
            *nodes += 1;
            if *nodes > cap {
                return Dfs::Budget;
            }
            if *nodes % CANCEL_CHECK_INTERVAL == 0 && cancelled() {
                return Dfs::Cancelled;
            }
            colors.push(c);
            let result = self.dfs(colors, nodes, cap, cancelled);
            colors.pop();
            if !matches!(result, Dfs::Exhausted) {
                return result;
            }
        }
        Dfs::Exhausted
    }
}

/// Search the coloring tree over a prepared constraint index.
fn search_index(index: &ConstraintIndex, r: u32, n: u32, budget: u64) -> (Outcome, u64) {
    let engine = Engine {
        index,
        r,
        n: n as usize,
    };
    let mut nodes = 0u64;
    let depth = PREFIX_DEPTH.min(n as usize);
    let prefixes = engine.prefixes(depth, &mut nodes);
    if nodes > budget {
        return (Outcome::Inconclusive, nodes);
    }
    let cap = budget - nodes;
    let best = AtomicUsize::new(usize::MAX);
    let results: Vec<(Dfs, u64)> = prefixes
        .par_iter()
        .enumerate()
        .map(|(i, prefix)| {
            if best.load(Ordering::Relaxed) < i {
                return (Dfs::Cancelled, 0);
            }
            let mut colors = prefix.clone();
            let mut local = 0u64;
            let cancelled = || best.load(Ordering::Relaxed) < i;
            let result = engine.dfs(&mut colors, &mut local, cap, &cancelled);
            if matches!(result, Dfs::Found(_)) {
                best.fetch_min(i, Ordering::Relaxed);
            }
            (result, local)
        })
        .collect();
    for (result, local) in results {
        nodes += local;
        if nodes > budget {
            return (Outcome::Inconclusive, nodes);
        }
        match result {
            Dfs::Found(colors) => return (Outcome::BadColoring(Coloring::new(colors)), nodes),
            Dfs::Exhausted => {}
            Dfs::Budget => return (Outcome::Inconclusive, nodes),
            Dfs::Cancelled => unreachable!("only prefixes after a found one are cancelled"),
        }
    }
    (Outcome::Forced, nodes)
}

/// Look for an `r`-coloring of `[1, N]` with no monochromatic solution.
pub fn find_bad_coloring(
    p: &Polynomial,
    r: u32,
    n: u32,
    injective: bool,
    config: &SearchConfig,
) -> Result<SearchOutcome, WitnessError> {
    if r == 0 || n == 0 {
        return Err(WitnessError::InvalidInput(
            "need at least one color and N >= 1".into(),
        ));
    }
    let start = Instant::now();
    let pool = config.pool();
    pool.install(|| {
        let constraints = enumerate_with(p, n, injective, config.limits)?;
        let index = ConstraintIndex::new(&constraints, n);
        let (outcome, nodes) = search_index(&index, r, n, config.budget);
        Ok(SearchOutcome {
            polynomial: p.to_string(),
            r,
            n,
            injective,
            outcome,
            stats: SearchStats {
                nodes,
                constraints: index.len(),
                ms: start.elapsed().as_millis() as u64,
            },
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThresholdResult {
    /// Smallest `N` at which every coloring has a monochromatic solution.
    Forced(u32),
    /// Bad colorings exist for every `N <= maxN`.
    NotFound,
    /// The budget ran out at this `N` before any forced `N` was found.
    Inconclusive(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdReport {
    pub polynomial: String,
    pub r: u32,
    pub max_n: u32,
    pub injective: bool,
    pub result: ThresholdResult,
    /// One search per `N = 1, 2, ...` up to the decisive one.
    pub outcomes: Vec<SearchOutcome>,
}

impl ThresholdReport {
    pub fn threshold(&self) -> Option<u32> {
        match self.result {
            ThresholdResult::Forced(n) => Some(n),
            _ => None,
        }
    }
}

/// Smallest `N <= max_n` at which all `r`-colorings of `[1, N]` are forced.
/// Solutions are enumerated once for `max_n` and reused for every smaller
/// `N`.
pub fn rado_number(
    p: &Polynomial,
    r: u32,
    max_n: u32,
    injective: bool,
    config: &SearchConfig,
) -> Result<ThresholdReport, WitnessError> {
    if r == 0 {
        return Err(WitnessError::InvalidInput("need at least one color".into()));
    }
    let pool = config.pool();
    pool.install(|| {
        let started = Instant::now();
        let constraints = enumerate_with(p, max_n, injective, config.limits)?;
        let enumerate_ms = started.elapsed().as_millis() as u64;
        let mut outcomes = Vec::new();
        let mut result = ThresholdResult::NotFound;
        for n in 1..=max_n {
            let start = Instant::now();
            let index = ConstraintIndex::new(&constraints, n);
            let (outcome, nodes) = search_index(&index, r, n, config.budget);
            let ms = start.elapsed().as_millis() as u64 + if n == 1 { enumerate_ms } else { 0 };
            let decided = match outcome {
                Outcome::Forced => Some(ThresholdResult::Forced(n)),
                Outcome::Inconclusive => Some(ThresholdResult::Inconclusive(n)),
                Outcome::BadColoring(_) => None,
            };
            outcomes.push(SearchOutcome {
                polynomial: p.to_string(),
                r,
                n,
                injective,
                outcome,
                stats: SearchStats {
                    nodes,
                    constraints: index.len(),
                    ms,
                },
            });
            if let Some(d) = decided {
                result = d;
                break;
            }
        }
        Ok(ThresholdReport {
            polynomial: p.to_string(),
            r,
            max_n,
            injective,
            result,
            outcomes,
        })
    })
}
