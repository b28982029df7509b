//! Exhaustive searches for smallest affine blocking sets and smallest sets
//! satisfying the three geometric conditions.
//!
//! Subsets of a candidate list are enumerated by increasing size and, within
//! a size, in lexicographic order of their sorted canonical indices, so the
//! first hit is the least witness. Within a size the tree is split by first
//! element into branches. Branches run in parallel but merge in branch
//! order, and a search can pause after a number of branches and resume from
//! a [`Checkpoint`] with an identical outcome.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, Space};
use crate::linalg;
use crate::sets::{self, ConditionReport, PointSet};

/// Largest `q^n` accepted by the blocking-set search.
pub const BLOCKING_SEARCH_CAP: usize = 1 << 16;
/// Largest `q^n` accepted by the three-condition search.
pub const THEOREM_SEARCH_CAP: usize = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Found,
    Infeasible,
    CapReached,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub status: SearchStatus,
    pub min_size: Option<usize>,
    pub witness: Option<PointSet>,
    /// Complete candidate subsets tested against the target predicate.
    pub examined: u64,
    pub elapsed: Duration,
}

/// Resume point: the next branch (first-element position) of a subset size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub size: usize,
    pub next_branch: usize,
    pub examined: u64,
}

#[derive(Clone, Debug)]
pub enum Progress {
    Done(SearchResult),
    Paused(Checkpoint),
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Admissible pruning; disabling it gives the plain enumeration.
    pub prune: bool,
    pub resume: Option<Checkpoint>,
    /// Pause after this many branches.
    pub branch_budget: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { prune: true, resume: None, branch_budget: None }
    }
}

type LeafCheck<'a> = dyn Fn(&[usize]) -> bool + Sync + 'a;

struct Engine<'a> {
    space: &'a Space,
    candidates: Vec<usize>,
    // highest candidate position lying on each hyperplane
    last_on: Vec<Option<usize>>,
    prune: bool,
    leaf: &'a LeafCheck<'a>,
}

struct State {
    cover: Vec<u32>,
    uncovered: usize,
    chosen: Vec<usize>,
    examined: u64,
    nodes: u64,
}

struct BranchOutcome {
    witness: Option<Vec<usize>>,
    examined: u64,
}

const ABORT_POLL: u64 = 1 << 12;

impl<'a> Engine<'a> {
    fn new(space: &'a Space, candidates: Vec<usize>, prune: bool, leaf: &'a LeafCheck<'a>) -> Self {
        let q = space.q();
        let mut last_on = vec![None; space.hyperplane_count()];
        for (pos, &x) in candidates.iter().enumerate() {
            for (j, &d) in space.directions().iter().enumerate() {
                last_on[j * q + space.dot_idx(d, x) as usize] = Some(pos);
            }
        }
        Engine { space, candidates, last_on, prune, leaf }
    }

    fn hyperplanes_through(&self, pos: usize) -> impl Iterator<Item = usize> + '_ {
        let q = self.space.q();
        let x = self.candidates[pos];
        self.space.directions().iter().enumerate().map(move |(j, &d)| j * q + self.space.dot_idx(d, x) as usize)
    }

    fn push(&self, st: &mut State, pos: usize) {
        for h in self.hyperplanes_through(pos) {
            if st.cover[h] == 0 {
                st.uncovered -= 1;
            }
            st.cover[h] += 1;
        }
        st.chosen.push(pos);
    }

    fn pop(&self, st: &mut State) {
        let pos = st.chosen.pop().expect("nonempty");
        for h in self.hyperplanes_through(pos) {
            st.cover[h] -= 1;
            if st.cover[h] == 0 {
                st.uncovered += 1;
            }
        }
    }

    /// No completion of the current partial set with `remaining` more
    /// points, all after the last chosen one, can block every hyperplane.
    fn hopeless(&self, st: &State, remaining: usize) -> bool {
        if st.uncovered == 0 {
            return false;
        }
        if st.uncovered > remaining * self.space.directions().len() {
            return true;
        }
        let first = st.cover.iter().position(|&c| c == 0).expect("some hyperplane uncovered");
        let last = st.chosen.last().copied();
        match (self.last_on[first], last) {
            (None, _) => true,
            (Some(top), Some(l)) => top <= l,
            (Some(_), None) => false,
        }
    }

    fn dfs(&self, st: &mut State, size: usize, branch: usize, best: &AtomicUsize) -> Option<bool> {
        let depth = st.chosen.len();
        st.nodes += 1;
        if st.nodes.is_multiple_of(ABORT_POLL) && best.load(Ordering::Relaxed) < branch {
            return None;
        }
        if depth == size {
            st.examined += 1;
            let found = st.uncovered == 0 && {
                let pts: Vec<usize> = st.chosen.iter().map(|&p| self.candidates[p]).collect();
                (self.leaf)(&pts)
            };
            return Some(found);
        }
        if self.prune && self.hopeless(st, size - depth) {
            return Some(false);
        }
        let start = st.chosen.last().map_or(0, |&l| l + 1);
        let end = self.candidates.len() + depth + 1 - size;
        for pos in start..end {
            self.push(st, pos);
            let r = self.dfs(st, size, branch, best);
            match r {
                Some(true) => return r,
                None => {
                    self.pop(st);
                    return None;
                }
                Some(false) => self.pop(st),
            }
        }
        Some(false)
    }

    fn branch(&self, size: usize, first: usize, best: &AtomicUsize) -> BranchOutcome {
        let mut st = State {
            cover: vec![0; self.space.hyperplane_count()],
            uncovered: self.space.hyperplane_count(),
            chosen: Vec::with_capacity(size),
            examined: 0,
            nodes: 0,
        };
        self.push(&mut st, first);
        let found = self.dfs(&mut st, size, first, best);
        match found {
            Some(true) => {
                best.fetch_min(first, Ordering::Relaxed);
                BranchOutcome { witness: Some(st.chosen.iter().map(|&p| self.candidates[p]).collect()), examined: st.examined }
            }
            _ => BranchOutcome { witness: None, examined: st.examined },
        }
    }

    /// Runs the sizes in order and stops at the first size with a witness.
    fn run(&self, sizes: std::ops::RangeInclusive<usize>, opts: &SearchOptions) -> SizeRun {
        let m = self.candidates.len();
        let (mut examined, resume_size, resume_branch) =
            opts.resume.as_ref().map_or((0, 0, 0), |c| (c.examined, c.size, c.next_branch));
        let mut budget = opts.branch_budget;
        for size in sizes {
            if size < resume_size || size == 0 || size > m {
                continue;
            }
            let branches = m - size + 1;
            let mut b = if size == resume_size { resume_branch } else { 0 };
            while b < branches {
                if budget == Some(0) {
                    return SizeRun::Paused(Checkpoint { size, next_branch: b, examined });
                }
                let end = budget.map_or(branches, |k| (b + k).min(branches));
                if let Some(k) = budget.as_mut() {
                    *k -= end - b;
                }
                let best = AtomicUsize::new(usize::MAX);
                let outcomes: Vec<BranchOutcome> =
                    (b..end).into_par_iter().map(|f| self.branch(size, f, &best)).collect();
                for out in outcomes {
                    examined += out.examined;
                    if let Some(w) = out.witness {
                        return SizeRun::Found { size, witness: w, examined };
                    }
                }
                b = end;
            }
        }
        SizeRun::Exhausted { examined }
    }
}

enum SizeRun {
    Found { size: usize, witness: Vec<usize>, examined: u64 },
    Exhausted { examined: u64 },
    Paused(Checkpoint),
}

fn space_for(q: usize, n: usize, cap: usize) -> Result<Arc<Space>> {
    let space = Space::new(q, n)?;
    if space.size() > cap {
        return Err(Error::ParameterOutOfRange(format!("q^n = {} exceeds the search cap {cap}", space.size())));
    }
    Ok(Arc::new(space))
}

/// Smallest `t <= size_cap` such that some `t`-subset of F_q^n (origin
/// allowed) meets every affine hyperplane.
pub fn min_blocking_search(q: usize, n: usize, size_cap: usize) -> Result<SearchResult> {
    match min_blocking_search_with(q, n, size_cap, &SearchOptions::default())? {
        Progress::Done(r) => Ok(r),
        Progress::Paused(_) => unreachable!("no branch budget"),
    }
}

pub fn min_blocking_search_with(q: usize, n: usize, size_cap: usize, opts: &SearchOptions) -> Result<Progress> {
    if size_cap == 0 {
        return Err(Error::ParameterOutOfRange("size cap must be >= 1".into()));
    }
    let started = Instant::now();
    let space = space_for(q, n, BLOCKING_SEARCH_CAP)?;
    let accept = |_: &[usize]| true;
    let engine = Engine::new(&space, (0..space.size()).collect(), opts.prune, &accept);
    match engine.run(1..=size_cap, opts) {
        SizeRun::Found { size, witness, examined } => {
            let set = PointSet::from_indices(space.clone(), witness, true)?;
            assert!(sets::is_affine_blocking(&set), "search returned a non-blocking witness");
            Ok(Progress::Done(SearchResult {
                status: SearchStatus::Found,
                min_size: Some(size),
                witness: Some(set),
                examined,
                elapsed: started.elapsed(),
            }))
        }
        SizeRun::Exhausted { .. } => Err(Error::CapTooSmall(size_cap)),
        SizeRun::Paused(c) => Ok(Progress::Paused(c)),
    }
}

/// `[n(q-1) + 1, q^{n-2}(q-1) - 1]`, the only sizes a set satisfying all
/// three conditions can have. Empty when the first bound exceeds the second.
pub fn theorem_window(q: usize, n: usize) -> (u64, u64) {
    let lo = (n * (q - 1) + 1) as u64;
    let hi = sets::size_bound(q, n).saturating_sub(1);
    (lo, hi)
}

/// Smallest subset of F_q^n \ {0} satisfying all three conditions.
pub fn min_theorem_set_search(q: usize, n: usize) -> Result<SearchResult> {
    match min_theorem_set_search_with(q, n, &SearchOptions::default())? {
        Progress::Done(r) => Ok(r),
        Progress::Paused(_) => unreachable!("no branch budget"),
    }
}

pub fn min_theorem_set_search_with(q: usize, n: usize, opts: &SearchOptions) -> Result<Progress> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let started = Instant::now();
    let space = space_for(q, n, THEOREM_SEARCH_CAP)?;
    let (lo, hi) = theorem_window(q, n);
    let infeasible = |examined| {
        Progress::Done(SearchResult {
            status: SearchStatus::Infeasible,
            min_size: None,
            witness: None,
            examined,
            elapsed: started.elapsed(),
        })
    };
    if lo > hi {
        return Ok(infeasible(0));
    }
    let field = space.field();
    let sp = &space;
    let spans = move |pts: &[usize]| {
        let base = sp.coords_of(pts[0]);
        let diffs: Vec<Vec<u8>> = pts[1..]
            .iter()
            .map(|&x| sp.coords_of(x).iter().zip(base).map(|(&a, &b)| field.sub(a, b)).collect())
            .collect();
        linalg::rank(field, &diffs, sp.n()) == sp.n()
    };
    let engine = Engine::new(&space, (1..space.size()).collect(), opts.prune, &spans);
    match engine.run(lo as usize..=hi as usize, opts) {
        SizeRun::Found { size, witness, examined } => {
            let set = PointSet::from_indices(space.clone(), witness, false)?;
            assert!(sets::check_conditions_by_enumeration(&set)?.all_hold, "search returned a failing witness");
            Ok(Progress::Done(SearchResult {
                status: SearchStatus::Found,
                min_size: Some(size),
                witness: Some(set),
                examined,
                elapsed: started.elapsed(),
            }))
        }
        SizeRun::Exhausted { examined } => Ok(infeasible(examined)),
        SizeRun::Paused(c) => Ok(Progress::Paused(c)),
    }
}

#[derive(Clone, Debug)]
pub struct TightnessReport {
    pub anchor: Point,
    pub set: PointSet,
    pub conditions: ConditionReport,
    /// `n(q-1) + 1`.
    pub expected_size: usize,
    pub pass: bool,
}

/// Builds the tight set from the least valid anchor and checks it.
pub fn verify_tightness(q: usize, n: usize) -> Result<TightnessReport> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let (lo, hi) = theorem_window(q, n);
    if lo > hi {
        return Err(Error::Infeasible(format!(
            "n(q-1)+1 = {lo} is not below q^(n-2)(q-1) = {}",
            sets::size_bound(q, n)
        )));
    }
    let space = Arc::new(Space::new(q, n)?);
    let anchor = (1..space.size())
        .map(|i| space.point(i))
        .find(|a| !a.is_axis_multiple())
        .expect("n >= 2 leaves a non-axis point");
    let set = sets::construct_tight(space, &anchor)?;
    let conditions = sets::check_conditions(&set)?;
    let expected_size = n * (q - 1) + 1;
    let pass = set.len() == expected_size && conditions.all_hold;
    Ok(TightnessReport { anchor, set, conditions, expected_size, pass })
}
