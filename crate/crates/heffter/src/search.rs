//! Complete backtracking search for weak Heffter arrays, plus skeleton
//! enumeration and the per-parameter classification table.
//!
//! Searches are exact: a "none" outcome means the whole reduced space was
//! exhausted, and comes with a node count as a certificate of the work done.
//! The reduction quotients by row order, column order (canonical skeletons)
//! and global negation (the first filled cell takes its positive
//! representative); existence verdicts are unaffected and counts are reported
//! under exactly that equivalence.

use crate::model::{ArrayContext, SignedEntry, VerifyMode, WeakArray};
use crate::transforms::strictness_check;
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};
use thiserror::Error;

/// A fill pattern: `filled[r][c]` for 0-based `r`, `c`.
pub type Skeleton = Vec<Vec<bool>>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("inadmissible search parameters: {0}")]
    Inadmissible(String),
    #[error("budget exhausted after {nodes} nodes ({found} arrays found so far)")]
    BudgetExceeded { nodes: u64, found: u64 },
}

/// All m×n fill patterns with `h` cells per row and `k` per column, up to
/// simultaneous row and column permutations.  The canonical representative of
/// each class is the lexicographic minimum of the flattened grid, found by
/// trying every column permutation and sorting rows.
pub fn enumerate_skeletons(m: usize, n: usize, h: usize, k: usize) -> Vec<Skeleton> {
    if h > n || k > m || n * k != m * h {
        return Vec::new();
    }
    let mut out: BTreeSet<Vec<Vec<bool>>> = BTreeSet::new();
    let mut rows: Vec<Vec<bool>> = Vec::with_capacity(m);
    let mut col_fill = vec![0usize; n];

    fn row_patterns(n: usize, h: usize) -> Vec<Vec<bool>> {
        let mut out = Vec::new();
        for bits in 0u32..(1 << n) {
            if bits.count_ones() as usize == h {
                out.push((0..n).map(|j| bits & (1 << j) != 0).collect());
            }
        }
        out
    }

    fn recurse(
        m: usize,
        n: usize,
        k: usize,
        patterns: &[Vec<bool>],
        rows: &mut Vec<Vec<bool>>,
        col_fill: &mut Vec<usize>,
        out: &mut BTreeSet<Vec<Vec<bool>>>,
    ) {
        if rows.len() == m {
            out.insert(canonical_skeleton(rows));
            return;
        }
        let after = m - rows.len() - 1;
        for pat in patterns {
            // Each column must end at exactly k: not above it now, and still
            // reachable with one cell per remaining row.
            let feasible = (0..n).all(|j| {
                let f = col_fill[j] + usize::from(pat[j]);
                f <= k && k - f <= after
            });
            if !feasible {
                continue;
            }
            for j in 0..n {
                col_fill[j] += usize::from(pat[j]);
            }
            rows.push(pat.clone());
            recurse(m, n, k, patterns, rows, col_fill, out);
            rows.pop();
            for j in 0..n {
                col_fill[j] -= usize::from(pat[j]);
            }
        }
    }

    let patterns = row_patterns(n, h);
    recurse(m, n, k, &patterns, &mut rows, &mut col_fill, &mut out);
    out.into_iter().collect()
}

/// Lexicographic minimum of the grid over column permutations, with rows
/// sorted; sorting rows realizes the best row permutation for each fixed
/// column order.
fn canonical_skeleton(rows: &[Vec<bool>]) -> Skeleton {
    let n = rows.first().map_or(0, Vec::len);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<Vec<bool>>> = None;
    permute(&mut perm, 0, &mut |p| {
        let mut candidate: Vec<Vec<bool>> = rows
            .iter()
            .map(|row| p.iter().map(|&j| row[j]).collect())
            .collect();
        candidate.sort();
        if best.as_ref().map_or(true, |b| candidate < *b) {
            best = Some(candidate);
        }
    });
    best.unwrap_or_default()
}

fn permute(items: &mut Vec<usize>, at: usize, visit: &mut impl FnMut(&[usize])) {
    if at == items.len() {
        visit(items);
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permute(items, at + 1, visit);
        items.swap(at, i);
    }
}

/// The lexicographically least array equivalent to `a` under row
/// permutations, column permutations, and global negation, compared by
/// emitted text.  Used to normalize witnesses so golden files stay stable no
/// matter which orbit member the search tripped over first.  Falls back to
/// the input when the orbit is too large to scan.
pub fn lex_min_representative(a: &WeakArray) -> WeakArray {
    const ORBIT_LIMIT: u64 = 20_000;
    let ctx = *a.ctx();
    let orbit: u64 = (1..=ctx.m as u64).product::<u64>() * (1..=ctx.n as u64).product::<u64>() * 2;
    if orbit > ORBIT_LIMIT {
        return a.clone();
    }
    let mut best: Option<(String, WeakArray)> = None;
    let mut row_perm: Vec<usize> = (0..ctx.m).collect();
    permute(&mut row_perm, 0, &mut |rp| {
        let rp = rp.to_vec();
        let mut col_perm: Vec<usize> = (0..ctx.n).collect();
        permute(&mut col_perm, 0, &mut |cp| {
            for negate in [false, true] {
                let mut candidate = WeakArray::empty(ctx);
                for (r, c, e) in a.filled() {
                    let target_r = rp.iter().position(|&x| x == r - 1).unwrap() + 1;
                    let target_c = cp.iter().position(|&x| x == c - 1).unwrap() + 1;
                    let entry = if negate {
                        SignedEntry { a: ctx.neg(e.a), split: e.split }
                    } else {
                        e
                    };
                    candidate.place(target_r, target_c, entry).unwrap();
                }
                let text = crate::format::emit_text(&candidate);
                if best.as_ref().map_or(true, |(b, _)| text < *b) {
                    best = Some((text, candidate));
                }
            }
        });
    });
    best.map(|(_, arr)| arr).unwrap_or_else(|| a.clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Classical,
    Weak,
    StrictlyWeak,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchGoal {
    Exists,
    Count,
    Enumerate,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchBudget {
    pub nodes: Option<u64>,
    pub seconds: Option<f64>,
}

/// What to search for.  `omega` optionally prescribes the exact set of split
/// cells (1-based coordinates); with it set, skeletons are used as generated
/// and must contain the prescribed cells.  `reverse` flips the value
/// branching order — a complete search must reach identical results either
/// way, which the test suite exploits as a self-check.
#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub ctx: ArrayContext,
    pub mode: SearchMode,
    pub goal: SearchGoal,
    pub omega: Option<Vec<(usize, usize)>>,
    pub budget: SearchBudget,
    pub reverse: bool,
}

impl SearchSpec {
    pub fn new(ctx: ArrayContext, mode: SearchMode, goal: SearchGoal) -> Self {
        SearchSpec {
            ctx,
            mode,
            goal,
            omega: None,
            budget: SearchBudget::default(),
            reverse: false,
        }
    }
}

/// Search result.  `complete` is true when the whole space was exhausted;
/// an `Exists` search that found a witness stops early, so `complete` is
/// false there unless the witness was the last leaf.  `count` is the number
/// of arrays accepted in the reduced space (canonical skeletons, first cell
/// positive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub exists: bool,
    pub count: u64,
    pub witnesses: Vec<WeakArray>,
    pub nodes: u64,
    pub strictness_nodes: u64,
    pub skeletons: usize,
    pub complete: bool,
}

struct CellPlan {
    r: usize,
    c: usize,
    last_in_row: bool,
    last_in_col: bool,
    forced_split: Option<bool>,
}

impl CellPlan {
    fn in_omega(&self) -> bool {
        self.forced_split == Some(true)
    }
}

/// Fixed pseudo-random permutation of the candidate classes.  Trying classes
/// in ascending order makes early cells hoard the small values, leaving the
/// later lines a badly skewed pool; a scrambled (but deterministic, so runs
/// stay reproducible) order reaches typical value mixes much sooner.  The
/// search is complete either way — only the visiting order changes.
fn branch_order(mut classes: Vec<u32>) -> Vec<u32> {
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    for i in (1..classes.len()).rev() {
        state = state
            .wrapping_mul(6_364_136_223_846_793_005)
            .wrapping_add(1_442_695_040_888_963_407);
        let j = ((state >> 33) as usize) % (i + 1);
        classes.swap(i, j);
    }
    classes
}

struct Searcher<'a> {
    ctx: ArrayContext,
    mode: SearchMode,
    goal: SearchGoal,
    reverse: bool,
    plan: Arc<Vec<CellPlan>>,
    classes: Arc<Vec<u32>>,
    used: Vec<bool>,
    row_sum: Vec<u32>,
    col_sum: Vec<u32>,
    split_left: usize,
    split_sum: u32,
    stack: Vec<SignedEntry>,
    node_budget: Option<u64>,
    deadline: Option<Instant>,
    nodes: u64,
    strictness_nodes: u64,
    count: u64,
    witnesses: Vec<WeakArray>,
    stop: bool,
    budget_hit: bool,
    /// Parallel tasks carry their index and the shared least-finder index; a
    /// task abandons its subtree once a lower-indexed task has reported a
    /// witness, because the merge discards everything past that index anyway.
    cancel: Option<(usize, &'a AtomicUsize)>,
    /// Set when `dfs` returned early because of a cancellation, marking every
    /// tally in this searcher as partial and therefore unusable.
    cut: bool,
}

impl<'a> Searcher<'a> {
    fn new(spec: &SearchSpec, plan: Arc<Vec<CellPlan>>, classes: Arc<Vec<u32>>) -> Self {
        let ctx = spec.ctx;
        let split_left = plan.iter().filter(|cell| cell.in_omega()).count();
        Searcher {
            ctx,
            mode: spec.mode,
            goal: spec.goal,
            reverse: spec.reverse,
            plan,
            classes,
            used: vec![false; (ctx.v / 2 + 1) as usize],
            row_sum: vec![0; ctx.m + 1],
            col_sum: vec![0; ctx.n + 1],
            split_left,
            split_sum: 0,
            stack: Vec::new(),
            node_budget: None,
            deadline: None,
            nodes: 0,
            strictness_nodes: 0,
            count: 0,
            witnesses: Vec::new(),
            stop: false,
            budget_hit: false,
            cancel: None,
            cut: false,
        }
    }
    /// Static fill order: repeatedly take the cell whose row or column has
    /// fewest cells still unplaced, so lines complete (and force values)
    /// early.  Ties break row-major, keeping the order reproducible.  Cells
    /// of a prescribed split set jump the queue: filling them first lets the
    /// split-sum constraint (see `dfs`) cut the tree near the root.
    fn plan_cells(skeleton: &Skeleton, omega: Option<&[(usize, usize)]>) -> Vec<CellPlan> {
        let m = skeleton.len();
        let n = skeleton.first().map_or(0, Vec::len);
        let mut row_left: Vec<usize> = skeleton
            .iter()
            .map(|row| row.iter().filter(|&&b| b).count())
            .collect();
        let mut col_left: Vec<usize> = (0..n)
            .map(|j| skeleton.iter().filter(|row| row[j]).count())
            .collect();
        let mut remaining: Vec<(usize, usize)> = (0..m)
            .flat_map(|r| (0..n).filter(move |&c| skeleton[r][c]).map(move |c| (r, c)))
            .collect();
        let mut plan = Vec::with_capacity(remaining.len());
        while !remaining.is_empty() {
            let (idx, &(r, c)) = remaining
                .iter()
                .enumerate()
                .min_by_key(|&(_, &(r, c))| {
                    let prescribed = omega.is_some_and(|om| om.contains(&(r + 1, c + 1)));
                    (!prescribed, row_left[r].min(col_left[c]), r, c)
                })
                .unwrap();
            remaining.remove(idx);
            row_left[r] -= 1;
            col_left[c] -= 1;
            plan.push(CellPlan {
                r: r + 1,
                c: c + 1,
                last_in_row: row_left[r] == 0,
                last_in_col: col_left[c] == 0,
                forced_split: omega.map(|om| om.contains(&(r + 1, c + 1))),
            });
        }
        plan
    }

    fn over_budget(&mut self) -> bool {
        if self.budget_hit {
            return true;
        }
        if let Some(limit) = self.node_budget {
            if self.nodes > limit {
                self.budget_hit = true;
                return true;
            }
        }
        if let Some(deadline) = self.deadline {
            if self.nodes % 4096 == 0 && Instant::now() > deadline {
                self.budget_hit = true;
                return true;
            }
        }
        false
    }

    fn cancelled(&self) -> bool {
        self.cancel
            .is_some_and(|(index, best)| best.load(Ordering::Relaxed) < index)
    }

    fn branches(&self, depth: usize) -> Vec<SignedEntry> {
        let ctx = &self.ctx;
        let cell = &self.plan[depth];
        let splits: &[bool] = match (cell.forced_split, self.mode) {
            (Some(true), _) => &[true],
            (Some(false), _) | (None, SearchMode::Classical) => &[false],
            (None, _) => &[false, true],
        };
        let mut residues: Vec<u32> = Vec::new();
        if cell.last_in_row {
            let a = ctx.neg(self.row_sum[cell.r]);
            if a != 0 && !ctx.in_subgroup(a) && !self.used[ctx.class_rep(a) as usize] {
                residues.push(a);
            }
        } else {
            for &cl in self.classes.iter() {
                if self.used[cl as usize] {
                    continue;
                }
                residues.push(cl);
                if depth > 0 {
                    residues.push(ctx.neg(cl));
                }
            }
        }
        let mut out = Vec::with_capacity(residues.len() * splits.len());
        for &a in &residues {
            for &split in splits {
                let e = SignedEntry { a, split };
                if cell.last_in_col && e.col_value(ctx) != ctx.neg(self.col_sum[cell.c]) {
                    continue;
                }
                out.push(e);
            }
        }
        if self.reverse {
            out.reverse();
        }
        out
    }

    fn dfs(&mut self, depth: usize) {
        if self.stop || self.over_budget() {
            return;
        }
        if self.cancelled() {
            self.cut = true;
            return;
        }
        if depth == self.plan.len() {
            self.leaf();
            return;
        }
        for e in self.branches(depth) {
            self.descend(depth, e);
            if self.stop || self.budget_hit || self.cut {
                return;
            }
        }
    }

    /// One node of the search tree: places `e` at the cell planned for
    /// `depth`, explores the subtree underneath, and takes it out again.  The
    /// parallel driver calls this directly to hand a whole depth-0 subtree to
    /// a worker.
    fn descend(&mut self, depth: usize, e: SignedEntry) {
        self.nodes += 1;
        let (r, c) = (self.plan[depth].r, self.plan[depth].c);
        let in_omega = self.plan[depth].in_omega();
        let cl = e.class(&self.ctx) as usize;
        self.used[cl] = true;
        self.row_sum[r] = self.ctx.add(self.row_sum[r], e.a);
        self.col_sum[c] = self.ctx.add(self.col_sum[c], e.col_value(&self.ctx));
        let mut viable = true;
        if in_omega {
            self.split_left -= 1;
            self.split_sum = self.ctx.add(self.split_sum, e.a);
            // Summing every line sum gives: (sum of column values) =
            // (sum of row values) - 2*(sum of row values at split
            // cells), and both full sums vanish, so twice the split-cell
            // row-value sum must vanish mod v.  Once the last prescribed
            // split cell is placed that sum is settled and can be tested.
            if self.split_left == 0 {
                let s = self.split_sum;
                viable = s == 0 || (self.ctx.v % 2 == 0 && s == self.ctx.v / 2);
            }
        }
        if viable {
            self.stack.push(e);
            self.dfs(depth + 1);
            self.stack.pop();
        }
        if in_omega {
            self.split_sum = self.ctx.add(self.split_sum, self.ctx.neg(e.a));
            self.split_left += 1;
        }
        self.col_sum[c] = self.ctx.add(self.col_sum[c], self.ctx.neg(e.col_value(&self.ctx)));
        self.row_sum[r] = self.ctx.add(self.row_sum[r], self.ctx.neg(e.a));
        self.used[cl] = false;
    }

    fn leaf(&mut self) {
        let mut array = WeakArray::empty(self.ctx);
        for (cell, &e) in self.plan.iter().zip(&self.stack) {
            array.place(cell.r, cell.c, e).unwrap();
        }
        debug_assert!(array.verify(VerifyMode::weak_for(self.ctx.t)).ok);
        if self.mode == SearchMode::StrictlyWeak {
            match strictness_check(&array) {
                Ok(verdict) => {
                    self.strictness_nodes += verdict.nodes();
                    if !verdict.is_strict() {
                        return;
                    }
                }
                Err(_) => return,
            }
        }
        self.count += 1;
        match self.goal {
            SearchGoal::Exists => {
                self.witnesses.push(array);
                self.stop = true;
                // Publish at once so sibling tasks above this index can bail.
                if let Some((index, best)) = self.cancel {
                    best.fetch_min(index, Ordering::Relaxed);
                }
            }
            SearchGoal::Count => {}
            SearchGoal::Enumerate => self.witnesses.push(array),
        }
    }
}

/// Runs the complete search described by `spec`.
///
/// Admissible skeletons are enumerated up to row/column permutations; each is
/// completed by depth-first assignment of (class, sign, split) triples with
/// forced values at the last cell of every line.  The first filled cell is
/// restricted to its positive representative, folding global negation out of
/// the space.  In strictly-weak mode every completed array is filtered
/// through the strictness oracle.  Exceeding the node or time budget aborts
/// with an explicit error.
///
/// Unbudgeted searches run the depth-0 subtrees as parallel tasks on the
/// current rayon pool and merge per-task tallies in task order, which makes
/// the outcome — witnesses, counts, and node certificates alike — identical
/// to the single-threaded run no matter how many workers the pool has.
/// Budgeted searches stay on the sequential driver, because an abort after
/// "so many nodes" or "so many seconds" has no thread-count-independent
/// meaning.
pub fn search_arrays(spec: &SearchSpec) -> Result<SearchOutcome, SearchError> {
    let ctx = spec.ctx;
    let skeletons = enumerate_skeletons(ctx.m, ctx.n, ctx.h, ctx.k);
    if skeletons.is_empty() {
        return Err(SearchError::Inadmissible(format!(
            "no {}x{} skeletons with h={} k={}",
            ctx.m, ctx.n, ctx.h, ctx.k
        )));
    }
    if let Some(omega) = &spec.omega {
        for &(r, c) in omega {
            if r < 1 || r > ctx.m || c < 1 || c > ctx.n {
                return Err(SearchError::Inadmissible(format!(
                    "prescribed split cell ({r},{c}) out of range"
                )));
            }
        }
    }
    let admissible: Vec<&Skeleton> = skeletons
        .iter()
        .filter(|skeleton| match &spec.omega {
            Some(omega) => omega.iter().all(|&(r, c)| skeleton[r - 1][c - 1]),
            None => true,
        })
        .collect();
    let total = SearchOutcome {
        exists: false,
        count: 0,
        witnesses: Vec::new(),
        nodes: 0,
        strictness_nodes: 0,
        skeletons: skeletons.len(),
        complete: true,
    };
    if spec.budget.nodes.is_none() && spec.budget.seconds.is_none() {
        Ok(run_parallel(spec, &admissible, total))
    } else {
        run_sequential(spec, &admissible, total)
    }
}

fn run_sequential(
    spec: &SearchSpec,
    skeletons: &[&Skeleton],
    mut total: SearchOutcome,
) -> Result<SearchOutcome, SearchError> {
    let deadline = spec
        .budget
        .seconds
        .map(|s| Instant::now() + Duration::from_secs_f64(s));
    let classes = Arc::new(branch_order(spec.ctx.classes().collect()));
    for skeleton in skeletons {
        let plan = Arc::new(Searcher::plan_cells(skeleton, spec.omega.as_deref()));
        let mut searcher = Searcher::new(spec, plan, classes.clone());
        searcher.node_budget = spec.budget.nodes.map(|b| b.saturating_sub(total.nodes));
        searcher.deadline = deadline;
        searcher.dfs(0);
        total.nodes += searcher.nodes;
        total.strictness_nodes += searcher.strictness_nodes;
        total.count += searcher.count;
        total.witnesses.extend(searcher.witnesses);
        if searcher.budget_hit {
            return Err(SearchError::BudgetExceeded {
                nodes: total.nodes,
                found: total.count,
            });
        }
        if searcher.stop {
            total.exists = true;
            total.complete = false;
            if spec.omega.is_none() {
                // Report the least member of the witness orbit.  A
                // prescribed split-cell set pins cells to coordinates, so no
                // permutation is applied there.
                total.witnesses = total.witnesses.iter().map(lex_min_representative).collect();
            }
            return Ok(total);
        }
    }
    total.exists = total.count > 0;
    Ok(total)
}

/// Per-task tallies pushed into the parallel driver's result sink.
struct TaskReport {
    cut: bool,
    found: bool,
    nodes: u64,
    strictness_nodes: u64,
    count: u64,
    witnesses: Vec<WeakArray>,
}

/// The parallel driver.  Work is split at depth 0: every admissible value of
/// the first planned cell of every admissible skeleton becomes one task,
/// numbered in the order the sequential driver would reach it.  Tasks share
/// nothing but an append-only report sink, an aggregate node counter, and the
/// least index that has reported a witness.
///
/// The merge walks reports in task order, so it reconstructs the sequential
/// outcome exactly.  For an existence search, tasks below the least finder
/// ran to exhaustion without a witness (had one existed there, that task
/// would itself be a lower finder), the finder stopped at its first witness,
/// and everything above the finder is discarded — which is why cancelling
/// those tasks, and only those, cannot perturb the result, and why the node
/// certificate of a "none" answer is stable across thread counts.
fn run_parallel(spec: &SearchSpec, skeletons: &[&Skeleton], mut total: SearchOutcome) -> SearchOutcome {
    let classes = Arc::new(branch_order(spec.ctx.classes().collect()));
    let mut tasks: Vec<(Arc<Vec<CellPlan>>, SignedEntry)> = Vec::new();
    for skeleton in skeletons {
        let plan = Arc::new(Searcher::plan_cells(skeleton, spec.omega.as_deref()));
        let probe = Searcher::new(spec, plan.clone(), classes.clone());
        for entry in probe.branches(0) {
            tasks.push((plan.clone(), entry));
        }
    }
    let best_finder = AtomicUsize::new(usize::MAX);
    let nodes_seen = AtomicU64::new(0);
    let sink: Mutex<Vec<(usize, TaskReport)>> = Mutex::new(Vec::with_capacity(tasks.len()));
    tasks
        .par_iter()
        .enumerate()
        .for_each(|(index, (plan, entry))| {
            let mut searcher = Searcher::new(spec, plan.clone(), classes.clone());
            searcher.cancel = Some((index, &best_finder));
            searcher.descend(0, *entry);
            nodes_seen.fetch_add(searcher.nodes, Ordering::Relaxed);
            let report = TaskReport {
                cut: searcher.cut,
                found: searcher.stop,
                nodes: searcher.nodes,
                strictness_nodes: searcher.strictness_nodes,
                count: searcher.count,
                witnesses: searcher.witnesses,
            };
            sink.lock().unwrap().push((index, report));
        });
    let mut reports = sink.into_inner().unwrap();
    reports.sort_unstable_by_key(|&(index, _)| index);
    debug_assert_eq!(reports.len(), tasks.len());
    if spec.goal == SearchGoal::Exists {
        if let Some(finder) = reports.iter().position(|(_, r)| r.found) {
            for (_, r) in reports.iter().take(finder + 1) {
                debug_assert!(!r.cut);
                total.nodes += r.nodes;
                total.strictness_nodes += r.strictness_nodes;
                total.count += r.count;
            }
            total.witnesses = std::mem::take(&mut reports[finder].1.witnesses);
            total.exists = true;
            total.complete = false;
            if spec.omega.is_none() {
                // Report the least member of the witness orbit, as in the
                // sequential driver.
                total.witnesses = total.witnesses.iter().map(lex_min_representative).collect();
            }
            return total;
        }
    }
    for (_, r) in &mut reports {
        debug_assert!(!r.cut && !r.found);
        total.nodes += r.nodes;
        total.strictness_nodes += r.strictness_nodes;
        total.count += r.count;
        total.witnesses.append(&mut r.witnesses);
    }
    debug_assert_eq!(total.nodes, nodes_seen.load(Ordering::Relaxed));
    total.exists = total.count > 0;
    total
}

/// One row of the classification table for H_t(n;k) over a divisor `t`.
#[derive(Debug, Clone)]
pub struct ClassifyRow {
    pub t: u32,
    pub v: u32,
    pub verdict: crate::systems::NecessaryVerdict,
    pub system_count: u64,
    pub classical: ExistenceAnswer,
    pub strictly_weak: ExistenceAnswer,
}

#[derive(Debug, Clone)]
pub enum ExistenceAnswer {
    Exists { witness: Box<WeakArray>, nodes: u64 },
    None { nodes: u64 },
}

impl ExistenceAnswer {
    pub fn exists(&self) -> bool {
        matches!(self, ExistenceAnswer::Exists { .. })
    }

    fn from_outcome(outcome: SearchOutcome) -> Self {
        if outcome.exists {
            ExistenceAnswer::Exists {
                witness: Box::new(outcome.witnesses.into_iter().next().unwrap()),
                nodes: outcome.nodes,
            }
        } else {
            ExistenceAnswer::None { nodes: outcome.nodes }
        }
    }
}

/// Decides classical and strictly-weak existence of H_t(n;k) for one `t`.
pub fn classify_t(n: usize, k: usize, t: u32, budget: SearchBudget) -> Result<ClassifyRow, SearchError> {
    let ctx = ArrayContext::new(n, n, k, k, t)
        .map_err(|e| SearchError::Inadmissible(e.to_string()))?;
    let system_count = crate::systems::enumerate_heffter_systems(ctx.v, t, k)
        .map(|s| s.len() as u64)
        .unwrap_or(0);
    let mut spec = SearchSpec::new(ctx, SearchMode::Classical, SearchGoal::Exists);
    spec.budget = budget;
    let classical = ExistenceAnswer::from_outcome(search_arrays(&spec)?);
    spec.mode = SearchMode::StrictlyWeak;
    let strictly_weak = ExistenceAnswer::from_outcome(search_arrays(&spec)?);
    Ok(ClassifyRow {
        t,
        v: ctx.v,
        verdict: crate::systems::necessary_conditions(n, k, t),
        system_count,
        classical,
        strictly_weak,
    })
}

/// Full classification over every divisor `t` of `2nk`.
pub fn classify(n: usize, k: usize, budget: SearchBudget) -> Result<Vec<ClassifyRow>, SearchError> {
    let two_nk = 2 * (n as u32) * (k as u32);
    let mut rows = Vec::new();
    for t in 1..=two_nk {
        if two_nk % t != 0 {
            continue;
        }
        rows.push(classify_t(n, k, t, budget)?);
    }
    Ok(rows)
}
