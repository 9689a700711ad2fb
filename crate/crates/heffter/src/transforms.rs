//! Sign-flipping transforms that turn classical arrays into weak ones, and the
//! exhaustive oracle deciding whether a weak array is *strictly* weak.
//!
//! A split cell stores different signs in its row view and its column view, so
//! negating every row-view value along a zero-sum set of cells keeps all line
//! sums at zero while changing which cells are split.  `flip_row_subset`,
//! `flip_col_subset` and `flip_lines` implement the three standard moves;
//! `strictness_check` decides by complete search whether *any* assignment of
//! plain signs to the same absolute values yields a classical array.

use crate::model::{ArrayContext, SignedEntry, VerifyMode, WeakArray};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A row or column reference, 1-based like the cell API.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index", rename_all = "kebab-case")]
pub enum Line {
    Row(usize),
    Col(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransformError {
    #[error("line index {0:?} out of range")]
    LineOutOfRange(Line),
    #[error("value {0} does not occur in the selected line")]
    ValueNotInLine(i32),
    #[error("value {0} listed more than once")]
    DuplicateValue(i32),
    #[error("subset sums to {0}, not 0 (mod v)")]
    NotZeroSum(i64),
    #[error("subset must be a proper subset of the line ({got} of {line} cells)")]
    NotProper { got: usize, line: usize },
    #[error("input array fails {mode} verification")]
    NotVerified { mode: VerifyMode },
}

/// All nonempty proper subsets of `line` whose sum is `0 (mod v)`.
///
/// When a subset covers more than half the line *and* its complement is also
/// zero-sum, only the complement is reported: listing both would double every
/// usable flip without adding information, since flipping a set and flipping
/// its complement produce the same array up to a whole-line flip.  Subsets
/// keep the order of `line` internally and are listed small-first.
pub fn zero_sum_proper_subsets(v: u32, line: &[i32]) -> Vec<Vec<i32>> {
    let len = line.len();
    if len == 0 {
        return Vec::new();
    }
    let zero_sum = |mask: u32| -> bool {
        let mut sum: i64 = 0;
        for (i, &x) in line.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum += i64::from(x);
            }
        }
        sum.rem_euclid(i64::from(v)) == 0
    };
    let full: u32 = if len == 32 { u32::MAX } else { (1 << len) - 1 };
    let mut masks: Vec<u32> = (1..full).filter(|&m| zero_sum(m)).collect();
    masks.retain(|&m| {
        let size = m.count_ones() as usize;
        size <= len / 2 || !zero_sum(full ^ m)
    });
    masks.sort_by_key(|&m| (m.count_ones(), m));
    masks
        .into_iter()
        .map(|m| {
            line.iter()
                .enumerate()
                .filter(|&(i, _)| m & (1 << i) != 0)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

/// Negate the row view of one cell: the row value flips sign, the column
/// value is untouched, so the split flag toggles.
fn flip_row_view(ctx: &ArrayContext, e: SignedEntry) -> SignedEntry {
    SignedEntry {
        a: ctx.neg(e.a),
        split: !e.split,
    }
}

/// Negate the column view of one cell: the row value is untouched.
fn flip_col_view(e: SignedEntry) -> SignedEntry {
    SignedEntry {
        a: e.a,
        split: !e.split,
    }
}

fn check_weak(a: &WeakArray) -> Result<(), TransformError> {
    let mode = VerifyMode::weak_for(a.ctx().t);
    if !a.verify(mode).ok {
        return Err(TransformError::NotVerified { mode });
    }
    Ok(())
}

/// Flip the row view of the cells of row `row` whose row values match
/// `subset` (symmetric representatives).  The subset must be zero-sum and
/// proper; the empty subset is allowed and returns the array unchanged.
pub fn flip_row_subset(
    a: &WeakArray,
    row: usize,
    subset: &[i32],
) -> Result<WeakArray, TransformError> {
    check_weak(a)?;
    let ctx = *a.ctx();
    if row < 1 || row > ctx.m {
        return Err(TransformError::LineOutOfRange(Line::Row(row)));
    }
    let cells: Vec<(usize, SignedEntry)> = a.row_cells(row).collect();
    let picked = pick_cells(&cells, subset, |e| e.row_sym(&ctx))?;
    ensure_flippable(&ctx, subset, cells.len())?;
    let mut out = a.clone();
    for &col in &picked {
        let e = out.get(row, col).unwrap();
        out.set(row, col, Some(flip_row_view(&ctx, e))).unwrap();
    }
    Ok(out)
}

/// Column analogue of [`flip_row_subset`]: matches `subset` against column
/// values and flips the column view of the matched cells.
pub fn flip_col_subset(
    a: &WeakArray,
    col: usize,
    subset: &[i32],
) -> Result<WeakArray, TransformError> {
    check_weak(a)?;
    let ctx = *a.ctx();
    if col < 1 || col > ctx.n {
        return Err(TransformError::LineOutOfRange(Line::Col(col)));
    }
    let cells: Vec<(usize, SignedEntry)> = a.col_cells(col).collect();
    let picked = pick_cells(&cells, subset, |e| e.col_sym(&ctx))?;
    ensure_flippable(&ctx, subset, cells.len())?;
    let mut out = a.clone();
    for &row in &picked {
        let e = out.get(row, col).unwrap();
        out.set(row, col, Some(flip_col_view(e))).unwrap();
    }
    Ok(out)
}

/// Locate the cells of one line carrying the requested symmetric values.
fn pick_cells(
    cells: &[(usize, SignedEntry)],
    subset: &[i32],
    value_of: impl Fn(&SignedEntry) -> i32,
) -> Result<Vec<usize>, TransformError> {
    let mut picked = Vec::with_capacity(subset.len());
    for &want in subset {
        let hits: Vec<usize> = cells
            .iter()
            .filter(|(_, e)| value_of(e) == want)
            .map(|&(idx, _)| idx)
            .collect();
        match hits.as_slice() {
            [] => return Err(TransformError::ValueNotInLine(want)),
            [one] => {
                if picked.contains(one) {
                    return Err(TransformError::DuplicateValue(want));
                }
                picked.push(*one);
            }
            _ => return Err(TransformError::DuplicateValue(want)),
        }
    }
    Ok(picked)
}

fn ensure_flippable(ctx: &ArrayContext, subset: &[i32], line: usize) -> Result<(), TransformError> {
    if subset.len() >= line && !subset.is_empty() {
        return Err(TransformError::NotProper {
            got: subset.len(),
            line,
        });
    }
    let sum: i64 = subset.iter().map(|&x| i64::from(x)).sum();
    if sum.rem_euclid(i64::from(ctx.v)) != 0 {
        return Err(TransformError::NotZeroSum(sum));
    }
    Ok(())
}

/// Flip whole rows and columns at once.  A cell inside one selected row *or*
/// one selected column has that view negated; a cell covered by both a
/// selected row and a selected column has both views negated, which keeps it
/// plain-or-split as it was and negates its stored value.  Duplicate entries
/// in `lines` are ignored (set semantics), so applying the same selection
/// twice restores the original array exactly.
pub fn flip_lines(a: &WeakArray, lines: &[Line]) -> Result<WeakArray, TransformError> {
    check_weak(a)?;
    let ctx = *a.ctx();
    let mut rows = vec![false; ctx.m + 1];
    let mut cols = vec![false; ctx.n + 1];
    for &line in lines {
        match line {
            Line::Row(i) => {
                if i < 1 || i > ctx.m {
                    return Err(TransformError::LineOutOfRange(line));
                }
                rows[i] = true;
            }
            Line::Col(j) => {
                if j < 1 || j > ctx.n {
                    return Err(TransformError::LineOutOfRange(line));
                }
                cols[j] = true;
            }
        }
    }
    let mut out = a.clone();
    for (r, c, e) in a.filled() {
        let next = match (rows[r], cols[c]) {
            (false, false) => continue,
            (true, false) => flip_row_view(&ctx, e),
            (false, true) => flip_col_view(e),
            (true, true) => flip_col_view(flip_row_view(&ctx, e)),
        };
        out.set(r, c, Some(next)).unwrap();
    }
    Ok(out)
}

/// Outcome of the strictness oracle.  `nodes` counts search-tree nodes, as a
/// cheap effort measure for reports and budget sanity checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strictness {
    /// No assignment of plain signs to the same absolute values yields a
    /// classical array: the input is strictly weak.  The search completed.
    StrictlyWeak { nodes: u64 },
    /// A classical array on the same absolute values exists.
    NotStrict { witness: WeakArray, nodes: u64 },
}

impl Strictness {
    pub fn is_strict(&self) -> bool {
        matches!(self, Strictness::StrictlyWeak { .. })
    }

    pub fn nodes(&self) -> u64 {
        match self {
            Strictness::StrictlyWeak { nodes } | Strictness::NotStrict { nodes, .. } => *nodes,
        }
    }
}

/// Decide whether any classical array shares the input's absolute values
/// cellwise.
///
/// The search is complete: per row, every sign vector achieving a zero row
/// sum (mod v) is enumerated up front; rows are then assigned depth-first,
/// most-constrained row first, with two column prunes — a completed column
/// must sum to zero (mod v), and a partial column is abandoned as soon as no
/// multiple of v remains reachable from its integer partial sum given the
/// magnitudes still unassigned.  Candidate vectors are ordered by how few
/// cells they flip relative to the input's own row signs, so a witness, when
/// one exists, reuses the input's signs wherever possible and a classical
/// input is returned unchanged.
pub fn strictness_check(a: &WeakArray) -> Result<Strictness, TransformError> {
    check_weak(a)?;
    let ctx = *a.ctx();
    let v = i64::from(ctx.v);

    struct RowPlan {
        row: usize,
        cols: Vec<usize>,
        mags: Vec<i64>,
        vectors: Vec<Vec<i8>>,
    }

    let mut plans: Vec<RowPlan> = Vec::with_capacity(ctx.m);
    for row in 1..=ctx.m {
        let cells: Vec<(usize, SignedEntry)> = a.row_cells(row).collect();
        let cols: Vec<usize> = cells.iter().map(|&(c, _)| c).collect();
        let mags: Vec<i64> = cells
            .iter()
            .map(|(_, e)| i64::from(ctx.class_rep(e.a)))
            .collect();
        let own: Vec<i8> = cells
            .iter()
            .map(|(_, e)| if e.row_sym(&ctx) >= 0 { 1 } else { -1 })
            .collect();
        let mut vectors = Vec::new();
        for bits in 0u32..(1 << cells.len()) {
            let signs: Vec<i8> = (0..cells.len())
                .map(|i| if bits & (1 << i) != 0 { -1 } else { 1 })
                .collect();
            let sum: i64 = signs
                .iter()
                .zip(&mags)
                .map(|(&s, &m)| i64::from(s) * m)
                .sum();
            if sum.rem_euclid(v) == 0 {
                vectors.push(signs);
            }
        }
        // Prefer vectors that deviate least from the input's own signs.
        vectors.sort_by_key(|signs| {
            let flips = signs.iter().zip(&own).filter(|(s, o)| s != o).count();
            (flips, signs.iter().map(|&s| s < 0).collect::<Vec<_>>())
        });
        plans.push(RowPlan {
            row,
            cols,
            mags,
            vectors,
        });
    }
    plans.sort_by_key(|p| p.vectors.len());

    // Per-column running state, indexed 1..=n.
    let mut col_sum = vec![0i64; ctx.n + 1];
    let mut col_left = vec![0i64; ctx.n + 1];
    let mut col_cells_left = vec![0usize; ctx.n + 1];
    for p in &plans {
        for (&c, &m) in p.cols.iter().zip(&p.mags) {
            col_left[c] += m;
            col_cells_left[c] += 1;
        }
    }

    fn window_has_multiple(sum: i64, slack: i64, v: i64) -> bool {
        // Any multiple of v in [sum - slack, sum + slack]?
        let lo = sum - slack;
        let hi = sum + slack;
        hi.div_euclid(v) >= lo.div_euclid(v) + i64::from(lo.rem_euclid(v) != 0)
    }

    fn dfs(
        plans: &[RowPlan],
        depth: usize,
        v: i64,
        col_sum: &mut [i64],
        col_left: &mut [i64],
        col_cells_left: &mut [usize],
        nodes: &mut u64,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if depth == plans.len() {
            return true;
        }
        let p = &plans[depth];
        for (vi, signs) in p.vectors.iter().enumerate() {
            *nodes += 1;
            for ((&c, &m), &s) in p.cols.iter().zip(&p.mags).zip(signs) {
                col_sum[c] += i64::from(s) * m;
                col_left[c] -= m;
                col_cells_left[c] -= 1;
            }
            let mut feasible = true;
            for &c in &p.cols {
                if col_cells_left[c] == 0 {
                    if col_sum[c].rem_euclid(v) != 0 {
                        feasible = false;
                        break;
                    }
                } else if !window_has_multiple(col_sum[c], col_left[c], v) {
                    feasible = false;
                    break;
                }
            }
            if feasible {
                chosen.push(vi);
                if dfs(
                    plans,
                    depth + 1,
                    v,
                    col_sum,
                    col_left,
                    col_cells_left,
                    nodes,
                    chosen,
                ) {
                    // Unwind is skipped on success; the caller only reads `chosen`.
                    return true;
                }
                chosen.pop();
            }
            for ((&c, &m), &s) in p.cols.iter().zip(&p.mags).zip(signs) {
                col_sum[c] -= i64::from(s) * m;
                col_left[c] += m;
                col_cells_left[c] += 1;
            }
        }
        false
    }

    let mut nodes = 0u64;
    let mut chosen: Vec<usize> = Vec::with_capacity(ctx.m);
    let found = dfs(
        &plans,
        0,
        v,
        &mut col_sum,
        &mut col_left,
        &mut col_cells_left,
        &mut nodes,
        &mut chosen,
    );
    if !found {
        return Ok(Strictness::StrictlyWeak { nodes });
    }

    let mut witness = WeakArray::empty(ctx);
    for (p, &vi) in plans.iter().zip(&chosen) {
        for ((&c, &m), &s) in p.cols.iter().zip(&p.mags).zip(&p.vectors[vi]) {
            let value = i64::from(s) * m;
            witness
                .place(p.row, c, SignedEntry::from_row_int(&ctx, value, false).unwrap())
                .unwrap();
        }
    }
    debug_assert!(witness.verify(VerifyMode::classical_for(ctx.t)).ok);
    Ok(Strictness::NotStrict { witness, nodes })
}
