//! The alternating tour over two copies of an array.
//!
//! Fix a direction for every row and every column.  Two copies of the
//! array are kept, indexed `+1` and `-1`; in the `-1` copy every direction
//! is reversed.  Starting from cell `(1,1)`, the tour alternates a column
//! move and a row move: each move slides cyclically to the next filled
//! cell of the current line in the line's direction, and jumps to the
//! other copy whenever the cell it lands on is split.  The orientations
//! *solve* the tour when the walk visits as many states as there are
//! filled cells before returning to the start.  A solution is exactly a
//! pair of compatible line orderings, so it induces an embedding; a cell
//! visited in both copies certifies that the embedding is non-orientable.

use crate::embed::{
    compatibility_report, rotation_and_signature, trace_sequence, EmbedError, LineOrdering,
    RotationSystem,
};
use crate::model::WeakArray;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TourError {
    #[error("expected {expected} {kind} orientations, got {got}")]
    OrientationCount { kind: &'static str, expected: usize, got: usize },
    #[error("orientation entries must be +1 or -1")]
    BadOrientation,
    #[error("the tour must start at cell (1,1), which is empty")]
    EmptyStartCell,
    #[error("the orientations do not solve the tour: {visited} of {cells} cells visited")]
    NotASolution { visited: usize, cells: usize },
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

/// A direction for every line: `+1` reads a column top to bottom or a row
/// left to right, `-1` the opposite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientations {
    pub cols: Vec<i8>,
    pub rows: Vec<i8>,
}

impl Orientations {
    pub fn new(cols: Vec<i8>, rows: Vec<i8>) -> Result<Self, TourError> {
        if cols.iter().chain(&rows).any(|d| !matches!(d, 1 | -1)) {
            return Err(TourError::BadOrientation);
        }
        Ok(Orientations { cols, rows })
    }

    /// The `index`-th of the `2^(m+n)` orientation pairs for an `m x n`
    /// array: bit `j` reverses column `j+1`, bit `n+i` reverses row `i+1`.
    pub fn from_index(m: usize, n: usize, index: u64) -> Self {
        let bit = |b: usize| if index >> b & 1 == 0 { 1 } else { -1 };
        Orientations {
            cols: (0..n).map(bit).collect(),
            rows: (0..m).map(|i| bit(n + i)).collect(),
        }
    }

    fn check(&self, array: &WeakArray) -> Result<(), TourError> {
        let ctx = array.ctx();
        if self.rows.len() != ctx.m {
            return Err(TourError::OrientationCount {
                kind: "row",
                expected: ctx.m,
                got: self.rows.len(),
            });
        }
        if self.cols.len() != ctx.n {
            return Err(TourError::OrientationCount {
                kind: "column",
                expected: ctx.n,
                got: self.cols.len(),
            });
        }
        Ok(())
    }
}

/// One state of the tour: a filled cell of the `copy` ∈ {+1, -1} copy of
/// the array.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TourState {
    pub row: usize,
    pub col: usize,
    pub copy: i8,
}

impl fmt::Display for TourState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.row, self.col, self.copy)
    }
}

fn slide(positions: &[usize], current: usize, dir: i8) -> usize {
    let idx = positions
        .iter()
        .position(|&p| p == current)
        .expect("tour state must sit on a filled cell");
    let len = positions.len();
    let next = if dir > 0 { (idx + 1) % len } else { (idx + len - 1) % len };
    positions[next]
}

/// The column move: slides to the next filled cell of the state's column
/// in direction `c_j * copy`, flipping the copy if the cell landed on is
/// split.
pub fn move_col(array: &WeakArray, orient: &Orientations, state: TourState) -> TourState {
    let rows: Vec<usize> = array.col_cells(state.col).map(|(r, _)| r).collect();
    let row = slide(&rows, state.row, orient.cols[state.col - 1] * state.copy);
    let split = array.get(row, state.col).expect("slide stays on filled cells").split;
    TourState { row, col: state.col, copy: if split { -state.copy } else { state.copy } }
}

/// The row move: slides to the next filled cell of the state's row in
/// direction `r_i * copy`, flipping the copy if the cell landed on is
/// split.
pub fn move_row(array: &WeakArray, orient: &Orientations, state: TourState) -> TourState {
    let cols: Vec<usize> = array.row_cells(state.row).map(|(c, _)| c).collect();
    let col = slide(&cols, state.col, orient.rows[state.row - 1] * state.copy);
    let split = array.get(state.row, col).expect("slide stays on filled cells").split;
    TourState { row: state.row, col, copy: if split { -state.copy } else { state.copy } }
}

/// The tour from `(1,1)`: iterates the column move followed by the row
/// move until the walk first returns to its starting state.
pub fn tour_list(array: &WeakArray, orient: &Orientations) -> Result<Vec<TourState>, TourError> {
    orient.check(array)?;
    let first = array.get(1, 1).ok_or(TourError::EmptyStartCell)?;
    let start = TourState { row: 1, col: 1, copy: if first.split { -1 } else { 1 } };
    let mut list = vec![start];
    loop {
        let state = move_row(array, orient, move_col(array, orient, *list.last().unwrap()));
        if state == start {
            return Ok(list);
        }
        debug_assert!(list.len() < 2 * array.skeleton().len(), "the tour moves are invertible");
        list.push(state);
    }
}

/// Whether the orientations solve the tour: the walk visits every filled
/// cell of one copy or the other, i.e. has full length.
pub fn is_solution(array: &WeakArray, orient: &Orientations) -> Result<bool, TourError> {
    Ok(tour_list(array, orient)?.len() == array.skeleton().len())
}

/// The row-major smallest cell the walk visits in both copies, if any.
/// Such a cell certifies that the induced embedding is non-orientable.
pub fn nonorientable_certificate(list: &[TourState]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for state in list {
        let cell = (state.row, state.col);
        let twin = TourState { copy: -state.copy, ..*state };
        if list.contains(&twin) && best.is_none_or(|b| cell < b) {
            best = Some(cell);
        }
    }
    best
}

/// Result of the exhaustive orientation search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TourSearch {
    pub solutions: Vec<Orientations>,
    /// Orientation pairs examined.
    pub examined: u64,
    /// False when the pair budget cut the enumeration short.
    pub complete: bool,
}

/// Tries all `2^(m+n)` orientation pairs in index order and collects every
/// solution, stopping early if `budget_pairs` is exhausted.
pub fn solve_tour(
    array: &WeakArray,
    budget_pairs: Option<u64>,
) -> Result<TourSearch, TourError> {
    let ctx = array.ctx();
    let lines = ctx.m + ctx.n;
    let total: u64 = 1 << lines.min(63);
    let mut search = TourSearch { solutions: Vec::new(), examined: 0, complete: true };
    for index in 0..total {
        if budget_pairs.is_some_and(|b| search.examined >= b) {
            search.complete = false;
            break;
        }
        search.examined += 1;
        let orient = Orientations::from_index(ctx.m, ctx.n, index);
        if is_solution(array, &orient)? {
            search.solutions.push(orient);
        }
    }
    Ok(search)
}

/// The embedding induced by a tour solution: the line orderings read off
/// the orientations, plus the rotation and signature they generate.
///
/// Checks, and insists on, the equivalence behind the construction: the
/// orientations solve the tour exactly when the induced orderings are
/// compatible, and the walk's `l`-th state carries the `2l+1`-st term of
/// the alternating trace.
pub fn tour_to_embedding(
    array: &WeakArray,
    orient: &Orientations,
) -> Result<(LineOrdering, RotationSystem), TourError> {
    let list = tour_list(array, orient)?;
    let cells = array.skeleton().len();
    let ord = LineOrdering::from_orientations(array, &orient.cols, &orient.rows)?;
    let report = compatibility_report(array, &ord)?;
    assert_eq!(
        report.compatible,
        list.len() == cells,
        "a tour solution and compatible orderings must coincide"
    );
    let ctx = array.ctx();
    let trace = trace_sequence(array, &ord, 2 * list.len())?;
    for (l, state) in list.iter().enumerate() {
        let entry = array.get(state.row, state.col).expect("tour stays on filled cells");
        assert_eq!(
            ctx.reduce(i64::from(trace.a_seq[2 * l])),
            entry.a,
            "tour position {l} must carry the row-signed entry of its cell"
        );
        assert_eq!(
            trace.mu_seq[2 * l], state.copy,
            "tour position {l} must carry the trace's orientation memory"
        );
    }
    if list.len() != cells {
        return Err(TourError::NotASolution { visited: list.len(), cells });
    }
    let rotation = rotation_and_signature(array, &ord)?;
    Ok((ord, rotation))
}
