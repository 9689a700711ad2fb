//! Explicit construction of strictly weak integer Heffter arrays
//! `WH_5(n;5)` for every `n ≡ 0 (mod 4)` with `n ≥ 12`.
//!
//! The pipeline assembles the array in four stages:
//!
//! 1. **base** — a cyclically 3-diagonal integer `H_3(n;3)` whose filled
//!    cells are the diagonals `D_1` (main), `D_2` and `D_n`, produced by ten
//!    diagonal chains plus eight individually placed cells;
//! 2. **lifted** — every positive entry of the main diagonal is raised by
//!    `4n+2` and every negative one lowered by `4n+2`, moving the diagonal's
//!    support to `[4n+3, 5n+2]` while displacing each row and column sum by
//!    `±(4n+2)`;
//! 3. **blocks** — 2x2 blocks are inserted into empty cells, two per line,
//!    restoring most line sums and contributing the split cells that make
//!    the result weak rather than classical;
//! 4. **final** — a few main-diagonal entries are exchanged or negated to
//!    cancel the residual `±1` line sums.
//!
//! The result is an `n x n` array with five filled cells in every row and
//! column, entries supported on `[1, 5n+2] \ {2n+1, 4n+2}`, vanishing
//! integer row and column sums, and no classical array on the same support
//! pattern (strict weakness is certified by
//! [`crate::transforms::strictness_check`] rather than assumed).

use crate::model::{ArrayContext, ModelError, SignedEntry, WeakArray};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("no construction for order {n}: it requires n = 0 (mod 4) and n >= 12")]
    UnsupportedOrder { n: usize },
    #[error("cell ({row},{col}) written twice during assembly")]
    Collision { row: usize, col: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// An integer-valued cell as its row sees it.  `split` marks the cells
/// whose column reads the negated value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntCell {
    pub value: i64,
    pub split: bool,
}

impl IntCell {
    pub fn plain(value: i64) -> Self {
        IntCell { value, split: false }
    }

    pub fn split(value: i64) -> Self {
        IntCell { value, split: true }
    }
}

/// A square partially filled grid of integer cells, 1-based like the
/// arrays it eventually becomes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntGrid {
    n: usize,
    cells: Vec<Option<IntCell>>,
}

impl IntGrid {
    pub fn new(n: usize) -> Self {
        IntGrid { n, cells: vec![None; n * n] }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn index(&self, row: usize, col: usize) -> usize {
        debug_assert!((1..=self.n).contains(&row) && (1..=self.n).contains(&col));
        (row - 1) * self.n + (col - 1)
    }

    pub fn get(&self, row: usize, col: usize) -> Option<IntCell> {
        self.cells[self.index(row, col)]
    }

    /// Writes an empty cell; writing a filled one is an assembly error.
    pub fn put(&mut self, row: usize, col: usize, cell: IntCell) -> Result<(), ConstructError> {
        let idx = self.index(row, col);
        if self.cells[idx].is_some() {
            return Err(ConstructError::Collision { row, col });
        }
        self.cells[idx] = Some(cell);
        Ok(())
    }

    fn overwrite(&mut self, row: usize, col: usize, cell: IntCell) {
        let idx = self.index(row, col);
        debug_assert!(self.cells[idx].is_some());
        self.cells[idx] = Some(cell);
    }

    /// Reduces the grid into residue form over the given context.
    pub fn to_array(&self, ctx: ArrayContext) -> WeakArray {
        let mut array = WeakArray::empty(ctx);
        for row in 1..=self.n {
            for col in 1..=self.n {
                if let Some(cell) = self.get(row, col) {
                    let entry = SignedEntry::from_row_int(&ctx, cell.value, cell.split)
                        .expect("constructed values are nonzero mod v");
                    array.place(row, col, entry).expect("grid fits the context");
                }
            }
        }
        array
    }
}

/// A chain of cells along a diagonal: starting at `(r, c)`, the cell
/// indices advance by `d1` (wrapping modulo the order into `[1, n]`) while
/// the entry starts at `s` and advances by `d2`, for `len` cells in total.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagSpec {
    pub r: usize,
    pub c: usize,
    pub s: i64,
    pub d1: usize,
    pub d2: i64,
    pub len: usize,
}

fn wrap(n: usize, x: usize) -> usize {
    (x - 1) % n + 1
}

/// Fills the `len` cells described by `spec` with plain entries.  Hitting
/// an already filled cell aborts with a collision error.
pub fn diag_fill(grid: &mut IntGrid, spec: &DiagSpec) -> Result<(), ConstructError> {
    let n = grid.order();
    for i in 0..spec.len {
        let row = wrap(n, spec.r + i * spec.d1);
        let col = wrap(n, spec.c + i * spec.d1);
        let value = spec.s + (i as i64) * spec.d2;
        grid.put(row, col, IntCell::plain(value))?;
    }
    Ok(())
}

fn check_order(n: usize) -> Result<(), ConstructError> {
    if n % 4 != 0 || n < 12 {
        return Err(ConstructError::UnsupportedOrder { n });
    }
    Ok(())
}

/// The cyclically 3-diagonal integer `H_3(n;3)` base as an integer grid:
/// ten diagonal chains and eight single cells covering exactly the
/// diagonals `D_1`, `D_2` and `D_n`, with `supp(D_1) = [1, n]` and
/// `supp(D_2 ∪ D_n) = [n+1, 3n+1] \ {2n+1}`.
fn h3_int_grid(n: usize) -> Result<IntGrid, ConstructError> {
    check_order(n)?;
    let w = n as i64;
    let mut grid = IntGrid::new(n);
    let chains = [
        DiagSpec { r: 2, c: 2, s: 1, d1: 1, d2: 1, len: (n - 4) / 2 },
        DiagSpec { r: n / 2 + 3, c: n / 2 + 3, s: -(w + 4) / 2, d1: 1, d2: -1, len: (n - 4) / 2 },
        DiagSpec { r: 2, c: 1, s: -(5 * w + 4) / 2, d1: 2, d2: -1, len: n / 4 },
        DiagSpec { r: 3, c: 2, s: -(3 * w + 2) / 2, d1: 2, d2: -1, len: (n - 4) / 4 },
        DiagSpec { r: 1, c: 2, s: 3 * w / 2, d1: 2, d2: -1, len: n / 4 },
        DiagSpec { r: 2, c: 3, s: (5 * w + 2) / 2, d1: 2, d2: -1, len: (n - 4) / 4 },
        DiagSpec { r: n / 2 + 3, c: n / 2 + 2, s: -5 * w / 4, d1: 2, d2: 1, len: n / 4 },
        DiagSpec { r: n / 2 + 4, c: n / 2 + 3, s: -9 * w / 4, d1: 2, d2: 1, len: (n - 4) / 4 },
        DiagSpec { r: n / 2 + 2, c: n / 2 + 3, s: (11 * w + 8) / 4, d1: 2, d2: 1, len: n / 4 },
        DiagSpec { r: n / 2 + 3, c: n / 2 + 4, s: (7 * w + 8) / 4, d1: 2, d2: 1, len: (n - 4) / 4 },
    ];
    for chain in &chains {
        diag_fill(&mut grid, chain)?;
    }
    let single_cells = [
        (1, 1, -(w - 2) / 2),
        (n / 2, n / 2, w),
        (n / 2, n / 2 + 1, (7 * w + 4) / 4),
        (n / 2 + 1, n / 2, -(9 * w + 4) / 4),
        (n / 2 + 1, n / 2 + 1, (w + 2) / 2),
        (n / 2 + 1, n / 2 + 2, 7 * w / 4),
        (n / 2 + 2, n / 2 + 1, -(9 * w + 8) / 4),
        (n / 2 + 2, n / 2 + 2, -w / 2),
    ];
    for &(row, col, value) in &single_cells {
        grid.put(row, col, IntCell::plain(value))?;
    }
    Ok(grid)
}

/// Builds the classical integer `H_3(n;3)` base (`t = 3`, `v = 6n + 3`)
/// for `n ≡ 0 (mod 4)`, `n ≥ 12`.
pub fn build_h3_base(n: usize) -> Result<WeakArray, ConstructError> {
    let grid = h3_int_grid(n)?;
    let ctx = ArrayContext::new(n, n, 3, 3, 3)?;
    Ok(grid.to_array(ctx))
}

/// One 2x2 block together with the position of its top-left cell.  The
/// entries carry their final sign and split decoration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MBlock {
    pub i: usize,
    pub row: usize,
    pub col: usize,
    pub entries: [[IntCell; 2]; 2],
}

/// The full set of 2x2 blocks for order `n`, in insertion order: the two
/// special blocks, then for odd `i ∈ [3, n/2-1]` the blocks with both
/// signs flipped and split, and for odd `i ∈ [n/2+3, n-1]` the transposed
/// blocks split with their signs kept.  Together they cover the values
/// `[1, n] ∪ [3n+2, 4n+1]`, adding exactly two cells to every line.
pub fn m_blocks(n: usize) -> Vec<MBlock> {
    let w = n as i64;
    let h = n / 2;
    let mut blocks = vec![
        MBlock {
            i: 1,
            row: 1,
            col: h + 1,
            entries: [
                [IntCell::split(1), IntCell::plain(4 * w + 1)],
                [IntCell::plain(-4 * w), IntCell::split(-2)],
            ],
        },
        MBlock {
            i: 2,
            row: h + 1,
            col: 1,
            entries: [
                [IntCell::split(-(w / 2 + 1)), IntCell::plain(-7 * w / 2)],
                [IntCell::plain(7 * w / 2 + 1), IntCell::split(w / 2 + 2)],
            ],
        },
    ];
    let mut i = 3;
    while i <= h - 1 {
        let x = i as i64;
        blocks.push(MBlock {
            i,
            row: i,
            col: h + i,
            entries: [
                [IntCell::split(-(x + 1)), IntCell::split(-(4 * w + 1 - x))],
                [IntCell::split(-(4 * w + 2 - x)), IntCell::split(-x)],
            ],
        });
        i += 2;
    }
    let mut i = h + 3;
    while i <= n - 1 {
        let x = i as i64;
        blocks.push(MBlock {
            i,
            row: i,
            col: i - h,
            entries: [
                [IntCell::split(x + 1), IntCell::split(4 * w + 2 - x)],
                [IntCell::split(4 * w + 1 - x), IntCell::split(x)],
            ],
        });
        i += 2;
    }
    blocks
}

fn lift_main_diagonal(grid: &mut IntGrid) {
    let n = grid.order();
    let shift = 4 * n as i64 + 2;
    for i in 1..=n {
        let cell = grid.get(i, i).expect("main diagonal is filled in the base");
        let value = if cell.value > 0 { cell.value + shift } else { cell.value - shift };
        grid.overwrite(i, i, IntCell { value, ..cell });
    }
}

fn insert_blocks(grid: &mut IntGrid) -> Result<(), ConstructError> {
    let n = grid.order();
    for block in m_blocks(n) {
        for (dr, row_cells) in block.entries.iter().enumerate() {
            for (dc, &cell) in row_cells.iter().enumerate() {
                grid.put(block.row + dr, block.col + dc, cell)?;
            }
        }
    }
    Ok(())
}

fn final_exchanges(grid: &mut IntGrid) {
    let n = grid.order();
    let h = n / 2;
    let mut i = h + 3;
    while i <= n - 1 {
        let a = grid.get(i, i).expect("diagonal filled");
        let b = grid.get(i + 1, i + 1).expect("diagonal filled");
        grid.overwrite(i, i, b);
        grid.overwrite(i + 1, i + 1, a);
        i += 2;
    }
    // The two remaining assignments read each other's old value, so both
    // reads happen before either write.
    let a = grid.get(h + 1, h + 1).expect("diagonal filled");
    let b = grid.get(h + 2, h + 2).expect("diagonal filled");
    grid.overwrite(h + 1, h + 1, IntCell { value: -b.value, ..b });
    grid.overwrite(h + 2, h + 2, IntCell { value: -a.value, ..a });
}

/// Assembly checkpoints, in pipeline order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WH5Stage {
    /// The classical `H_3(n;3)` base (emitted over `v = 6n + 3`, `t = 3`).
    Base,
    /// After the main-diagonal lift (over the final `v = 10n + 5`).
    Lifted,
    /// After block insertion, before the diagonal exchanges.
    Blocks,
    /// The finished weak Heffter array.
    Final,
}

/// Runs the pipeline up to `stage`.  Intermediate stages are emitted in
/// the final context `v = 10n + 5`, `t = 5` (except `Base`, which is a
/// complete array in its own right); they deliberately fail verification,
/// existing only for inspection.
pub fn assemble_wh5_stage(n: usize, stage: WH5Stage) -> Result<WeakArray, ConstructError> {
    if stage == WH5Stage::Base {
        return build_h3_base(n);
    }
    let mut grid = h3_int_grid(n)?;
    let ctx = ArrayContext::new(n, n, 5, 5, 5)?;
    lift_main_diagonal(&mut grid);
    if stage == WH5Stage::Lifted {
        return Ok(grid.to_array(ctx));
    }
    insert_blocks(&mut grid)?;
    if stage == WH5Stage::Blocks {
        return Ok(grid.to_array(ctx));
    }
    final_exchanges(&mut grid);
    Ok(grid.to_array(ctx))
}

/// The strictly weak integer `WH_5(n;5)` for `n ≡ 0 (mod 4)`, `n ≥ 12`:
/// `t = 5`, `v = 10n + 5`, five cells per line, support
/// `[1, 5n+2] \ {2n+1, 4n+2}`.
pub fn assemble_wh5(n: usize) -> Result<WeakArray, ConstructError> {
    assemble_wh5_stage(n, WH5Stage::Final)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::format::emit_text;
    use crate::model::VerifyMode;
    use crate::transforms::strictness_check;
    use std::collections::BTreeSet;

    fn support(a: &WeakArray) -> BTreeSet<u32> {
        a.filled().map(|(_, _, e)| e.row_sym(a.ctx()).unsigned_abs()).collect()
    }

    fn expected_wh5_support(n: u32) -> BTreeSet<u32> {
        (1..=5 * n + 2).filter(|&x| x != 2 * n + 1 && x != 4 * n + 2).collect()
    }

    #[test]
    fn base_matches_the_pinned_twelve_by_twelve() {
        let a = build_h3_base(12).unwrap();
        assert_eq!(emit_text(&a), corpus::by_name("h3_12x12").unwrap().text);
    }

    #[test]
    fn final_matches_the_pinned_twelve_by_twelve() {
        let a = assemble_wh5(12).unwrap();
        assert_eq!(emit_text(&a), corpus::by_name("wh5_12x12").unwrap().text);
    }

    #[test]
    fn rejected_orders() {
        for n in [4usize, 8, 10, 13, 14] {
            assert_eq!(build_h3_base(n), Err(ConstructError::UnsupportedOrder { n }));
            assert_eq!(assemble_wh5(n), Err(ConstructError::UnsupportedOrder { n }));
        }
    }

    #[test]
    fn diag_fill_wraps_and_rejects_collisions() {
        let mut g = IntGrid::new(6);
        diag_fill(&mut g, &DiagSpec { r: 5, c: 6, s: 9, d1: 2, d2: 1, len: 3 }).unwrap();
        assert_eq!(g.get(5, 6), Some(IntCell::plain(9)));
        assert_eq!(g.get(1, 2), Some(IntCell::plain(10)));
        assert_eq!(g.get(3, 4), Some(IntCell::plain(11)));
        let clash = diag_fill(&mut g, &DiagSpec { r: 1, c: 2, s: -1, d1: 1, d2: 0, len: 1 });
        assert_eq!(clash, Err(ConstructError::Collision { row: 1, col: 2 }));
    }

    #[test]
    fn base_is_a_relative_classical_integer_array_on_three_diagonals() {
        for n in [12usize, 16, 20] {
            let a = build_h3_base(n).unwrap();
            let ctx = *a.ctx();
            assert_eq!(ctx.v, 6 * n as u32 + 3);
            let report = a.verify_integer(VerifyMode::RelativeClassical);
            assert!(report.ok, "n={n}: {report}");
            let w = n as u32;
            let diag_supp: BTreeSet<u32> = (1..=n)
                .map(|i| a.get(i, i).unwrap().row_sym(&ctx).unsigned_abs())
                .collect();
            assert_eq!(diag_supp, (1..=w).collect());
            let full: BTreeSet<u32> = (1..=3 * w + 1).filter(|&x| x != 2 * w + 1).collect();
            assert_eq!(support(&a), full);
        }
    }

    #[test]
    fn lift_moves_the_main_diagonal_support() {
        let a = assemble_wh5_stage(12, WH5Stage::Lifted).unwrap();
        let ctx = *a.ctx();
        assert_eq!(ctx.v, 125);
        let diag: Vec<i32> = (1..=12).map(|i| a.get(i, i).unwrap().row_sym(&ctx)).collect();
        assert_eq!(diag, [-55, 51, 52, 53, 54, 62, 57, -56, -58, -59, -60, -61]);
        let diag_supp: BTreeSet<u32> = diag.iter().map(|x| x.unsigned_abs()).collect();
        assert_eq!(diag_supp, (51..=62).collect());
    }

    #[test]
    fn block_stage_has_the_residual_sum_profile() {
        let a = assemble_wh5_stage(12, WH5Stage::Blocks).unwrap();
        let ctx = *a.ctx();
        let row_sums: Vec<i64> = (1..=12)
            .map(|r| a.row_cells(r).map(|(_, e)| i64::from(e.row_sym(&ctx))).sum())
            .collect();
        let col_sums: Vec<i64> = (1..=12)
            .map(|c| a.col_cells(c).map(|(_, e)| i64::from(e.col_sym(&ctx))).sum())
            .collect();
        let profile = [0, 0, 0, 0, 0, 0, 1, 1, 1, -1, 1, -1];
        assert_eq!(row_sums, profile);
        assert_eq!(col_sums, profile);
        // The exchanges have not happened yet.
        assert_eq!(a.get(7, 7).unwrap().row_sym(&ctx), 57);
        assert_eq!(a.get(8, 8).unwrap().row_sym(&ctx), -56);
    }

    #[test]
    fn blocks_cover_the_small_and_high_values_with_two_cells_per_line() {
        let n = 16;
        let blocks = m_blocks(n);
        let mut per_row = vec![0usize; n + 1];
        let mut per_col = vec![0usize; n + 1];
        let mut values = BTreeSet::new();
        for b in &blocks {
            for (dr, row_cells) in b.entries.iter().enumerate() {
                for (dc, cell) in row_cells.iter().enumerate() {
                    per_row[b.row + dr] += 1;
                    per_col[b.col + dc] += 1;
                    assert!(values.insert(cell.value.unsigned_abs()));
                }
            }
        }
        assert!(per_row[1..].iter().all(|&c| c == 2));
        assert!(per_col[1..].iter().all(|&c| c == 2));
        let w = n as u64;
        let expected: BTreeSet<u64> = (1..=w).chain(3 * w + 2..=4 * w + 1).collect();
        assert_eq!(values, expected);
    }

    #[test]
    fn split_cells_are_exactly_the_decorated_block_cells() {
        let a = assemble_wh5(12).unwrap();
        let (_, split) = a.theta_omega();
        let expected: BTreeSet<(usize, usize)> = [
            (1, 7),
            (2, 8),
            (7, 1),
            (8, 2),
            (3, 9),
            (3, 10),
            (4, 9),
            (4, 10),
            (5, 11),
            (5, 12),
            (6, 11),
            (6, 12),
            (9, 3),
            (9, 4),
            (10, 3),
            (10, 4),
            (11, 5),
            (11, 6),
            (12, 5),
            (12, 6),
        ]
        .into_iter()
        .collect();
        assert_eq!(split.into_iter().collect::<BTreeSet<_>>(), expected);
    }

    #[test]
    fn assembled_arrays_verify_over_a_range_of_orders() {
        for n in [12usize, 16, 20, 24] {
            let a = assemble_wh5(n).unwrap();
            let ctx = *a.ctx();
            assert_eq!(ctx.v, 10 * n as u32 + 5);
            assert_eq!(ctx.t, 5);
            let report = a.verify_integer(VerifyMode::RelativeWeak);
            assert!(report.ok, "n={n}: {report}");
            assert_eq!(support(&a), expected_wh5_support(n as u32));
        }
    }

    #[test]
    fn sixteen_is_strictly_weak() {
        let a = assemble_wh5(16).unwrap();
        assert!(strictness_check(&a).unwrap().is_strict());
    }
}
