//! Core data model: array contexts, signed entries, weak arrays, verification.
//!
//! Entries live in `Z_v` and are stored as the *row value*: the residue `a` in
//! `[1, v-1]` that the cell's row sees.  A plain cell shows `a` to its column
//! as well; a split cell shows `v - a`.  The printed forms `±x` and `∓x`
//! (`x > 0`) correspond to split cells with row value `x` and `-x`
//! respectively.  Symmetric representatives map `a` to `a` when
//! `a <= floor(v/2)` and to `a - v` otherwise, so arrays print the way they
//! are written on paper.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors produced while building contexts and arrays.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("array dimensions and fill counts must be positive")]
    ZeroDimension,
    #[error("fill counts h={h}, k={k} do not fit an {m}x{n} array")]
    FillTooLarge { m: usize, n: usize, h: usize, k: usize },
    #[error("total fill mismatch: n*k = {nk} but m*h = {mh}")]
    UnbalancedFill { nk: usize, mh: usize },
    #[error("subgroup order t={t} does not divide 2nk = {group}")]
    BadSubgroupOrder { t: u32, group: u32 },
    #[error("no h, k fit v={v}, t={t}, m={m}, n={n}")]
    BadHeader { v: u32, t: u32, m: usize, n: usize },
    #[error("cell ({row},{col}) outside the array")]
    CellOutOfRange { row: usize, col: usize },
    #[error("cell ({row},{col}) is already filled")]
    CellOccupied { row: usize, col: usize },
    #[error("value {value} is not a nonzero residue modulo {v}")]
    ValueOutOfRange { value: i64, v: u32 },
    #[error("no cell of the array carries the class of {class}")]
    ClassNotPresent { class: u32 },
}

/// Shape of a (weak) relative Heffter array: `m x n`, `h` filled cells per
/// row, `k` per column, over `Z_v` with `v = 2nk + t` relative to the
/// subgroup of order `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArrayContext {
    pub m: usize,
    pub n: usize,
    pub h: usize,
    pub k: usize,
    pub t: u32,
    pub v: u32,
}

impl ArrayContext {
    /// Builds a context from the shape parameters, checking `nk = mh`,
    /// `h <= n`, `k <= m` and `t | 2nk`, and deriving `v = 2nk + t`.
    pub fn new(m: usize, n: usize, h: usize, k: usize, t: u32) -> Result<Self, ModelError> {
        if m == 0 || n == 0 || h == 0 || k == 0 || t == 0 {
            return Err(ModelError::ZeroDimension);
        }
        if h > n || k > m {
            return Err(ModelError::FillTooLarge { m, n, h, k });
        }
        if n * k != m * h {
            return Err(ModelError::UnbalancedFill { nk: n * k, mh: m * h });
        }
        let group = 2 * (n * k) as u32;
        if group % t != 0 {
            return Err(ModelError::BadSubgroupOrder { t, group });
        }
        Ok(ArrayContext { m, n, h, k, t, v: group + t })
    }

    /// Recovers the full context from the file header `(v, t, m, n)`: the fill
    /// counts are forced by `2nk = 2mh = v - t`.
    pub fn from_header(v: u32, t: u32, m: usize, n: usize) -> Result<Self, ModelError> {
        if t == 0 || v <= t || m == 0 || n == 0 {
            return Err(ModelError::BadHeader { v, t, m, n });
        }
        let group = (v - t) as usize;
        if group % (2 * m) != 0 || group % (2 * n) != 0 {
            return Err(ModelError::BadHeader { v, t, m, n });
        }
        let ctx = Self::new(m, n, group / (2 * m), group / (2 * n), t)?;
        if ctx.v != v {
            return Err(ModelError::BadHeader { v, t, m, n });
        }
        Ok(ctx)
    }

    /// Reduces an integer into `[0, v)`.
    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.v as i64) as u32
    }

    /// `-a` in `Z_v`.
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 { 0 } else { self.v - a }
    }

    /// `a + b` in `Z_v` for reduced operands.
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.v { s - self.v } else { s }
    }

    /// Symmetric representative of `a`: itself when `a <= floor(v/2)`,
    /// otherwise `a - v`.
    pub fn sym_rep(&self, a: u32) -> i32 {
        if a <= self.v / 2 {
            a as i32
        } else {
            a as i32 - self.v as i32
        }
    }

    /// Canonical representative `min(a, -a)` of the pair class `{a, -a}`.
    pub fn class_rep(&self, a: u32) -> u32 {
        a.min(self.neg(a))
    }

    /// Whether `a` lies in the order-`t` subgroup `J` (the multiples of `v/t`).
    pub fn in_subgroup(&self, a: u32) -> bool {
        a % (self.v / self.t) == 0
    }

    /// Canonical representatives of the `(v - t) / 2` pair classes of
    /// `(Z_v \ J) / ±`, in increasing order.
    pub fn classes(&self) -> impl Iterator<Item = u32> + '_ {
        (1..=self.v / 2).filter(|&a| !self.in_subgroup(a))
    }

    /// Number of pair classes, `(v - t) / 2  =  nk`.
    pub fn class_count(&self) -> usize {
        ((self.v - self.t) / 2) as usize
    }
}

/// One filled cell: the row value `a` in `[1, v-1]` plus the split flag.
/// The column sees `a` when the cell is plain and `v - a` when it is split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedEntry {
    pub a: u32,
    pub split: bool,
}

impl SignedEntry {
    pub fn plain(a: u32) -> Self {
        SignedEntry { a, split: false }
    }

    pub fn split(a: u32) -> Self {
        SignedEntry { a, split: true }
    }

    /// Builds an entry from the signed integer its row sees.
    pub fn from_row_int(ctx: &ArrayContext, x: i64, split: bool) -> Result<Self, ModelError> {
        let a = ctx.reduce(x);
        if a == 0 {
            return Err(ModelError::ValueOutOfRange { value: x, v: ctx.v });
        }
        Ok(SignedEntry { a, split })
    }

    /// The residue the column sees.
    pub fn col_value(&self, ctx: &ArrayContext) -> u32 {
        if self.split { ctx.neg(self.a) } else { self.a }
    }

    /// Pair class of the entry.
    pub fn class(&self, ctx: &ArrayContext) -> u32 {
        ctx.class_rep(self.a)
    }

    pub fn row_sym(&self, ctx: &ArrayContext) -> i32 {
        ctx.sym_rep(self.a)
    }

    pub fn col_sym(&self, ctx: &ArrayContext) -> i32 {
        ctx.sym_rep(self.col_value(ctx))
    }
}

/// A partially filled `m x n` array of signed entries over `Z_v`.
///
/// The structure enforces only shape and residue range; the Heffter
/// conditions are checked by [`WeakArray::verify`], so that defective arrays
/// can be represented and reported on.  Rows and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakArray {
    ctx: ArrayContext,
    cells: Vec<Option<SignedEntry>>,
}

impl WeakArray {
    /// A fully empty array of the given shape.
    pub fn empty(ctx: ArrayContext) -> Self {
        WeakArray { cells: vec![None; ctx.m * ctx.n], ctx }
    }

    pub fn ctx(&self) -> &ArrayContext {
        &self.ctx
    }

    fn index(&self, row: usize, col: usize) -> Result<usize, ModelError> {
        if row == 0 || row > self.ctx.m || col == 0 || col > self.ctx.n {
            return Err(ModelError::CellOutOfRange { row, col });
        }
        Ok((row - 1) * self.ctx.n + (col - 1))
    }

    /// Fills an empty cell.
    pub fn place(&mut self, row: usize, col: usize, entry: SignedEntry) -> Result<(), ModelError> {
        if entry.a == 0 || entry.a >= self.ctx.v {
            return Err(ModelError::ValueOutOfRange { value: entry.a as i64, v: self.ctx.v });
        }
        let idx = self.index(row, col)?;
        if self.cells[idx].is_some() {
            return Err(ModelError::CellOccupied { row, col });
        }
        self.cells[idx] = Some(entry);
        Ok(())
    }

    /// Empties a cell (a no-op when it is already empty).
    pub fn clear(&mut self, row: usize, col: usize) -> Result<(), ModelError> {
        let idx = self.index(row, col)?;
        self.cells[idx] = None;
        Ok(())
    }

    /// Replaces the content of a cell regardless of its current state.
    pub fn set(&mut self, row: usize, col: usize, entry: Option<SignedEntry>) -> Result<(), ModelError> {
        if let Some(e) = entry {
            if e.a == 0 || e.a >= self.ctx.v {
                return Err(ModelError::ValueOutOfRange { value: e.a as i64, v: self.ctx.v });
            }
        }
        let idx = self.index(row, col)?;
        self.cells[idx] = entry;
        Ok(())
    }

    /// The entry at `(row, col)`, if the cell is filled.
    ///
    /// # Panics
    /// Panics when the cell lies outside the array.
    pub fn get(&self, row: usize, col: usize) -> Option<SignedEntry> {
        let idx = self.index(row, col).expect("cell outside the array");
        self.cells[idx]
    }

    /// All filled cells as `(row, col, entry)` in row-major order.
    pub fn filled(&self) -> impl Iterator<Item = (usize, usize, SignedEntry)> + '_ {
        self.cells.iter().enumerate().filter_map(move |(i, cell)| {
            cell.map(|e| (i / self.ctx.n + 1, i % self.ctx.n + 1, e))
        })
    }

    /// Filled cells of one row as `(col, entry)`, left to right.
    pub fn row_cells(&self, row: usize) -> impl Iterator<Item = (usize, SignedEntry)> + '_ {
        (1..=self.ctx.n).filter_map(move |c| self.get(row, c).map(|e| (c, e)))
    }

    /// Filled cells of one column as `(row, entry)`, top to bottom.
    pub fn col_cells(&self, col: usize) -> impl Iterator<Item = (usize, SignedEntry)> + '_ {
        (1..=self.ctx.m).filter_map(move |r| self.get(r, col).map(|e| (r, e)))
    }

    /// The skeleton: positions of the filled cells in row-major order.
    pub fn skeleton(&self) -> Vec<(usize, usize)> {
        self.filled().map(|(r, c, _)| (r, c)).collect()
    }

    /// The plain part and the split part of the skeleton, each row-major:
    /// `(theta, omega)` with `theta` the plain cells and `omega` the split
    /// cells.
    pub fn theta_omega(&self) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
        let mut plain = Vec::new();
        let mut split = Vec::new();
        for (r, c, e) in self.filled() {
            if e.split {
                split.push((r, c));
            } else {
                plain.push((r, c));
            }
        }
        (plain, split)
    }

    /// The sign `λ(a)`: `+1` when the pair class of `a` sits in a plain cell,
    /// `-1` when it sits in a split cell.  Defined on classes, so
    /// `λ(a) = λ(-a)`; fails when no cell carries the class.
    pub fn lambda(&self, a: u32) -> Result<i8, ModelError> {
        let class = self.ctx.class_rep(a);
        for (_, _, e) in self.filled() {
            if e.class(&self.ctx) == class {
                return Ok(if e.split { -1 } else { 1 });
            }
        }
        Err(ModelError::ClassNotPresent { class })
    }

    /// `λ` for every residue at once: index `a` holds `±1`, or `0` when the
    /// class of `a` is absent.
    pub fn lambda_table(&self) -> Vec<i8> {
        let v = self.ctx.v as usize;
        let mut table = vec![0i8; v];
        for (_, _, e) in self.filled() {
            let sign = if e.split { -1 } else { 1 };
            let a = e.a as usize;
            table[a] = sign;
            table[self.ctx.neg(e.a) as usize] = sign;
        }
        table
    }

    /// Checks the Heffter conditions and reports every violation.
    pub fn verify(&self, mode: VerifyMode) -> VerifyReport {
        self.verify_inner(mode, false)
    }

    /// Like [`WeakArray::verify`], with row and column sums additionally
    /// required to vanish over the integers (symmetric representatives).
    pub fn verify_integer(&self, mode: VerifyMode) -> VerifyReport {
        self.verify_inner(mode, true)
    }

    fn verify_inner(&self, mode: VerifyMode, integer: bool) -> VerifyReport {
        let ctx = &self.ctx;
        let mut violations = Vec::new();

        if !mode.relative() && ctx.t != 1 {
            violations.push(Violation::RelativeContext { t: ctx.t });
        }
        if !mode.weak() {
            for (r, c, e) in self.filled() {
                if e.split {
                    violations.push(Violation::SplitEntry { row: r, col: c });
                }
            }
        }

        for row in 1..=ctx.m {
            let filled = self.row_cells(row).count();
            if filled != ctx.h {
                violations.push(Violation::RowFill { row, filled, expected: ctx.h });
            }
        }
        for col in 1..=ctx.n {
            let filled = self.col_cells(col).count();
            if filled != ctx.k {
                violations.push(Violation::ColFill { col, filled, expected: ctx.k });
            }
        }

        let mut seen: HashMap<u32, (usize, usize)> = HashMap::new();
        for (r, c, e) in self.filled() {
            if ctx.in_subgroup(e.a) {
                violations.push(Violation::SubgroupValue { row: r, col: c, value: ctx.sym_rep(e.a) });
                continue;
            }
            let class = e.class(ctx);
            if let Some(&(r0, c0)) = seen.get(&class) {
                violations.push(Violation::RepeatedClass { class, first: (r0, c0), second: (r, c) });
            } else {
                seen.insert(class, (r, c));
            }
        }
        for class in ctx.classes() {
            if !seen.contains_key(&class) {
                violations.push(Violation::MissingClass { class });
            }
        }

        for row in 1..=ctx.m {
            let sum = self.row_cells(row).fold(0u32, |s, (_, e)| ctx.add(s, e.a));
            if sum != 0 {
                violations.push(Violation::RowSum { row, sum: ctx.sym_rep(sum) });
            }
        }
        for col in 1..=ctx.n {
            let sum = self.col_cells(col).fold(0u32, |s, (_, e)| ctx.add(s, e.col_value(ctx)));
            if sum != 0 {
                violations.push(Violation::ColSum { col, sum: ctx.sym_rep(sum) });
            }
        }

        if integer {
            for row in 1..=ctx.m {
                let sum: i64 = self.row_cells(row).map(|(_, e)| e.row_sym(ctx) as i64).sum();
                if sum != 0 {
                    violations.push(Violation::RowSumInt { row, sum });
                }
            }
            for col in 1..=ctx.n {
                let sum: i64 = self.col_cells(col).map(|(_, e)| e.col_sym(ctx) as i64).sum();
                if sum != 0 {
                    violations.push(Violation::ColSumInt { col, sum });
                }
            }
        }

        VerifyReport { mode, integer, ok: violations.is_empty(), violations }
    }
}

/// Which flavour of Heffter array to verify against.
///
/// The classical modes reject split cells; the non-relative modes insist on
/// `t = 1`.  `RelativeWeak` accepts everything the data model can express.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyMode {
    Classical,
    Weak,
    RelativeClassical,
    RelativeWeak,
}

impl VerifyMode {
    /// Split cells allowed?
    pub fn weak(self) -> bool {
        matches!(self, VerifyMode::Weak | VerifyMode::RelativeWeak)
    }

    /// `t > 1` allowed?
    pub fn relative(self) -> bool {
        matches!(self, VerifyMode::RelativeClassical | VerifyMode::RelativeWeak)
    }

    /// The weak mode appropriate for subgroup order `t`.
    pub fn weak_for(t: u32) -> Self {
        if t == 1 {
            VerifyMode::Weak
        } else {
            VerifyMode::RelativeWeak
        }
    }

    /// The classical mode appropriate for subgroup order `t`.
    pub fn classical_for(t: u32) -> Self {
        if t == 1 {
            VerifyMode::Classical
        } else {
            VerifyMode::RelativeClassical
        }
    }
}

impl fmt::Display for VerifyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            VerifyMode::Classical => "classical",
            VerifyMode::Weak => "weak",
            VerifyMode::RelativeClassical => "relative-classical",
            VerifyMode::RelativeWeak => "relative-weak",
        };
        f.write_str(name)
    }
}

/// One broken condition, with enough detail to locate the offending cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// `t > 1` in a mode that demands a non-relative array.
    RelativeContext { t: u32 },
    /// A split cell in a classical mode.
    SplitEntry { row: usize, col: usize },
    RowFill { row: usize, filled: usize, expected: usize },
    ColFill { col: usize, filled: usize, expected: usize },
    /// An entry inside the forbidden subgroup `J`.
    SubgroupValue { row: usize, col: usize, value: i32 },
    RepeatedClass { class: u32, first: (usize, usize), second: (usize, usize) },
    MissingClass { class: u32 },
    /// Row sum nonzero in `Z_v` (symmetric representative shown).
    RowSum { row: usize, sum: i32 },
    ColSum { col: usize, sum: i32 },
    /// Row sum nonzero over the integers.
    RowSumInt { row: usize, sum: i64 },
    ColSumInt { col: usize, sum: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::RelativeContext { t } => {
                write!(f, "subgroup order t={t} in a non-relative mode")
            }
            Violation::SplitEntry { row, col } => {
                write!(f, "split entry at ({row},{col}) in a classical mode")
            }
            Violation::RowFill { row, filled, expected } => {
                write!(f, "row {row} has {filled} filled cells, expected {expected}")
            }
            Violation::ColFill { col, filled, expected } => {
                write!(f, "column {col} has {filled} filled cells, expected {expected}")
            }
            Violation::SubgroupValue { row, col, value } => {
                write!(f, "entry {value} at ({row},{col}) lies in the forbidden subgroup")
            }
            Violation::RepeatedClass { class, first, second } => write!(
                f,
                "class {{±{class}}} appears at ({},{}) and ({},{})",
                first.0, first.1, second.0, second.1
            ),
            Violation::MissingClass { class } => write!(f, "class {{±{class}}} never appears"),
            Violation::RowSum { row, sum } => write!(f, "row {row} sums to {sum} (mod v)"),
            Violation::ColSum { col, sum } => write!(f, "column {col} sums to {sum} (mod v)"),
            Violation::RowSumInt { row, sum } => write!(f, "row {row} sums to {sum} over Z"),
            Violation::ColSumInt { col, sum } => write!(f, "column {col} sums to {sum} over Z"),
        }
    }
}

/// Outcome of a verification run; `ok` is true exactly when no condition is
/// violated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub mode: VerifyMode,
    /// Whether integer (sum over `Z`) conditions were included.
    pub integer: bool,
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let suffix = if self.integer { " integer" } else { "" };
        if self.ok {
            write!(f, "{}{suffix}: ok", self.mode)
        } else {
            writeln!(f, "{}{suffix}: {} violation(s)", self.mode, self.violations.len())?;
            for violation in &self.violations {
                writeln!(f, "  {violation}")?;
            }
            Ok(())
        }
    }
}
