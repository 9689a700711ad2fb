//! Weak Heffter arrays: verification, transformation, search, construction,
//! and the analysis of the surface embeddings they induce.
//!
//! A *relative Heffter array* `H_t(m, n; h, k)` is an `m x n` partially filled
//! array with entries in `Z_v`, `v = 2nk + t`, such that
//!
//! * every row has exactly `h` filled cells and every column exactly `k`;
//! * the entries avoid the order-`t` subgroup `J` of `Z_v` and pick exactly one
//!   value out of each pair `{x, -x}` of `(Z_v \ J) / ±`;
//! * every row and every column sums to `0` in `Z_v`.
//!
//! In a *weak* Heffter array `WH_t(m, n; h, k)` a cell may carry two values at
//! once, one seen by its row and one by its column: each cell is `x`, `-x`,
//! `±x` (row `x`, column `-x`) or `∓x` (row `-x`, column `x`), rows sum to zero
//! over the row values and columns over the column values.  Classical arrays
//! are the special case with no two-valued cells, and `t = 1` recovers the
//! non-relative objects `H(m, n; h, k)` and `WH(m, n; h, k)`.
//!
//! The crate models these arrays exactly ([`model`]), reads and writes them in
//! a stable text and JSON format ([`format`]), applies the sign-flip
//! transformations that turn classical arrays into weak ones and decides
//! strict weakness ([`transforms`]), enumerates Heffter systems and searches
//! for arrays by backtracking ([`systems`], [`search`]), builds the
//! `WH_5(n; 5)` family for `n ≡ 0 (mod 4)` ([`construct`]), and analyses the
//! cellular embeddings of `K_v` that a weak array with compatible orderings
//! induces on a (usually non-orientable) surface ([`embed`], [`tour`]).

pub mod construct;
pub mod corpus;
pub mod embed;
pub mod format;
pub mod model;
pub mod search;
pub mod systems;
pub mod tour;
pub mod transforms;

pub use model::{ArrayContext, SignedEntry, VerifyMode, VerifyReport, WeakArray};
