//! Text and JSON serialization of weak arrays.
//!
//! The text form is line-oriented and round-trips byte-identically:
//!
//! ```text
//! v=25 t=1 m=3 n=4
//! 1|-7|-6|12
//! 2|-4|+-10|-+8
//! -3|-+11|+-9|5
//! ```
//!
//! Cells are separated by `|`; `.` marks an empty cell; a plain cell prints
//! the symmetric representative of its value; a split cell prints `+-x` for
//! `±x` (row `x`, column `-x`) and `-+x` for `∓x` (row `-x`, column `x`),
//! always with `x > 0`.  The Unicode spellings `±x` and `∓x` are accepted on
//! input.  The JSON form stores the row-value residues directly.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{ArrayContext, ModelError, SignedEntry, WeakArray};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("missing header line")]
    MissingHeader,
    #[error("malformed header: expected `v=.. t=.. m=.. n=..`, got `{0}`")]
    BadHeader(String),
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("row {row} has {found} cells, expected {expected}")]
    CellCount { row: usize, found: usize, expected: usize },
    #[error("unreadable cell `{cell}` at ({row},{col})")]
    BadCell { row: usize, col: usize, cell: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("invalid JSON: {0}")]
    Json(String),
}

/// Renders the canonical text form, with a trailing newline.
pub fn emit_text(array: &WeakArray) -> String {
    let ctx = array.ctx();
    let mut out = format!("v={} t={} m={} n={}\n", ctx.v, ctx.t, ctx.m, ctx.n);
    for row in 1..=ctx.m {
        let line: Vec<String> = (1..=ctx.n)
            .map(|col| match array.get(row, col) {
                None => ".".to_owned(),
                Some(e) => {
                    let x = e.row_sym(ctx);
                    if !e.split {
                        x.to_string()
                    } else if x > 0 {
                        format!("+-{x}")
                    } else {
                        format!("-+{}", -x)
                    }
                }
            })
            .collect();
        out.push_str(&line.join("|"));
        out.push('\n');
    }
    out
}

/// Parses the text form.
pub fn parse_text(text: &str) -> Result<WeakArray, FormatError> {
    // Blank lines around the array are tolerated; only blank lines between
    // rows count against the shape.
    let mut lines = text.lines().skip_while(|l| l.trim().is_empty());
    let header = lines.next().ok_or(FormatError::MissingHeader)?;
    let ctx = parse_header(header)?;
    let mut array = WeakArray::empty(ctx);

    let mut body: Vec<&str> = lines.collect();
    while body.last().is_some_and(|l| l.trim().is_empty()) {
        body.pop();
    }
    if body.len() != ctx.m {
        return Err(FormatError::RowCount { expected: ctx.m, found: body.len() });
    }
    for (r, line) in body.iter().enumerate() {
        let row = r + 1;
        let cells: Vec<&str> = line.split('|').collect();
        if cells.len() != ctx.n {
            return Err(FormatError::CellCount { row, found: cells.len(), expected: ctx.n });
        }
        for (c, cell) in cells.iter().enumerate() {
            let col = c + 1;
            if let Some(entry) = parse_cell(&ctx, row, col, cell.trim())? {
                array.place(row, col, entry)?;
            }
        }
    }
    Ok(array)
}

fn parse_header(line: &str) -> Result<ArrayContext, FormatError> {
    let bad = || FormatError::BadHeader(line.to_owned());
    let mut fields = line.split_whitespace();
    let mut take = |key: &str| -> Result<i64, FormatError> {
        let field = fields.next().ok_or_else(bad)?;
        let value = field.strip_prefix(key).ok_or_else(bad)?;
        value.parse().map_err(|_| bad())
    };
    let v = take("v=")?;
    let t = take("t=")?;
    let m = take("m=")?;
    let n = take("n=")?;
    if fields.next().is_some() || v < 1 || t < 1 || m < 1 || n < 1 {
        return Err(bad());
    }
    Ok(ArrayContext::from_header(v as u32, t as u32, m as usize, n as usize)?)
}

fn parse_cell(
    ctx: &ArrayContext,
    row: usize,
    col: usize,
    cell: &str,
) -> Result<Option<SignedEntry>, FormatError> {
    let bad = || FormatError::BadCell { row, col, cell: cell.to_owned() };
    if cell == "." {
        return Ok(None);
    }
    let (body, split, negate) = if let Some(rest) = cell.strip_prefix("+-").or_else(|| cell.strip_prefix("±")) {
        (rest, true, false)
    } else if let Some(rest) = cell.strip_prefix("-+").or_else(|| cell.strip_prefix("∓")) {
        (rest, true, true)
    } else {
        (cell, false, false)
    };
    let x: i64 = body.parse().map_err(|_| bad())?;
    if split && x <= 0 {
        return Err(bad());
    }
    let entry = SignedEntry::from_row_int(ctx, if negate { -x } else { x }, split)?;
    Ok(Some(entry))
}

impl fmt::Display for WeakArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&emit_text(self))
    }
}

#[derive(Serialize, Deserialize)]
struct JsonArray {
    v: u32,
    t: u32,
    m: usize,
    n: usize,
    cells: Vec<JsonCell>,
}

#[derive(Serialize, Deserialize)]
struct JsonCell {
    r: usize,
    c: usize,
    a: u32,
    split: bool,
}

/// Renders the JSON form, cells in row-major order.
pub fn emit_json(array: &WeakArray) -> String {
    let ctx = array.ctx();
    let doc = JsonArray {
        v: ctx.v,
        t: ctx.t,
        m: ctx.m,
        n: ctx.n,
        cells: array
            .filled()
            .map(|(r, c, e)| JsonCell { r, c, a: e.a, split: e.split })
            .collect(),
    };
    serde_json::to_string(&doc).expect("array serialization cannot fail")
}

/// Parses the JSON form.
pub fn parse_json(text: &str) -> Result<WeakArray, FormatError> {
    let doc: JsonArray = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    let ctx = ArrayContext::from_header(doc.v, doc.t, doc.m, doc.n)?;
    let mut array = WeakArray::empty(ctx);
    for cell in doc.cells {
        array.place(cell.r, cell.c, SignedEntry { a: cell.a, split: cell.split })?;
    }
    Ok(array)
}

/// Reads an array from either format, keyed on the leading character.
pub fn parse_auto(text: &str) -> Result<WeakArray, FormatError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const WH34: &str = "v=25 t=1 m=3 n=4\n1|-7|-6|12\n2|-4|+-10|-+8\n-3|-+11|+-9|5\n";

    #[test]
    fn text_round_trip_is_identity() {
        let array = parse_text(WH34).unwrap();
        assert_eq!(emit_text(&array), WH34);
        assert_eq!(array.to_string(), WH34);
    }

    #[test]
    fn unicode_signs_are_accepted() {
        let fancy = WH34.replace("+-", "±").replace("-+", "∓");
        assert_eq!(parse_text(&fancy).unwrap(), parse_text(WH34).unwrap());
    }

    #[test]
    fn empty_cells_round_trip() {
        let text = "v=19 t=1 m=3 n=3\n1|2|-3\n-8|.|8\n7|-2|.\n";
        let array = parse_text(text).unwrap();
        assert_eq!(array.get(2, 2), None);
        assert_eq!(emit_text(&array), text);
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(matches!(parse_text(""), Err(FormatError::MissingHeader)));
        assert!(matches!(parse_text("v=25 t=1 m=3\n"), Err(FormatError::BadHeader(_))));
        assert!(matches!(
            parse_text("v=25 t=1 m=3 n=4\n1|2\n"),
            Err(FormatError::RowCount { expected: 3, found: 1 })
        ));
        assert!(matches!(
            parse_text("v=25 t=1 m=3 n=4\n1|2\n3|4\n5|6\n"),
            Err(FormatError::CellCount { row: 1, found: 2, expected: 4 })
        ));
        // Split notation demands a positive magnitude.
        assert!(matches!(
            parse_text("v=3 t=1 m=1 n=1\n+--3\n"),
            Err(FormatError::BadCell { .. })
        ));
        // 25 ≡ 0 (mod 25) is not a legal entry.
        let bad = "v=25 t=1 m=3 n=4\n25|-7|-6|12\n2|-4|+-10|-+8\n-3|-+11|+-9|5\n";
        assert!(parse_text(bad).is_err());
    }

    #[test]
    fn json_round_trip_preserves_the_array() {
        let array = parse_text(WH34).unwrap();
        let json = emit_json(&array);
        assert_eq!(parse_json(&json).unwrap(), array);
        assert_eq!(parse_auto(&json).unwrap(), array);
        assert_eq!(parse_auto(WH34).unwrap(), array);
    }

    proptest! {
        /// Arbitrary sparse arrays survive text and JSON round trips.
        #[test]
        fn round_trips_hold_for_arbitrary_fillings(seed in any::<u64>()) {
            let ctx = ArrayContext::new(4, 4, 4, 4, 16).unwrap();
            let mut state = seed;
            let mut next = move || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                state >> 33
            };
            let mut array = WeakArray::empty(ctx);
            for r in 1..=4 {
                for c in 1..=4 {
                    match next() % 3 {
                        0 => {}
                        kind => {
                            let a = (next() % (ctx.v as u64 - 1) + 1) as u32;
                            let _ = array.place(r, c, SignedEntry { a, split: kind == 2 });
                        }
                    }
                }
            }
            let text = emit_text(&array);
            prop_assert_eq!(&parse_text(&text).unwrap(), &array);
            prop_assert_eq!(emit_text(&parse_text(&text).unwrap()), text);
            prop_assert_eq!(&parse_json(&emit_json(&array)).unwrap(), &array);
        }
    }
}
