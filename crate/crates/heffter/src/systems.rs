//! Heffter systems: partitions of a half-set of `Z_v \ J` into zero-sum
//! blocks, their canonical form, complete enumeration, and the parity
//! conditions every integer weak array must satisfy.
//!
//! The rows of a weak Heffter array, read with row signs, always form such a
//! system (as do the columns with column signs), so system enumeration gives
//! quick nonexistence certificates: no system, no array.

use crate::model::WeakArray;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SystemsError {
    #[error("inadmissible parameters v={v} t={t} k={k}: {why}")]
    Inadmissible { v: u32, t: u32, k: usize, why: &'static str },
    #[error("element {0} is zero or falls in the order-t subgroup")]
    BadElement(i32),
    #[error("block {index} has {got} elements, expected {expected}")]
    BadBlockLength { index: usize, got: usize, expected: usize },
    #[error("block {index} sums to {sum}, not 0 (mod v)")]
    BlockSum { index: usize, sum: i64 },
    #[error("element classes do not cover each pair class exactly once")]
    ClassCoverage,
    #[error("cannot parse system line: {0}")]
    Parse(String),
}

/// A Heffter system: zero-sum `k`-blocks using exactly one representative of
/// every pair class of `Z_v` outside the order-`t` subgroup.  Elements are
/// stored as symmetric representatives in `[-(v-1)/2 .. v/2]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeffterSystem {
    pub v: u32,
    pub t: u32,
    pub blocks: Vec<Vec<i32>>,
}

fn check_params(v: u32, t: u32, k: usize) -> Result<(), SystemsError> {
    let fail = |why| Err(SystemsError::Inadmissible { v, t, k, why });
    if t == 0 || v == 0 || t >= v {
        return fail("need 0 < t < v");
    }
    if v % t != 0 {
        return fail("t must divide v");
    }
    if (v - t) % 2 != 0 {
        return fail("v - t must be even");
    }
    if k < 2 {
        return fail("blocks need at least 2 elements");
    }
    if ((v - t) / 2) as usize % k != 0 {
        return fail("(v-t)/2 must be divisible by k");
    }
    Ok(())
}

fn class_of(v: u32, x: i32) -> u32 {
    let r = (i64::from(x)).rem_euclid(i64::from(v)) as u32;
    r.min(v - r)
}

fn in_subgroup(v: u32, t: u32, x: i32) -> bool {
    let r = (i64::from(x)).rem_euclid(i64::from(v)) as u32;
    r % (v / t) == 0
}

impl HeffterSystem {
    /// Validates every defining property: admissible parameters, elements
    /// outside the subgroup, zero-sum blocks, one representative per class.
    pub fn new(v: u32, t: u32, blocks: Vec<Vec<i32>>) -> Result<Self, SystemsError> {
        let k = blocks.first().map_or(2, Vec::len);
        check_params(v, t, k)?;
        let expected_blocks = ((v - t) / 2) as usize / k;
        if blocks.len() != expected_blocks {
            return Err(SystemsError::ClassCoverage);
        }
        let mut seen = vec![false; (v / 2 + 1) as usize];
        for (index, block) in blocks.iter().enumerate() {
            if block.len() != k {
                return Err(SystemsError::BadBlockLength {
                    index,
                    got: block.len(),
                    expected: k,
                });
            }
            let sum: i64 = block.iter().map(|&x| i64::from(x)).sum();
            if sum.rem_euclid(i64::from(v)) != 0 {
                return Err(SystemsError::BlockSum { index, sum });
            }
            for &x in block {
                let c = class_of(v, x);
                if c == 0 || in_subgroup(v, t, x) {
                    return Err(SystemsError::BadElement(x));
                }
                if seen[c as usize] {
                    return Err(SystemsError::ClassCoverage);
                }
                seen[c as usize] = true;
            }
        }
        Ok(HeffterSystem { v, t, blocks })
    }

    pub fn k(&self) -> usize {
        self.blocks.first().map_or(0, Vec::len)
    }

    /// Element sort key: by pair class, positive representative first.
    fn element_key(v: u32, x: i32) -> (u32, u8) {
        (class_of(v, x), u8::from(x < 0))
    }

    /// Rewrites the system into canonical form: elements of each block sorted
    /// by class, each block negated if needed so its first element is
    /// positive, blocks sorted, all in place.
    pub fn canonicalize(&mut self) {
        let v = self.v;
        for block in &mut self.blocks {
            block.sort_by_key(|&x| Self::element_key(v, x));
            if block.first().is_some_and(|&x| x < 0) {
                for x in block.iter_mut() {
                    *x = -*x;
                }
                block.sort_by_key(|&x| Self::element_key(v, x));
            }
        }
        self.blocks.sort_by(|a, b| {
            let ka: Vec<_> = a.iter().map(|&x| Self::element_key(v, x)).collect();
            let kb: Vec<_> = b.iter().map(|&x| Self::element_key(v, x)).collect();
            ka.cmp(&kb)
        });
    }

    pub fn is_canonical(&self) -> bool {
        let mut copy = self.clone();
        copy.canonicalize();
        *self == copy
    }
}

impl fmt::Display for HeffterSystem {
    /// One line, blocks like `{1,2,-3}` separated by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{{")?;
            for (j, x) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// Parses one line of the [`fmt::Display`] format back into a validated
/// system.
pub fn parse_system_line(v: u32, t: u32, line: &str) -> Result<HeffterSystem, SystemsError> {
    let mut blocks = Vec::new();
    for token in line.split_whitespace() {
        let inner = token
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| SystemsError::Parse(format!("bad block token {token:?}")))?;
        let block = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i32>()
                    .map_err(|_| SystemsError::Parse(format!("bad element {p:?}")))
            })
            .collect::<Result<Vec<i32>, _>>()?;
        blocks.push(block);
    }
    HeffterSystem::new(v, t, blocks)
}

/// The rows of a verified weak array, with row signs, as a Heffter system.
pub fn system_from_rows(a: &WeakArray) -> Result<HeffterSystem, SystemsError> {
    let ctx = a.ctx();
    let blocks = (1..=ctx.m)
        .map(|r| a.row_cells(r).map(|(_, e)| e.row_sym(ctx)).collect())
        .collect();
    HeffterSystem::new(ctx.v, ctx.t, blocks)
}

/// The columns of a verified weak array, with column signs, as a system.
pub fn system_from_cols(a: &WeakArray) -> Result<HeffterSystem, SystemsError> {
    let ctx = a.ctx();
    let blocks = (1..=ctx.n)
        .map(|c| a.col_cells(c).map(|(_, e)| e.col_sym(ctx)).collect())
        .collect();
    HeffterSystem::new(ctx.v, ctx.t, blocks)
}

/// Complete enumeration of the Heffter systems with the given parameters, up
/// to independent negation of whole blocks (each block is normalized so its
/// smallest-class element is positive).  Output blocks are in canonical form
/// and the list is sorted.
///
/// The generator walks blocks in ascending order of their smallest class:
/// each new block starts at the globally smallest unused class taken
/// positive, continues with strictly class-ascending elements of free sign,
/// and closes with the element forced by the zero-sum condition, which is
/// accepted only when its class is unused and extends the ascending chain.
/// Every system is therefore produced exactly once.
pub fn enumerate_heffter_systems(
    v: u32,
    t: u32,
    k: usize,
) -> Result<Vec<HeffterSystem>, SystemsError> {
    check_params(v, t, k)?;
    let classes: Vec<u32> = (1..=v / 2).filter(|c| c % (v / t) != 0).collect();
    let mut used = vec![false; (v / 2 + 1) as usize];
    let mut current: Vec<Vec<i32>> = Vec::new();
    let mut block: Vec<i32> = Vec::new();
    let mut out: Vec<HeffterSystem> = Vec::new();

    fn sym(v: u32, r: u32) -> i32 {
        if r <= v / 2 {
            r as i32
        } else {
            r as i32 - v as i32
        }
    }

    struct Gen<'a> {
        v: u32,
        t: u32,
        k: usize,
        classes: &'a [u32],
    }

    impl Gen<'_> {
        fn next_block(
            &self,
            used: &mut Vec<bool>,
            current: &mut Vec<Vec<i32>>,
            block: &mut Vec<i32>,
            out: &mut Vec<HeffterSystem>,
        ) {
            let head = match self.classes.iter().find(|&&c| !used[c as usize]) {
                None => {
                    out.push(HeffterSystem {
                        v: self.v,
                        t: self.t,
                        blocks: current.clone(),
                    });
                    return;
                }
                Some(&c) => c,
            };
            used[head as usize] = true;
            block.push(head as i32);
            self.extend_block(head, head as i64, used, current, block, out);
            block.pop();
            used[head as usize] = false;
        }

        fn extend_block(
            &self,
            last_class: u32,
            sum: i64,
            used: &mut Vec<bool>,
            current: &mut Vec<Vec<i32>>,
            block: &mut Vec<i32>,
            out: &mut Vec<HeffterSystem>,
        ) {
            if block.len() == self.k - 1 {
                // Zero-sum forces the final element.
                let r = (-sum).rem_euclid(i64::from(self.v)) as u32;
                if r == 0 || r % (self.v / self.t) == 0 {
                    return;
                }
                let c = r.min(self.v - r);
                if c <= last_class || used[c as usize] {
                    return;
                }
                used[c as usize] = true;
                block.push(sym(self.v, r));
                current.push(block.clone());
                self.next_block(used, current, &mut Vec::new(), out);
                current.pop();
                block.pop();
                used[c as usize] = false;
                return;
            }
            for &c in self.classes.iter().filter(|&&c| c > last_class) {
                if used[c as usize] {
                    continue;
                }
                used[c as usize] = true;
                for value in [c as i32, -(c as i32)] {
                    block.push(value);
                    self.extend_block(c, sum + i64::from(value), used, current, block, out);
                    block.pop();
                }
                used[c as usize] = false;
            }
        }
    }

    let gen = Gen { v, t, k, classes: &classes };
    gen.next_block(&mut used, &mut current, &mut block, &mut out);

    for system in &mut out {
        debug_assert!(system.is_canonical());
        system.canonicalize();
    }
    let key = |s: &HeffterSystem| -> Vec<Vec<(u32, u8)>> {
        s.blocks
            .iter()
            .map(|b| b.iter().map(|&x| HeffterSystem::element_key(v, x)).collect())
            .collect()
    };
    out.sort_by(|a, b| key(a).cmp(&key(b)));
    out.dedup();
    Ok(out)
}

/// Outcome of the parity conditions.  `clause` names which of the three
/// mutually exclusive cases applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum NecessaryVerdict {
    Pass { clause: u8 },
    Fail { clause: u8 },
}

impl NecessaryVerdict {
    pub fn passed(self) -> bool {
        matches!(self, NecessaryVerdict::Pass { .. })
    }
}

impl fmt::Display for NecessaryVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NecessaryVerdict::Pass { clause } => write!(f, "pass(clause {clause})"),
            NecessaryVerdict::Fail { clause } => write!(f, "fail(clause {clause})"),
        }
    }
}

/// Parity conditions necessary for an integer weak array, or a non-integer
/// one when `t` is even (so that `v` is even).  For odd `t` a failed verdict
/// rules out only the integer variant.
///
/// The three clauses partition the parameter space:
/// 1. `t | nk`: require `nk ≡ 0 (mod 4)` or `nk ≡ -t (mod 4)` with `t` odd;
/// 2. `t = 2nk`: require `k` even;
/// 3. otherwise: require `t + 2nk ≡ 0 (mod 8)`.
pub fn necessary_conditions(n: usize, k: usize, t: u32) -> NecessaryVerdict {
    let nk = (n * k) as u64;
    let t64 = u64::from(t);
    if nk % t64 == 0 {
        let ok = nk % 4 == 0 || (t % 2 == 1 && (nk + t64) % 4 == 0);
        return if ok {
            NecessaryVerdict::Pass { clause: 1 }
        } else {
            NecessaryVerdict::Fail { clause: 1 }
        };
    }
    if t64 == 2 * nk {
        return if k % 2 == 0 {
            NecessaryVerdict::Pass { clause: 2 }
        } else {
            NecessaryVerdict::Fail { clause: 2 }
        };
    }
    if (t64 + 2 * nk) % 8 == 0 {
        NecessaryVerdict::Pass { clause: 3 }
    } else {
        NecessaryVerdict::Fail { clause: 3 }
    }
}
