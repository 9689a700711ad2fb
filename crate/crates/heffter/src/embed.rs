//! Combinatorial embeddings of complete graphs built from weak Heffter
//! arrays.
//!
//! A weak Heffter array whose rows and columns are given cyclic orderings
//! induces a trace sequence `(a_i, mu_i)`: `a_i` walks through row- and
//! column-signed values alternately while `mu_i` tracks the local sense of
//! orientation, flipping whenever the walk passes through a split class.
//! When the trace has full period `2nk` the orderings are *compatible* and
//! define an embedding of `K_{2nk+1}` given by a rotation `rho_0` (one
//! cycle through `Z_v \ {0}`) and an edge signature `epsilon`.  Faces are
//! recovered by orbit tracing over (oriented edge, local side) states, and
//! the surface is classified by Euler characteristic, orientability and
//! regularity under the vertex translation `x -> x + 1`.

use crate::model::{ArrayContext, ModelError, WeakArray};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbedError {
    #[error("embeddings require t = 1 (complete-graph case); the array has t = {t}")]
    RelativeContext { t: u32 },
    #[error("row 1 has no filled cell to seed the trace")]
    EmptyFirstRow,
    #[error("expected {expected} line orientations, got {got}")]
    OrientationCount { expected: usize, got: usize },
    #[error("value {0} occurs in two different lines; the ordering maps are ambiguous")]
    DuplicateValue(i32),
    #[error("value {0} does not occur in any line of the requested kind")]
    ValueNotInLine(i32),
    #[error("the orderings are not compatible: trace period {period} != {target}")]
    NotCompatible { period: usize, target: usize },
    #[error("the four period criteria disagree: {criteria:?}")]
    CriteriaDisagree { criteria: [bool; 4] },
    #[error("face orbits do not pair consistently under the mirror map")]
    UnpairedOrbit,
    #[error("balance test and signature shortcut disagree on orientability")]
    OrientabilityDisagreement,
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Cyclic orderings of the filled cells of every row and column, stored as
/// successor/predecessor maps on row-signed and column-signed residues.
/// Well-defined because a verified array carries each pair class exactly
/// once, making all row values (and all column values) pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineOrdering {
    v: u32,
    row_cycles: Vec<Vec<u32>>,
    col_cycles: Vec<Vec<u32>>,
    row_next: Vec<u32>,
    row_prev: Vec<u32>,
    col_next: Vec<u32>,
    col_prev: Vec<u32>,
}

fn cycle_maps(v: u32, cycles: &[Vec<u32>]) -> Result<(Vec<u32>, Vec<u32>), EmbedError> {
    let mut next = vec![0u32; v as usize];
    let mut prev = vec![0u32; v as usize];
    for cycle in cycles {
        for (i, &x) in cycle.iter().enumerate() {
            let y = cycle[(i + 1) % cycle.len()];
            if next[x as usize] != 0 {
                return Err(EmbedError::DuplicateValue(x as i32));
            }
            next[x as usize] = y;
            prev[y as usize] = x;
        }
    }
    Ok((next, prev))
}

impl LineOrdering {
    /// Natural orderings: rows left to right, columns top to bottom.
    pub fn natural(a: &WeakArray) -> Result<Self, EmbedError> {
        let ctx = a.ctx();
        Self::from_orientations(a, &vec![1; ctx.n], &vec![1; ctx.m])
    }

    /// Orderings from per-line orientations: `+1` keeps the natural order
    /// of a line and `-1` reverses it.  `cols` lists the column
    /// orientations `c_1..c_n`, `rows` the row orientations `r_1..r_m`.
    pub fn from_orientations(a: &WeakArray, cols: &[i8], rows: &[i8]) -> Result<Self, EmbedError> {
        let ctx = *a.ctx();
        if rows.len() != ctx.m {
            return Err(EmbedError::OrientationCount { expected: ctx.m, got: rows.len() });
        }
        if cols.len() != ctx.n {
            return Err(EmbedError::OrientationCount { expected: ctx.n, got: cols.len() });
        }
        let mut row_cycles = Vec::with_capacity(ctx.m);
        for (i, &dir) in rows.iter().enumerate() {
            let mut cycle: Vec<u32> = a.row_cells(i + 1).map(|(_, e)| e.a).collect();
            if dir < 0 {
                cycle.reverse();
            }
            row_cycles.push(cycle);
        }
        let mut col_cycles = Vec::with_capacity(ctx.n);
        for (j, &dir) in cols.iter().enumerate() {
            let mut cycle: Vec<u32> = a.col_cells(j + 1).map(|(_, e)| e.col_value(&ctx)).collect();
            if dir < 0 {
                cycle.reverse();
            }
            col_cycles.push(cycle);
        }
        let (row_next, row_prev) = cycle_maps(ctx.v, &row_cycles)?;
        let (col_next, col_prev) = cycle_maps(ctx.v, &col_cycles)?;
        Ok(LineOrdering { v: ctx.v, row_cycles, col_cycles, row_next, row_prev, col_next, col_prev })
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn row_cycle(&self, i: usize) -> &[u32] {
        &self.row_cycles[i - 1]
    }

    pub fn col_cycle(&self, j: usize) -> &[u32] {
        &self.col_cycles[j - 1]
    }

    /// `omega_r^power(x)` for a row-signed residue `x` (power `+1`/`-1`).
    pub fn omega_r(&self, x: u32, power: i8) -> Result<u32, EmbedError> {
        let table = if power >= 0 { &self.row_next } else { &self.row_prev };
        match table[x as usize] {
            0 => Err(EmbedError::ValueNotInLine(x as i32)),
            y => Ok(y),
        }
    }

    /// `omega_c^power(x)` for a column-signed residue `x`.
    pub fn omega_c(&self, x: u32, power: i8) -> Result<u32, EmbedError> {
        let table = if power >= 0 { &self.col_next } else { &self.col_prev };
        match table[x as usize] {
            0 => Err(EmbedError::ValueNotInLine(x as i32)),
            y => Ok(y),
        }
    }
}

/// The first terms of the alternating trace: `a_seq[i]` and `mu_seq[i]`
/// hold `a_{i+1}` and `mu_{i+1}` as symmetric representatives and signs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceSequence {
    pub a_seq: Vec<i32>,
    pub mu_seq: Vec<i8>,
}

struct Tracer<'a> {
    ctx: ArrayContext,
    ord: &'a LineOrdering,
    lambda: Vec<i8>,
    a: u32,
    mu: i8,
    /// 1-based index of the current term; its parity drives the recursion.
    i: usize,
}

impl<'a> Tracer<'a> {
    fn start(array: &WeakArray, ord: &'a LineOrdering) -> Result<Self, EmbedError> {
        let ctx = *array.ctx();
        let (_, first) = array.row_cells(1).next().ok_or(EmbedError::EmptyFirstRow)?;
        let lambda = array.lambda_table();
        let a = first.a;
        let mu = lambda[a as usize];
        debug_assert!(mu != 0);
        Ok(Tracer { ctx, ord, lambda, a, mu, i: 1 })
    }

    fn state(&self) -> (u32, i8, bool) {
        (self.a, self.mu, self.i % 2 == 1)
    }

    fn lambda_of(&self, x: u32) -> i8 {
        let sign = self.lambda[x as usize];
        debug_assert!(sign != 0, "trace left the array's support");
        sign
    }

    /// One step of the recursion: odd index moves through a column, even
    /// index through a row, and the orientation memory flips on split
    /// classes.
    fn step(&mut self) -> Result<(), EmbedError> {
        let signed = if self.lambda_of(self.a) >= 0 { self.a } else { self.ctx.neg(self.a) };
        let next = if self.i % 2 == 1 {
            self.ctx.neg(self.ord.omega_c(signed, self.mu)?)
        } else {
            self.ord.omega_r(self.ctx.neg(signed), self.mu)?
        };
        self.mu *= self.lambda_of(next);
        self.a = next;
        self.i += 1;
        Ok(())
    }
}

/// The first `length` terms of the trace under the given orderings.  The
/// seed `a_1` is the row-signed entry of the first filled cell of row 1
/// and `mu_1 = lambda(a_1)`.
pub fn trace_sequence(
    array: &WeakArray,
    ord: &LineOrdering,
    length: usize,
) -> Result<TraceSequence, EmbedError> {
    let mut tracer = Tracer::start(array, ord)?;
    let mut a_seq = Vec::with_capacity(length);
    let mut mu_seq = Vec::with_capacity(length);
    for _ in 0..length {
        a_seq.push(tracer.ctx.sym_rep(tracer.a));
        mu_seq.push(tracer.mu);
        tracer.step()?;
    }
    Ok(TraceSequence { a_seq, mu_seq })
}

/// Verdicts of the four equivalent full-period criteria, evaluated
/// independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityReport {
    pub compatible: bool,
    pub criteria: [bool; 4],
    /// Minimal period of the pair sequence `((a_i, mu_i))`.
    pub pair_period: usize,
    /// Minimal period of the product sequence `(a_i mu_i)`.
    pub product_period: usize,
    /// Minimal period of the odd-index pair subsequence.
    pub odd_period: usize,
    /// The full period `2nk` that compatibility demands.
    pub target: usize,
}

fn minimal_period<T: PartialEq>(window: &[T]) -> usize {
    let n = window.len();
    (1..=n)
        .find(|&d| n % d == 0 && (0..n).all(|i| window[i] == window[(i + d) % n]))
        .expect("every window has itself as a period")
}

/// Evaluates all four period criteria and checks that they agree, as the
/// theory demands; disagreement is reported as an internal error rather
/// than a verdict.
pub fn compatibility_report(
    array: &WeakArray,
    ord: &LineOrdering,
) -> Result<CompatibilityReport, EmbedError> {
    let ctx = *array.ctx();
    let target = 2 * ctx.n * ctx.k;
    let mut tracer = Tracer::start(array, ord)?;
    let initial = tracer.state();
    // The step map is invertible, so the orbit of the full state
    // (value, memory, index parity) is purely periodic; one lap of it is a
    // window containing a whole number of periods of every derived
    // sequence.
    let mut pairs: Vec<(u32, i8)> = Vec::new();
    loop {
        pairs.push((tracer.a, tracer.mu));
        tracer.step()?;
        if tracer.state() == initial {
            break;
        }
    }
    let lap = pairs.len();
    debug_assert!(lap % 2 == 0, "index parity must match on return");
    let products: Vec<u32> = pairs
        .iter()
        .map(|&(a, mu)| if mu >= 0 { a } else { ctx.neg(a) })
        .collect();
    let odd_pairs: Vec<(u32, i8)> = pairs.iter().copied().step_by(2).collect();

    let pair_period = minimal_period(&pairs);
    let product_period = minimal_period(&products);
    let odd_period = minimal_period(&odd_pairs);
    let distinct = {
        let mut seen = vec![false; ctx.v as usize];
        let mut ok = true;
        for i in 0..target {
            let p = products[i % lap] as usize;
            if seen[p] {
                ok = false;
                break;
            }
            seen[p] = true;
        }
        ok
    };
    let criteria = [
        pair_period == target,
        distinct,
        product_period == target,
        2 * odd_period == target,
    ];
    if criteria.iter().any(|&c| c != criteria[0]) {
        return Err(EmbedError::CriteriaDisagree { criteria });
    }
    Ok(CompatibilityReport {
        compatible: criteria[0],
        criteria,
        pair_period,
        product_period,
        odd_period,
        target,
    })
}

/// The rotation `rho_0` and edge signature `epsilon` of the embedding of
/// `K_v` induced by compatible orderings, together with the orderings
/// themselves, which drive the face walks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    pub v: u32,
    /// The cycle `(mu_1 a_1, ..., mu_{2nk} a_{2nk})` as symmetric
    /// representatives.
    pub rho_cycle: Vec<i32>,
    rho_next: Vec<u32>,
    rho_prev: Vec<u32>,
    epsilon: Vec<i8>,
    ord: LineOrdering,
}

impl RotationSystem {
    /// `rho_0^power(x)` on residues.
    pub fn rho(&self, x: u32, power: i8) -> u32 {
        let table = if power >= 0 { &self.rho_next } else { &self.rho_prev };
        let y = table[x as usize];
        debug_assert!(y != 0);
        y
    }

    /// `epsilon` of an edge with difference `d` (a nonzero residue).
    pub fn epsilon(&self, d: u32) -> i8 {
        let e = self.epsilon[d as usize];
        debug_assert!(e != 0);
        e
    }
}

/// Builds the rotation system from compatible orderings; orderings that
/// fail the period criteria are rejected.
pub fn rotation_and_signature(
    array: &WeakArray,
    ord: &LineOrdering,
) -> Result<RotationSystem, EmbedError> {
    let ctx = *array.ctx();
    if ctx.t != 1 {
        return Err(EmbedError::RelativeContext { t: ctx.t });
    }
    let report = compatibility_report(array, ord)?;
    if !report.compatible {
        return Err(EmbedError::NotCompatible {
            period: report.pair_period,
            target: report.target,
        });
    }
    let target = report.target;
    let trace = trace_sequence(array, ord, target)?;
    let v = ctx.v as usize;
    let mut rho_cycle = Vec::with_capacity(target);
    let mut rho_vals = Vec::with_capacity(target);
    let mut counts = vec![0u32; v];
    for i in 0..target {
        let a = ctx.reduce(i64::from(trace.a_seq[i]));
        counts[a as usize] += 1;
        let r = if trace.mu_seq[i] >= 0 { a } else { ctx.neg(a) };
        rho_cycle.push(ctx.sym_rep(r));
        rho_vals.push(r);
    }
    let mut rho_next = vec![0u32; v];
    let mut rho_prev = vec![0u32; v];
    for i in 0..target {
        let x = rho_vals[i];
        let y = rho_vals[(i + 1) % target];
        debug_assert_eq!(rho_next[x as usize], 0, "rho must be a single cycle");
        rho_next[x as usize] = y;
        rho_prev[y as usize] = x;
    }
    let mut epsilon = vec![0i8; v];
    for d in 1..v {
        epsilon[d] = if counts[d] == 1 { 1 } else { -1 };
    }
    for d in 1..v {
        assert_eq!(
            epsilon[d],
            epsilon[ctx.neg(d as u32) as usize],
            "signature must not depend on the edge direction"
        );
    }
    Ok(RotationSystem { v: ctx.v, rho_cycle, rho_next, rho_prev, epsilon, ord: ord.clone() })
}

/// The explicit boundary of the face through the oriented edge
/// `(x, x + a)` on the row side: starting at `x`, each step adds the
/// current row element and advances it by `omega_r`.  Its length is the
/// cardinality of the row containing `a`.
pub fn row_face(
    ord: &LineOrdering,
    ctx: &ArrayContext,
    a: i32,
    x: i32,
) -> Result<Vec<u32>, EmbedError> {
    let a0 = ctx.reduce(i64::from(a));
    if a0 == 0 || ord.row_next[a0 as usize] == 0 {
        return Err(EmbedError::ValueNotInLine(a));
    }
    let mut vertices = vec![ctx.reduce(i64::from(x))];
    let mut value = a0;
    loop {
        let last = *vertices.last().unwrap();
        let next_vertex = ctx.add(last, value);
        value = ord.omega_r(value, 1)?;
        if value == a0 {
            debug_assert_eq!(next_vertex, vertices[0], "row sums vanish, so the walk closes");
            break;
        }
        vertices.push(next_vertex);
    }
    Ok(vertices)
}

/// The face through `(x, x + a)` on the column side, where `-a` is a
/// column element: the boundary `(x, x + S_{q-1}, ..., x + S_1)` with
/// `S_j` the sum of the first `j` backward `omega_c`-iterates of `-a`,
/// `q` the cardinality of the column containing `-a`.
pub fn column_face(
    ord: &LineOrdering,
    ctx: &ArrayContext,
    a: i32,
    x: i32,
) -> Result<Vec<u32>, EmbedError> {
    let a0 = ctx.reduce(i64::from(a));
    let neg_a = ctx.neg(a0);
    if a0 == 0 || ord.col_next[neg_a as usize] == 0 {
        return Err(EmbedError::ValueNotInLine(a));
    }
    let x0 = ctx.reduce(i64::from(x));
    let mut partial_sums = Vec::new();
    let mut value = neg_a;
    let mut sum = 0u32;
    loop {
        value = ord.omega_c(value, -1)?;
        if value == neg_a {
            break;
        }
        sum = ctx.add(sum, value);
        partial_sums.push(sum);
    }
    let mut vertices = vec![x0];
    for &s in partial_sums.iter().rev() {
        vertices.push(ctx.add(x0, s));
    }
    Ok(vertices)
}

/// One face boundary, stored in canonical rotation (lexicographically
/// least among all rotations of the walk and of its reversal).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub vertices: Vec<u32>,
}

/// Canonical form of a closed walk up to rotation and reversal.
fn canonical_cycle(walk: &[u32]) -> Vec<u32> {
    let n = walk.len();
    let mut best: Option<Vec<u32>> = None;
    let mut reversed: Vec<u32> = walk.to_vec();
    reversed.reverse();
    for candidate in [walk, reversed.as_slice()] {
        for start in 0..n {
            let rotated: Vec<u32> = (0..n).map(|i| candidate[(start + i) % n]).collect();
            if best.as_ref().is_none_or(|b| rotated < *b) {
                best = Some(rotated);
            }
        }
    }
    best.unwrap_or_default()
}

/// The complete combinatorial description of the embedded surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub vertices: u32,
    pub edges: u64,
    pub faces: Vec<Face>,
    /// Face count per boundary length.
    pub lengths: BTreeMap<usize, usize>,
    pub chi: i64,
    pub orientable: bool,
    /// Genus of the orientable surface, when orientable.
    pub genus: Option<i64>,
    /// Crosscap number of the non-orientable surface, otherwise.
    pub crosscap: Option<i64>,
    pub regular: bool,
}

/// Union-find with parity: tracks whether each vertex sits on the same or
/// the opposite side of its representative.
struct ParityForest {
    parent: Vec<usize>,
    parity: Vec<u8>,
}

impl ParityForest {
    fn new(n: usize) -> Self {
        ParityForest { parent: (0..n).collect(), parity: vec![0; n] }
    }

    fn find(&mut self, x: usize) -> (usize, u8) {
        if self.parent[x] == x {
            return (x, 0);
        }
        let (root, p) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.parity[x] ^= p;
        (root, self.parity[x])
    }

    /// Joins `x` and `y` with the given relative parity; false on conflict.
    fn union(&mut self, x: usize, y: usize, rel: u8) -> bool {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            return px ^ py == rel;
        }
        self.parent[rx] = ry;
        self.parity[rx] = px ^ py ^ rel;
        true
    }
}

/// Whether the signed complete graph on `Z_v` with the rotation's
/// signature is balanced: negative edges must form a bipartition cut, or
/// equivalently every cycle must carry an even number of them.
fn balance_orientable(rot: &RotationSystem) -> bool {
    let v = rot.v as usize;
    let mut forest = ParityForest::new(v);
    for x in 0..v {
        for d in 1..rot.v {
            let y = (x + d as usize) % v;
            let rel = u8::from(rot.epsilon(d) < 0);
            if !forest.union(x, y, rel) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, PartialEq, Eq)]
struct FaceState {
    x: u32,
    y: u32,
    /// `+1`: the row-side face through this oriented edge; `-1`: the
    /// column-side face.
    side: i8,
}

/// Traces every face of the embedding.  Each oriented edge lies on one
/// row-side face and one column-side face; the walk advances by the row
/// (resp. column) ordering, following it forward when the edge difference
/// is a row (resp. negated column) element and backward when its negation
/// is.  Orbits come in mirror pairs — the two traversal directions of one
/// face.  The rotation and signature then classify the surface.
pub fn trace_all_faces(rot: &RotationSystem) -> Result<EmbeddingReport, EmbedError> {
    let v = rot.v;
    let vu = v as usize;
    let add = |a: u32, b: u32| {
        let s = a + b;
        if s >= v { s - v } else { s }
    };
    let neg = |a: u32| if a == 0 { 0 } else { v - a };
    let sub = move |a: u32, b: u32| add(a, neg(b));
    let ord = &rot.ord;
    let index = |s: &FaceState| {
        ((s.x as usize * vu + s.y as usize) << 1) | usize::from(s.side < 0)
    };
    let succ = |s: &FaceState| {
        let d = sub(s.y, s.x);
        let step = if s.side > 0 {
            if ord.row_next[d as usize] != 0 {
                ord.row_next[d as usize]
            } else {
                neg(ord.row_prev[neg(d) as usize])
            }
        } else if ord.col_next[neg(d) as usize] != 0 {
            neg(ord.col_next[neg(d) as usize])
        } else {
            ord.col_prev[d as usize]
        };
        if step == 0 {
            return None;
        }
        Some(FaceState { x: s.y, y: add(s.y, step), side: s.side })
    };
    let mirror = |s: &FaceState| FaceState { x: s.y, y: s.x, side: s.side };

    let state_count = vu * vu * 2;
    let mut orbit_of = vec![usize::MAX; state_count];
    let mut orbits: Vec<Vec<FaceState>> = Vec::new();
    for x in 0..v {
        for y in 0..v {
            if x == y {
                continue;
            }
            for side in [1i8, -1] {
                let start = FaceState { x, y, side };
                if orbit_of[index(&start)] != usize::MAX {
                    continue;
                }
                let id = orbits.len();
                let mut orbit = Vec::new();
                let mut state = start;
                loop {
                    orbit_of[index(&state)] = id;
                    orbit.push(state);
                    state = succ(&state).ok_or(EmbedError::UnpairedOrbit)?;
                    if state == start {
                        break;
                    }
                }
                orbits.push(orbit);
            }
        }
    }

    let mut faces = Vec::new();
    let mut seen = vec![false; orbits.len()];
    for (id, orbit) in orbits.iter().enumerate() {
        if seen[id] {
            continue;
        }
        let partner = orbit_of[index(&mirror(&orbit[0]))];
        // The two traversal directions of a face are always distinct
        // orbits: a difference and its negation can't both be elements of
        // the same kind, so a walk never reverses into itself.
        if partner == id || partner >= orbits.len() || orbits[partner].len() != orbit.len() {
            return Err(EmbedError::UnpairedOrbit);
        }
        if orbit.iter().any(|s| orbit_of[index(&mirror(s))] != partner) {
            return Err(EmbedError::UnpairedOrbit);
        }
        seen[id] = true;
        seen[partner] = true;
        let walk: Vec<u32> = orbit.iter().map(|s| s.x).collect();
        faces.push(Face { vertices: canonical_cycle(&walk) });
    }
    faces.sort();

    let mut lengths: BTreeMap<usize, usize> = BTreeMap::new();
    let mut boundary_total = 0u64;
    for face in &faces {
        *lengths.entry(face.vertices.len()).or_insert(0) += 1;
        boundary_total += face.vertices.len() as u64;
    }
    let edges = u64::from(v) * u64::from(v - 1) / 2;
    if boundary_total != 2 * edges {
        return Err(EmbedError::UnpairedOrbit);
    }

    let eps_trivial = (1..v).all(|d| rot.epsilon(d) > 0);
    let balanced = balance_orientable(rot);
    if eps_trivial != balanced {
        return Err(EmbedError::OrientabilityDisagreement);
    }
    let chi = i64::from(v) - edges as i64 + faces.len() as i64;
    let (genus, crosscap) = if balanced {
        debug_assert_eq!((2 - chi) % 2, 0);
        (Some((2 - chi) / 2), None)
    } else {
        (None, Some(2 - chi))
    };

    let mut report = EmbeddingReport {
        vertices: v,
        edges,
        faces,
        lengths,
        chi,
        orientable: balanced,
        genus,
        crosscap,
        regular: false,
    };
    report.regular = regularity_check(&report);
    Ok(report)
}

/// Whether the face set is invariant under the vertex translation
/// `x -> x + 1` over `Z_v`.
pub fn regularity_check(report: &EmbeddingReport) -> bool {
    let v = report.vertices;
    let mut translated: Vec<Vec<u32>> = report
        .faces
        .iter()
        .map(|f| {
            let walk: Vec<u32> = f.vertices.iter().map(|&x| (x + 1) % v).collect();
            canonical_cycle(&walk)
        })
        .collect();
    translated.sort();
    let original: Vec<Vec<u32>> = report.faces.iter().map(|f| f.vertices.clone()).collect();
    original == translated
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::format::parse_auto;

    fn wh34() -> WeakArray {
        parse_auto(corpus::by_name("wh_3x4").unwrap().text).unwrap()
    }

    fn printed_orderings(a: &WeakArray) -> LineOrdering {
        LineOrdering::from_orientations(a, &[-1, -1, 1, 1], &[1, 1, 1]).unwrap()
    }

    #[test]
    fn orientations_orient_the_cycles() {
        let a = wh34();
        let ord = printed_orderings(&a);
        let ctx = a.ctx();
        let sym = |xs: &[u32]| xs.iter().map(|&x| ctx.sym_rep(x)).collect::<Vec<_>>();
        assert_eq!(sym(ord.row_cycle(1)), [1, -7, -6, 12]);
        assert_eq!(sym(ord.col_cycle(1)), [-3, 2, 1]);
        assert_eq!(sym(ord.col_cycle(2)), [11, -4, -7]);
        assert_eq!(sym(ord.col_cycle(3)), [-6, -10, -9]);
        assert_eq!(sym(ord.col_cycle(4)), [12, 8, 5]);
        let natural = LineOrdering::natural(&a).unwrap();
        assert_eq!(sym(natural.col_cycle(1)), [1, 2, -3]);
    }

    #[test]
    fn trace_matches_the_printed_sequences() {
        let a = wh34();
        let ord = printed_orderings(&a);
        let trace = trace_sequence(&a, &ord, 24).unwrap();
        assert_eq!(
            trace.a_seq,
            [
                1, 3, -11, 7, 1, -2, -8, -5, -3, -2, -4, 7, -6, 10, -4, -11, 9, 10, -8, -12,
                -6, 9, 5, -12
            ]
        );
        assert_eq!(
            trace.mu_seq,
            [1, 1, -1, -1, -1, -1, 1, 1, 1, 1, 1, 1, 1, -1, -1, 1, -1, 1, -1, -1, -1, 1, 1, 1]
        );
    }

    #[test]
    fn printed_orderings_are_compatible() {
        let a = wh34();
        let report = compatibility_report(&a, &printed_orderings(&a)).unwrap();
        assert!(report.compatible);
        assert_eq!(report.criteria, [true; 4]);
        assert_eq!(report.pair_period, 24);
        assert_eq!(report.product_period, 24);
        assert_eq!(report.odd_period, 12);
    }

    #[test]
    fn rotation_matches_the_printed_cycle_and_signature() {
        let a = wh34();
        let rot = rotation_and_signature(&a, &printed_orderings(&a)).unwrap();
        assert_eq!(
            rot.rho_cycle,
            [
                1, 3, 11, -7, -1, 2, -8, -5, -3, -2, -4, 7, -6, -10, 4, -11, -9, 10, 8, 12,
                6, 9, 5, -12
            ]
        );
        let ctx = a.ctx();
        for d in 1..25u32 {
            let expected = if [3, 5].contains(&ctx.class_rep(d)) { 1 } else { -1 };
            assert_eq!(rot.epsilon(d), expected, "epsilon({d})");
        }
    }

    #[test]
    fn classical_arrays_have_trivial_signature() {
        let a = parse_auto(corpus::by_name("h8x6").unwrap().text).unwrap();
        let ord = LineOrdering::natural(&a).unwrap();
        if compatibility_report(&a, &ord).unwrap().compatible {
            let rot = rotation_and_signature(&a, &ord).unwrap();
            assert!((1..a.ctx().v).all(|d| rot.epsilon(d) > 0));
        }
    }

    #[test]
    fn face_census_of_the_twenty_five_vertex_embedding() {
        let a = wh34();
        let rot = rotation_and_signature(&a, &printed_orderings(&a)).unwrap();
        let report = trace_all_faces(&rot).unwrap();
        assert_eq!(report.vertices, 25);
        assert_eq!(report.edges, 300);
        assert_eq!(report.faces.len(), 175);
        assert_eq!(report.lengths.get(&3), Some(&100));
        assert_eq!(report.lengths.get(&4), Some(&75));
        assert_eq!(report.chi, -100);
        assert!(!report.orientable);
        assert_eq!(report.crosscap, Some(102));
        assert_eq!(report.genus, None);
        assert!(report.regular);
    }

    #[test]
    fn explicit_faces_agree_with_the_tracer() {
        let a = wh34();
        let ctx = *a.ctx();
        let ord = printed_orderings(&a);
        let rot = rotation_and_signature(&a, &ord).unwrap();
        let report = trace_all_faces(&rot).unwrap();
        for x in [0i32, 7] {
            for (r, c, e) in a.filled() {
                let _ = (r, c);
                let row_value = ctx.sym_rep(e.a);
                let f1 = Face {
                    vertices: canonical_cycle(&row_face(&ord, &ctx, row_value, x).unwrap()),
                };
                assert!(report.faces.binary_search(&f1).is_ok(), "row face through {row_value}");
                let col_value = ctx.sym_rep(e.col_value(&ctx));
                let f2 = Face {
                    vertices: canonical_cycle(
                        &column_face(&ord, &ctx, -col_value, x).unwrap(),
                    ),
                };
                assert!(report.faces.binary_search(&f2).is_ok(), "col face through {col_value}");
            }
        }
    }

    #[test]
    fn face_lengths_match_the_line_cardinalities() {
        let a = wh34();
        let ctx = *a.ctx();
        let ord = printed_orderings(&a);
        let f1 = row_face(&ord, &ctx, 1, 0).unwrap();
        assert_eq!(f1.len(), 4);
        assert_eq!(f1, [0, 1, 19, 13]);
        let f2 = column_face(&ord, &ctx, ctx.sym_rep(ctx.neg(1)), 0).unwrap();
        assert_eq!(f2.len(), 3);
    }

    #[test]
    fn incompatible_and_invalid_inputs_are_rejected() {
        let a = wh34();
        let ord = printed_orderings(&a);
        assert_eq!(
            LineOrdering::from_orientations(&a, &[1, 1, 1], &[1, 1, 1]).unwrap_err(),
            EmbedError::OrientationCount { expected: 4, got: 3 }
        );
        assert_eq!(
            row_face(&ord, a.ctx(), 3, 0).unwrap_err(),
            EmbedError::ValueNotInLine(3)
        );
        let relative = parse_auto(corpus::by_name("h6_3x3").unwrap().text).unwrap();
        let rel_ord = LineOrdering::natural(&relative).unwrap();
        assert_eq!(
            rotation_and_signature(&relative, &rel_ord).unwrap_err(),
            EmbedError::RelativeContext { t: 6 }
        );
    }
}
