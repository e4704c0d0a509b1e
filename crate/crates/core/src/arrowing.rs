//! Vertex arrowing `G →v (a_1, ..., a_s)`.
//!
//! Two independent deciders live here:
//!
//! * [`ArrowChecker`], the production path. It peels the smallest target
//!   entry `a` by ranging over the maximal `K_a`-free vertex subsets `A`
//!   (maximal independent sets when `a = 2`) and recursing on `G - A` with the
//!   remaining entries; a single remaining entry `a` is a `K_a` test. Only
//!   maximal subsets need to be tried because arrowing is inherited by
//!   induced supergraphs: if `A ⊆ A'` then `G - A'` sits inside `G - A`.
//! * [`arrows_oracle`], a vertex-by-vertex colouring backtrack with its own
//!   naive clique test, capped at 14 vertices and 4 colours.

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;
use std::sync::RwLock;

use crate::canon::{canonical_form, CanonicalForm};
use crate::clique::{for_each_maximal_independent_set, for_each_maximal_kfree_subset, has_clique_in};
use crate::error::ArrowError;
use crate::graph::{bit, Bits, Graph, VertexSet};

pub const ORACLE_MAX_VERTICES: usize = 14;
pub const ORACLE_MAX_COLORS: usize = 4;

/// Sorted arrowing target `(a_1 ≤ ... ≤ a_s)` with every `a_i ≥ 2`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowTarget {
    entries: Vec<usize>,
}

impl ArrowTarget {
    /// Sorts the entries and drops the 1s, which never constrain a colouring.
    pub fn new(entries: &[usize]) -> Result<Self, ArrowError> {
        if entries.contains(&0) {
            return Err(ArrowError::ZeroEntry);
        }
        let mut entries: Vec<usize> = entries.iter().copied().filter(|&a| a > 1).collect();
        if entries.is_empty() {
            return Err(ArrowError::EmptyTarget);
        }
        entries.sort_unstable();
        Ok(ArrowTarget { entries })
    }

    /// `(2_r, last)`.
    pub fn twos_then(r: usize, last: usize) -> Self {
        let mut entries = vec![2; r];
        entries.push(last.max(2));
        entries.sort_unstable();
        ArrowTarget { entries }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Number of colours.
    pub fn s(&self) -> usize {
        self.entries.len()
    }

    /// `m = Σ(a_i - 1) + 1`, the order of the smallest complete graph that arrows.
    pub fn m(&self) -> usize {
        self.entries.iter().map(|a| a - 1).sum::<usize>() + 1
    }

    /// `p = max a_i`.
    pub fn p(&self) -> usize {
        *self.entries.last().expect("target is non-empty")
    }

    /// Number of entries equal to 2.
    pub fn r(&self) -> usize {
        self.entries.iter().take_while(|&&a| a == 2).count()
    }

    /// `Some(r)` when the target is exactly `(2_r, 3)`.
    pub fn as_2r3(&self) -> Option<usize> {
        let r = self.r();
        (self.p() == 3 && r + 1 == self.s()).then_some(r)
    }

    /// `(2_k, a_1, ..., a_s)`, the target arrowed by `K_k + G` when `G` arrows `self`.
    pub fn lift(&self, k: usize) -> Self {
        let mut entries = vec![2; k];
        entries.extend_from_slice(&self.entries);
        entries.sort_unstable();
        ArrowTarget { entries }
    }
}

impl fmt::Debug for ArrowTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ArrowTarget{self}")
    }
}

impl fmt::Display for ArrowTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for ArrowTarget {
    type Err = String;

    /// Accepts `2,2,3`, `(2,2,3)` or `2_2,3` (two 2s then a 3).
    fn from_str(s: &str) -> Result<Self, String> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut entries = Vec::new();
        for part in body.split(',') {
            let part = part.trim();
            if let Some((base, count)) = part.split_once('_') {
                let base: usize = base.parse().map_err(|_| format!("bad target entry {part:?}"))?;
                let count: usize = count.parse().map_err(|_| format!("bad target entry {part:?}"))?;
                entries.extend(std::iter::repeat_n(base, count));
            } else {
                entries.push(part.parse().map_err(|_| format!("bad target entry {part:?}"))?);
            }
        }
        ArrowTarget::new(&entries).map_err(|e| e.to_string())
    }
}

/// Folkman's existence criterion: `F_v(a; q)` exists iff `q > max a_i`.
pub fn target_is_valid(t: &ArrowTarget, q: usize) -> bool {
    q > t.p()
}

/// A vertex colouring; `colors[v]` indexes into the sorted target entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<u8>,
}

impl Coloring {
    /// Vertices of colour `i`.
    pub fn class(&self, i: usize) -> VertexSet {
        self.colors
            .iter()
            .enumerate()
            .filter(|(_, &c)| c as usize == i)
            .map(|(v, _)| v)
            .collect()
    }

    fn from_classes(n: usize, classes: &[u64]) -> Self {
        let mut colors = vec![0u8; n];
        for (i, &c) in classes.iter().enumerate() {
            for v in Bits(c) {
                colors[v] = i as u8;
            }
        }
        Coloring { colors }
    }
}

/// Result of an arrowing decision that carries a certificate when negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArrowOutcome {
    Arrows,
    /// A colouring in which no colour `i` contains a `K_{a_i}`.
    Fails(Coloring),
}

impl ArrowOutcome {
    pub fn arrows(&self) -> bool {
        matches!(self, ArrowOutcome::Arrows)
    }
}

/// The class `H_v(target; q; n)`: `n`-vertex `K_q`-free graphs arrowing `target`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClassSpec {
    pub target: ArrowTarget,
    pub q: usize,
    pub n: usize,
}

impl ClassSpec {
    pub fn new(target: ArrowTarget, q: usize, n: usize) -> Result<Self, ArrowError> {
        if !target_is_valid(&target, q) {
            return Err(ArrowError::InvalidClass {
                target: target.to_string(),
                q,
            });
        }
        Ok(ClassSpec { target, q, n })
    }

    /// The same target and `q` at another order.
    pub fn with_n(&self, n: usize) -> Self {
        ClassSpec { n, ..self.clone() }
    }

    /// Below `m` vertices nothing arrows the target.
    pub fn is_trivially_empty(&self) -> bool {
        self.n < self.target.m()
    }

    pub fn contains(&self, g: &Graph) -> bool {
        self.contains_with(g, &ArrowChecker::default())
    }

    pub fn contains_with(&self, g: &Graph, checker: &ArrowChecker) -> bool {
        g.n() == self.n && !crate::clique::has_kclique(g, self.q) && checker.arrows(g, &self.target)
    }
}

impl fmt::Debug for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.target.to_string();
        write!(f, "H_v({}; {}; {})", &t[1..t.len() - 1], self.q, self.n)
    }
}

impl FromStr for ClassSpec {
    type Err = String;

    /// `2,2,3;4;14`, optionally wrapped as `H_v(2,2,3;4;14)`.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let s = s.strip_prefix("H_v").unwrap_or(s);
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = body.split(';').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!("class must look like a1,...,as;q;n (got {s:?})"));
        }
        let target: ArrowTarget = parts[0].parse()?;
        let q = parts[1].parse().map_err(|_| format!("bad q {:?}", parts[1]))?;
        let n = parts[2].parse().map_err(|_| format!("bad n {:?}", parts[2]))?;
        ClassSpec::new(target, q, n).map_err(|e| e.to_string())
    }
}

type MemoKey = (Vec<usize>, CanonicalForm);

/// Arrowing decider with an optional memo of residual subproblems keyed by
/// canonical form. The memo is shared across threads; concurrent inserts of
/// the same key store the same value.
#[derive(Default)]
pub struct ArrowChecker {
    cache: Option<RwLock<HashMap<MemoKey, bool>>>,
    capacity: usize,
}

impl fmt::Debug for ArrowChecker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ArrowChecker")
            .field("capacity", &self.capacity)
            .field("cached", &self.cached_entries())
            .finish()
    }
}

impl ArrowChecker {
    /// Checker without memoization.
    pub fn new() -> Self {
        ArrowChecker::default()
    }

    /// Checker that memoizes up to `capacity` residual subproblems; 0 disables the memo.
    pub fn with_cache(capacity: usize) -> Self {
        ArrowChecker {
            cache: (capacity > 0).then(|| RwLock::new(HashMap::new())),
            capacity,
        }
    }

    pub fn cached_entries(&self) -> usize {
        self.cache
            .as_ref()
            .map_or(0, |c| c.read().map(|m| m.len()).unwrap_or(0))
    }

    /// `G →v target`.
    pub fn arrows(&self, g: &Graph, target: &ArrowTarget) -> bool {
        self.decide(g, g.vertices().bits(), target.entries(), true)
    }

    /// `G →v (2_r, 3)`.
    pub fn arrows_2r3(&self, g: &Graph, r: usize) -> bool {
        self.arrows(g, &ArrowTarget::twos_then(r, 3))
    }

    fn decide(&self, g: &Graph, mask: u64, entries: &[usize], top: bool) -> bool {
        let rows = g.rows();
        if entries.len() == 1 {
            return has_clique_in(rows, mask, entries[0]);
        }
        // fewer than m vertices cannot arrow
        let m = entries.iter().map(|a| a - 1).sum::<usize>() + 1;
        if (mask.count_ones() as usize) < m {
            return false;
        }
        let key = match &self.cache {
            Some(cache) if !top => {
                let key = (entries.to_vec(), canonical_form(&g.induced_unchecked(mask)));
                if let Some(&hit) = cache.read().expect("memo lock poisoned").get(&key) {
                    return hit;
                }
                Some((cache, key))
            }
            _ => None,
        };
        let (a, rest) = (entries[0], &entries[1..]);
        let mut visit = |part: u64| {
            if self.decide(g, mask & !part, rest, false) {
                ControlFlow::Continue(())
            } else {
                ControlFlow::Break(())
            }
        };
        let flow = if a == 2 {
            for_each_maximal_independent_set(rows, mask, &mut visit)
        } else {
            for_each_maximal_kfree_subset(rows, mask, a, &mut visit)
        };
        let result = flow.is_continue();
        if let Some((cache, key)) = key {
            let mut map = cache.write().expect("memo lock poisoned");
            if map.len() < self.capacity {
                map.insert(key, result);
            }
        }
        result
    }

    /// Like [`ArrowChecker::arrows`] but returns a bad colouring when the answer is negative.
    /// Runs without the memo so that the certificate can be reconstructed.
    pub fn arrows_with_witness(&self, g: &Graph, target: &ArrowTarget) -> ArrowOutcome {
        let mut classes = Vec::with_capacity(target.s());
        if witness_search(g, g.vertices().bits(), target.entries(), &mut classes) {
            ArrowOutcome::Arrows
        } else {
            ArrowOutcome::Fails(Coloring::from_classes(g.n(), &classes))
        }
    }
}

/// Returns `true` when arrowing holds; otherwise leaves the colour classes in `classes`.
fn witness_search(g: &Graph, mask: u64, entries: &[usize], classes: &mut Vec<u64>) -> bool {
    let rows = g.rows();
    if entries.len() == 1 {
        if has_clique_in(rows, mask, entries[0]) {
            return true;
        }
        classes.push(mask);
        return false;
    }
    let (a, rest) = (entries[0], &entries[1..]);
    let depth = classes.len();
    let mut visit = |part: u64| {
        classes.truncate(depth);
        classes.push(part);
        if witness_search(g, mask & !part, rest, classes) {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(())
        }
    };
    let flow = if a == 2 {
        for_each_maximal_independent_set(rows, mask, &mut visit)
    } else {
        for_each_maximal_kfree_subset(rows, mask, a, &mut visit)
    };
    if flow.is_continue() {
        classes.truncate(depth);
        true
    } else {
        false
    }
}

/// `G →v (2_r, 3)` without memoization.
pub fn arrows_2r3(g: &Graph, r: usize) -> bool {
    ArrowChecker::new().arrows_2r3(g, r)
}

/// `G →v target` by maximal-subset peeling, without memoization.
pub fn arrows(g: &Graph, target: &ArrowTarget) -> bool {
    ArrowChecker::new().arrows(g, target)
}

/// For a negative `G →v (2_r, 3)`: independent sets `A_1, ..., A_r` whose
/// removal leaves a triangle-free graph. `None` when `G` arrows.
pub fn arrows_2r3_witness(g: &Graph, r: usize) -> Option<Vec<VertexSet>> {
    match ArrowChecker::new().arrows_with_witness(g, &ArrowTarget::twos_then(r, 3)) {
        ArrowOutcome::Arrows => None,
        ArrowOutcome::Fails(c) => Some((0..r).map(|i| c.class(i)).collect()),
    }
}

/// Checks `K_k + G →v (2_k, target)` directly on the joined graph.
pub fn join_lift_check(g: &Graph, target: &ArrowTarget, k: usize) -> Result<bool, ArrowError> {
    let lifted = Graph::complete(k).join(g)?;
    Ok(arrows(&lifted, &target.lift(k)))
}

/// Naive clique test used only by the oracle, kept apart from the clique kernels.
fn naive_has_clique(rows: &[u64], set: u64, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if (set.count_ones() as usize) < k {
        return false;
    }
    let v = set.trailing_zeros() as usize;
    naive_has_clique(rows, set & rows[v], k - 1) || naive_has_clique(rows, set & !bit(v), k)
}

/// Checks that `c` is a colouring of `g` with no colour `i` containing `K_{a_i}`.
pub fn verify_bad_coloring(g: &Graph, target: &ArrowTarget, c: &Coloring) -> bool {
    if c.colors.len() != g.n() || c.colors.iter().any(|&x| x as usize >= target.s()) {
        return false;
    }
    target
        .entries()
        .iter()
        .enumerate()
        .all(|(i, &a)| !naive_has_clique(g.rows(), c.class(i).bits(), a))
}

struct Oracle<'a> {
    rows: &'a [u64],
    n: usize,
    entries: &'a [usize],
    classes: Vec<u64>,
}

impl Oracle<'_> {
    fn color(&mut self, v: usize) -> bool {
        if v == self.n {
            return true;
        }
        for i in 0..self.entries.len() {
            // colours with equal entries are interchangeable: open at most one new empty one
            if self.classes[i] == 0
                && i > 0
                && self.entries[i - 1] == self.entries[i]
                && self.classes[i - 1] == 0
            {
                continue;
            }
            let a = self.entries[i];
            if naive_has_clique(self.rows, self.classes[i] & self.rows[v], a - 1) {
                continue;
            }
            self.classes[i] |= bit(v);
            if self.color(v + 1) {
                return true;
            }
            self.classes[i] &= !bit(v);
        }
        false
    }
}

/// Brute-force decision of `G →v target` over all colourings (with symmetry
/// breaking among equal entries). On a negative answer the returned colouring
/// has been re-checked by [`verify_bad_coloring`].
pub fn arrows_oracle(g: &Graph, target: &ArrowTarget) -> Result<ArrowOutcome, ArrowError> {
    if g.n() > ORACLE_MAX_VERTICES {
        return Err(ArrowError::OracleTooManyVertices {
            n: g.n(),
            max_n: ORACLE_MAX_VERTICES,
        });
    }
    if target.s() > ORACLE_MAX_COLORS {
        return Err(ArrowError::OracleTooManyColors {
            s: target.s(),
            max_s: ORACLE_MAX_COLORS,
        });
    }
    let mut oracle = Oracle {
        rows: g.rows(),
        n: g.n(),
        entries: target.entries(),
        classes: vec![0; target.s()],
    };
    if oracle.color(0) {
        let c = Coloring::from_classes(g.n(), &oracle.classes);
        assert!(
            verify_bad_coloring(g, target, &c),
            "oracle produced a colouring that fails re-verification"
        );
        Ok(ArrowOutcome::Fails(c))
    } else {
        Ok(ArrowOutcome::Arrows)
    }
}
