//! Clique and independent-set kernels.
//!
//! Most routines come in two flavours: a public one taking a [`Graph`], and a
//! crate-internal one taking raw adjacency rows plus a vertex mask so that
//! callers can work on induced subgraphs without relabelling.

use std::ops::ControlFlow;

use crate::error::CliqueError;
use crate::graph::{bit, low_bits, Bits, Graph, VertexSet};

/// A family of vertex subsets of a host graph, e.g. all maximal K3-free subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetFamily {
    pub host_n: usize,
    pub members: Vec<VertexSet>,
}

impl SubsetFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.members.iter().copied()
    }
}

/// Complement rows restricted to `mask`.
#[inline]
pub(crate) fn complement_rows(rows: &[u64], mask: u64) -> Vec<u64> {
    rows.iter()
        .enumerate()
        .map(|(v, &r)| if mask & bit(v) != 0 { !r & mask & !bit(v) } else { 0 })
        .collect()
}

/// `true` if `set` contains at least one edge.
#[inline]
pub(crate) fn has_edge_within(rows: &[u64], set: u64) -> bool {
    Bits(set).any(|v| rows[v] & set != 0)
}

/// `true` if the subgraph induced by `mask` contains a triangle.
#[inline]
pub(crate) fn has_triangle_in(rows: &[u64], mask: u64) -> bool {
    for v in Bits(mask) {
        // only look at neighbours above v so each edge is handled once
        let up = rows[v] & mask & !low_bits(v + 1);
        for u in Bits(up) {
            if rows[u] & rows[v] & mask != 0 {
                return true;
            }
        }
    }
    false
}

/// Greedy sequential colouring of `cand`. Vertices are pushed class by class,
/// so `colors` is non-decreasing and `colors[i]` bounds the clique number of
/// the first `i + 1` vertices of `order`.
fn color_sort(rows: &[u64], cand: u64, order: &mut Vec<usize>, colors: &mut Vec<usize>) {
    order.clear();
    colors.clear();
    let mut uncolored = cand;
    let mut color = 0;
    while uncolored != 0 {
        color += 1;
        let mut q = uncolored;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= !bit(v) & !rows[v];
            uncolored &= !bit(v);
            order.push(v);
            colors.push(color);
        }
    }
}

fn max_clique_rec(rows: &[u64], size: usize, mut cand: u64, best: &mut usize) {
    let mut order = Vec::with_capacity(cand.count_ones() as usize);
    let mut colors = Vec::with_capacity(order.capacity());
    color_sort(rows, cand, &mut order, &mut colors);
    for i in (0..order.len()).rev() {
        if size + colors[i] <= *best {
            return;
        }
        let v = order[i];
        let next = cand & rows[v];
        if next == 0 {
            if size + 1 > *best {
                *best = size + 1;
            }
        } else {
            max_clique_rec(rows, size + 1, next, best);
        }
        cand &= !bit(v);
    }
}

/// Clique number of the subgraph induced by `mask`.
pub(crate) fn clique_number_in(rows: &[u64], mask: u64) -> usize {
    if mask == 0 {
        return 0;
    }
    let mut best = 1;
    max_clique_rec(rows, 0, mask, &mut best);
    best
}

fn has_clique_rec(rows: &[u64], need: usize, mut cand: u64) -> bool {
    if need == 0 {
        return true;
    }
    if (cand.count_ones() as usize) < need {
        return false;
    }
    if need == 1 {
        return cand != 0;
    }
    if need == 2 {
        return has_edge_within(rows, cand);
    }
    let mut order = Vec::with_capacity(cand.count_ones() as usize);
    let mut colors = Vec::with_capacity(order.capacity());
    color_sort(rows, cand, &mut order, &mut colors);
    for i in (0..order.len()).rev() {
        if colors[i] < need {
            return false;
        }
        let v = order[i];
        if has_clique_rec(rows, need - 1, cand & rows[v]) {
            return true;
        }
        cand &= !bit(v);
    }
    false
}

/// `true` if the subgraph induced by `mask` contains `K_k`.
pub(crate) fn has_clique_in(rows: &[u64], mask: u64, k: usize) -> bool {
    match k {
        0 => true,
        1 => mask != 0,
        2 => has_edge_within(rows, mask),
        3 => has_triangle_in(rows, mask),
        _ => has_clique_rec(rows, k, mask),
    }
}

/// ω(G); 0 for the graph with no vertices.
pub fn clique_number(g: &Graph) -> usize {
    clique_number_in(g.rows(), g.vertices().bits())
}

/// α(G) = ω(complement of G).
pub fn independence_number(g: &Graph) -> usize {
    let mask = g.vertices().bits();
    clique_number_in(&complement_rows(g.rows(), mask), mask)
}

/// `true` iff ω(G) ≥ k, stopping as soon as a `K_k` is found.
pub fn has_kclique(g: &Graph, k: usize) -> bool {
    has_clique_in(g.rows(), g.vertices().bits(), k)
}

pub fn has_triangle(g: &Graph) -> bool {
    has_triangle_in(g.rows(), g.vertices().bits())
}

fn bron_kerbosch<F>(rows: &[u64], r: u64, mut p: u64, mut x: u64, f: &mut F) -> ControlFlow<()>
where
    F: FnMut(u64) -> ControlFlow<()>,
{
    if p == 0 {
        if x == 0 {
            return f(r);
        }
        return ControlFlow::Continue(());
    }
    // Tomita pivot: maximise |P ∩ N(u)| over u in P ∪ X
    let mut pivot_nbrs = 0u64;
    let mut best = -1i64;
    for u in Bits(p | x) {
        let c = (p & rows[u]).count_ones() as i64;
        if c > best {
            best = c;
            pivot_nbrs = rows[u];
        }
    }
    for v in Bits(p & !pivot_nbrs) {
        bron_kerbosch(rows, r | bit(v), p & rows[v], x & rows[v], f)?;
        p &= !bit(v);
        x |= bit(v);
    }
    ControlFlow::Continue(())
}

/// Visits every maximal clique of the subgraph induced by `mask`. The empty
/// mask has exactly one maximal clique, the empty set.
pub(crate) fn for_each_maximal_clique<F>(rows: &[u64], mask: u64, mut f: F) -> ControlFlow<()>
where
    F: FnMut(u64) -> ControlFlow<()>,
{
    bron_kerbosch(rows, 0, mask, 0, &mut f)
}

/// Visits every maximal independent set of the subgraph induced by `mask`.
pub(crate) fn for_each_maximal_independent_set<F>(
    rows: &[u64],
    mask: u64,
    f: F,
) -> ControlFlow<()>
where
    F: FnMut(u64) -> ControlFlow<()>,
{
    let comp = complement_rows(rows, mask);
    for_each_maximal_clique(&comp, mask, f)
}

/// All maximal cliques, each exactly once.
pub fn maximal_cliques(g: &Graph) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let _ = for_each_maximal_clique(g.rows(), g.vertices().bits(), |c| {
        out.push(VertexSet::from_bits(c));
        ControlFlow::Continue(())
    });
    out
}

/// All maximal independent sets, each exactly once.
pub fn maximal_independent_sets(g: &Graph) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let _ = for_each_maximal_independent_set(g.rows(), g.vertices().bits(), |s| {
        out.push(VertexSet::from_bits(s));
        ControlFlow::Continue(())
    });
    out
}

struct KFreeSearch<'a, F> {
    rows: &'a [u64],
    /// forbidden clique order
    k: usize,
    f: F,
}

impl<F: FnMut(u64) -> ControlFlow<()>> KFreeSearch<'_, F> {
    /// `u` is blocked by `chosen` when adding it would complete a `K_k`.
    #[inline]
    fn blocked(&self, u: usize, chosen: u64) -> bool {
        has_clique_in(self.rows, self.rows[u] & chosen, self.k - 1)
    }

    fn run(&mut self, undecided: u64, chosen: u64, excluded: u64) -> ControlFlow<()> {
        // every excluded vertex must end up blocked; give up early if it no longer can be
        let reach = chosen | undecided;
        for u in Bits(excluded) {
            if !self.blocked(u, reach) {
                return ControlFlow::Continue(());
            }
        }
        if undecided == 0 {
            return (self.f)(chosen);
        }
        let v = undecided.trailing_zeros() as usize;
        let rest = undecided & !bit(v);
        if !self.blocked(v, chosen) {
            self.run(rest, chosen | bit(v), excluded)?;
        }
        self.run(rest, chosen, excluded | bit(v))
    }
}

/// Visits every inclusion-maximal subset of `mask` that induces no `K_k`
/// (`k >= 2`; `k = 2` gives the maximal independent sets). Order is an
/// include-first branch over vertices in increasing index.
pub(crate) fn for_each_maximal_kfree_subset<F>(rows: &[u64], mask: u64, k: usize, f: F) -> ControlFlow<()>
where
    F: FnMut(u64) -> ControlFlow<()>,
{
    assert!(k >= 2, "K_{k}-free subsets are only defined here for k >= 2");
    let mut search = KFreeSearch { rows, k, f };
    search.run(mask, 0, 0)
}

/// All inclusion-maximal vertex subsets inducing a triangle-free subgraph.
///
/// Members are listed in the order of an include-first branch over vertices
/// `0..n`, which is deterministic for a labelled graph.
pub fn maximal_k3free_subsets(g: &Graph) -> SubsetFamily {
    let mut members = Vec::new();
    let _ = for_each_maximal_kfree_subset(g.rows(), g.vertices().bits(), 3, |s| {
        members.push(VertexSet::from_bits(s));
        ControlFlow::Continue(())
    });
    SubsetFamily {
        host_n: g.n(),
        members,
    }
}

/// `true` if `s` induces a triangle-free subgraph and every vertex outside it
/// would close a triangle.
pub fn is_maximal_k3free(g: &Graph, s: VertexSet) -> bool {
    let rows = g.rows();
    let set = s.bits();
    if s.bound() > g.n() || has_triangle_in(rows, set) {
        return false;
    }
    g.vertices()
        .difference(s)
        .iter()
        .all(|u| has_edge_within(rows, rows[u] & set))
}

/// Every non-edge has a common neighbour, so adding it creates a new triangle.
pub fn is_plus_k3(g: &Graph) -> bool {
    let rows = g.rows();
    g.non_edges().all(|(u, v)| rows[u] & rows[v] != 0)
}

/// Adding any non-edge would create a `K_q`. No precondition check.
pub(crate) fn is_saturated(g: &Graph, q: usize) -> bool {
    let rows = g.rows();
    g.non_edges()
        .all(|(u, v)| has_clique_in(rows, rows[u] & rows[v], q.saturating_sub(2)))
}

/// Maximality in a `K_q`-free class: adding any non-edge creates a `K_q`.
///
/// Requires ω(G) < q. Graphs without non-edges are vacuously maximal.
pub fn is_maximal_in_class(g: &Graph, q: usize) -> Result<bool, CliqueError> {
    if has_kclique(g, q) {
        return Err(CliqueError::CliqueBound {
            omega: clique_number(g),
            q,
        });
    }
    Ok(is_saturated(g, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c7bar() -> Graph {
        Graph::cycle_complement(7)
    }

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn brute_clique_number(g: &Graph) -> usize {
        let n = g.n();
        (0u64..1 << n)
            .filter(|&s| Bits(s).all(|v| g.rows()[v] & s == s & !bit(v)))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn clique_numbers() {
        assert_eq!(clique_number(&Graph::complete(6)), 6);
        assert_eq!(clique_number(&Graph::cycle(5)), 2);
        assert_eq!(clique_number(&c7bar()), 3);
        assert_eq!(brute_clique_number(&c7bar()), 3);
        assert_eq!(clique_number(&Graph::empty(0)), 0);
        assert_eq!(clique_number(&Graph::empty(3)), 1);
    }

    #[test]
    fn independence_numbers() {
        assert_eq!(independence_number(&Graph::empty(5)), 5);
        assert_eq!(independence_number(&c7bar()), 2);
        let wheel = Graph::complete(1).join(&Graph::cycle(5)).unwrap();
        assert_eq!(independence_number(&wheel), 2);
    }

    #[test]
    fn has_kclique_examples() {
        assert!(!has_kclique(&c7bar(), 4));
        assert!(has_kclique(&c7bar(), 3));
        assert!(has_kclique(&Graph::complete(4), 4));
        assert!(has_kclique(&Graph::empty(0), 0));
        assert!(!has_kclique(&Graph::empty(0), 1));
        assert!(!has_kclique(&Graph::empty(4), 2));
        assert!(has_kclique(&Graph::complete(7), 7));
        assert!(!has_kclique(&Graph::complete(7), 8));
    }

    #[test]
    fn mis_examples() {
        let mut c5 = maximal_independent_sets(&Graph::cycle(5));
        c5.sort();
        let mut want = vec![set(&[0, 2]), set(&[0, 3]), set(&[1, 3]), set(&[1, 4]), set(&[2, 4])];
        want.sort();
        assert_eq!(c5, want);

        let mut k4 = maximal_independent_sets(&Graph::complete(4));
        k4.sort();
        assert_eq!(k4, (0..4).map(VertexSet::singleton).collect::<Vec<_>>());

        let mut c7 = maximal_independent_sets(&c7bar());
        c7.sort();
        let mut want: Vec<_> = (0..7).map(|i| set(&[i, (i + 1) % 7])).collect();
        want.sort();
        assert_eq!(c7, want);

        assert_eq!(maximal_independent_sets(&Graph::empty(0)), vec![VertexSet::EMPTY]);
    }

    #[test]
    fn k3free_examples() {
        let mut k3 = maximal_k3free_subsets(&Graph::complete(3)).members;
        k3.sort();
        assert_eq!(k3, vec![set(&[0, 1]), set(&[0, 2]), set(&[1, 2])]);

        let c5 = maximal_k3free_subsets(&Graph::cycle(5));
        assert_eq!(c5.members, vec![VertexSet::full(5)]);

        // complement of P5; old labels 2..6 are 0..4 here, so {2,3,4,5} is {0,1,2,3}
        let h = Graph::path(5).complement();
        let fam = maximal_k3free_subsets(&h);
        assert!(fam.members.contains(&set(&[0, 1, 2, 3])));
        assert!(fam.members.contains(&set(&[1, 2, 3, 4])));
        let mut brute: Vec<VertexSet> = (0u64..32)
            .map(VertexSet::from_bits)
            .filter(|&s| is_maximal_k3free(&h, s))
            .collect();
        brute.sort();
        let mut got = fam.members.clone();
        got.sort();
        assert_eq!(got, brute);
    }

    #[test]
    fn plus_k3_examples() {
        assert!(is_plus_k3(&Graph::complete(3)));
        assert!(is_plus_k3(&Graph::cycle(5)));
        assert!(!is_plus_k3(&Graph::empty(2)));
        assert!(!is_plus_k3(&Graph::path(2).add_vertex(VertexSet::EMPTY).unwrap()));
    }

    #[test]
    fn maximal_in_class_examples() {
        assert_eq!(is_maximal_in_class(&c7bar(), 4), Ok(true));
        assert_eq!(is_maximal_in_class(&Graph::cycle(5), 4), Ok(false));
        assert_eq!(is_maximal_in_class(&Graph::complete(3), 4), Ok(true));
        assert_eq!(
            is_maximal_in_class(&Graph::complete(4), 4),
            Err(CliqueError::CliqueBound { omega: 4, q: 4 })
        );
    }

    #[test]
    fn c7bar_chords_create_k4() {
        let g = c7bar();
        for i in 0..7 {
            let j = (i + 1) % 7;
            let plus = g.with_edge(i, j).unwrap();
            let k4 = set(&[i, j, (i + 3) % 7, (i + 5) % 7]);
            assert!(k4.iter().all(|a| k4.iter().all(|b| a == b || plus.has_edge(a, b))));
        }
    }
}
