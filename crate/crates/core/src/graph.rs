//! Dense simple graphs on at most 64 vertices, stored as one `u64` adjacency row per vertex.

use std::fmt;

use crate::error::GraphError;

/// Hard cap on the order of a [`Graph`]; one adjacency row fits in a machine word.
pub const MAX_VERTICES: usize = 64;

#[inline(always)]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask with the lowest `n` bits set.
#[inline(always)]
pub(crate) const fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the set bit positions of a word, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

/// A set of vertex indices of some host graph.
///
/// The set itself does not know the host order; range checks happen where a
/// set is applied to a graph.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// `{0, 1, ..., n-1}`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        VertexSet(low_bits(n))
    }

    #[inline]
    pub const fn singleton(v: usize) -> Self {
        VertexSet(bit(v))
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & bit(v) != 0
    }

    #[inline]
    pub const fn with(self, v: usize) -> Self {
        VertexSet(self.0 | bit(v))
    }

    #[inline]
    pub const fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !bit(v))
    }

    #[inline]
    pub const fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub const fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest member plus one, or 0 for the empty set.
    #[inline]
    pub const fn bound(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    #[inline]
    pub fn iter(self) -> Bits {
        Bits(self.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut bits = 0u64;
        for v in iter {
            assert!(v < MAX_VERTICES, "vertex {v} exceeds the 64-vertex cap");
            bits |= bit(v);
        }
        VertexSet(bits)
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Bits;

    fn into_iter(self) -> Bits {
        Bits(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Undirected simple graph on vertices `0..n`, `n <= 64`.
///
/// `adj[v]` holds the neighbourhood of `v`. Rows are symmetric, have no
/// self-loops and never carry bits at or above `n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    ///
    /// Panics if `n > 64`.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graph order {n} exceeds the 64-vertex cap");
        Graph { n, adj: vec![0; n] }
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        let all = low_bits(n);
        for v in 0..n {
            g.adj[v] = all & !bit(v);
        }
        g
    }

    /// Cycle `C_n` with edges `{i, i+1 mod n}`. Requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut g = Graph::empty(n);
        for i in 0..n {
            g.set_edge(i, (i + 1) % n);
        }
        g
    }

    /// Path `P_n` with edges `{i, i+1}`.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 1..n {
            g.set_edge(i - 1, i);
        }
        g
    }

    /// Star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::empty(leaves + 1);
        for i in 1..=leaves {
            g.set_edge(0, i);
        }
        g
    }

    /// Complement of the cycle `C_n`: `i ~ j` iff their cyclic distance is at least 2.
    pub fn cycle_complement(n: usize) -> Self {
        Graph::cycle(n).complement()
    }

    /// Builds a graph from an edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::SelfLoop { v });
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows, validating every invariant.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self, GraphError> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        let mask = low_bits(n);
        for (v, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(GraphError::VertexOutOfRange {
                    v: (row & !mask).trailing_zeros() as usize,
                    n,
                });
            }
            if row & bit(v) != 0 {
                return Err(GraphError::SelfLoop { v });
            }
            for u in Bits(row) {
                if rows[u] & bit(v) == 0 {
                    return Err(GraphError::Asymmetric { u: v, v: u });
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    #[inline]
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        Graph { n: rows.len(), adj: rows }
    }

    #[inline]
    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    #[inline]
    pub(crate) fn clear_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { v, n: self.n })
        }
    }

    fn check_set(&self, s: VertexSet) -> Result<(), GraphError> {
        if s.bound() <= self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                v: s.bound() - 1,
                n: self.n,
            })
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Adjacency rows, one per vertex.
    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| Bits(self.adj[u] & !low_bits(u + 1)).map(move |v| (u, v)))
    }

    /// Unordered non-adjacent pairs `(u, v)` with `u < v`, each once.
    pub fn non_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let all = low_bits(self.n);
        (0..self.n).flat_map(move |u| {
            Bits(!self.adj[u] & all & !low_bits(u + 1)).map(move |v| (u, v))
        })
    }

    /// `true` if `s` induces no edge.
    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v] & s.0 == 0)
    }

    pub fn complement(&self) -> Graph {
        let all = low_bits(self.n);
        let rows = (0..self.n).map(|v| !self.adj[v] & all & !bit(v)).collect();
        Graph::from_rows_unchecked(rows)
    }

    /// Copy with the edge `{u, v}` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop { v });
        }
        let mut g = self.clone();
        g.set_edge(u, v);
        Ok(g)
    }

    /// Copy with the edge `{u, v}` removed (no-op if absent).
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut g = self.clone();
        g.clear_edge(u, v);
        Ok(g)
    }

    /// Induced subgraph on `keep`, relabelled in increasing vertex order.
    pub fn induced(&self, keep: VertexSet) -> Result<Graph, GraphError> {
        self.check_set(keep)?;
        Ok(self.induced_unchecked(keep.bits()))
    }

    pub(crate) fn induced_unchecked(&self, keep: u64) -> Graph {
        let order: Vec<usize> = Bits(keep).collect();
        let mut pos = [0usize; MAX_VERTICES];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let rows = order
            .iter()
            .map(|&v| Bits(self.adj[v] & keep).fold(0u64, |acc, u| acc | bit(pos[u])))
            .collect();
        Graph::from_rows_unchecked(rows)
    }

    /// `G - A`: deletes the vertices of `a`; survivors keep their relative order.
    pub fn remove_vertices(&self, a: VertexSet) -> Result<Graph, GraphError> {
        self.check_set(a)?;
        Ok(self.induced_unchecked(low_bits(self.n) & !a.bits()))
    }

    pub fn remove_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        self.remove_vertices(VertexSet::singleton(v))
    }

    /// Appends a new vertex (index `n`) adjacent exactly to `nbrs`.
    pub fn add_vertex(&self, nbrs: VertexSet) -> Result<Graph, GraphError> {
        self.check_set(nbrs)?;
        if self.n + 1 > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n: self.n + 1 });
        }
        let v = self.n;
        let mut rows = self.adj.clone();
        for u in nbrs.iter() {
            rows[u] |= bit(v);
        }
        rows.push(nbrs.bits());
        Ok(Graph::from_rows_unchecked(rows))
    }

    /// Appends a false twin of `v`: same neighbourhood, not adjacent to `v`.
    pub fn duplicate_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        self.add_vertex(self.neighbors(v))
    }

    /// Join `G1 + G2`: disjoint union plus every edge between the two parts.
    /// Vertices of `other` are shifted by `self.n()`.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        let left = low_bits(self.n);
        let right = low_bits(n) & !left;
        let mut rows = Vec::with_capacity(n);
        rows.extend(self.adj.iter().map(|&r| r | right));
        rows.extend(other.adj.iter().map(|&r| (r << self.n) | left));
        Ok(Graph::from_rows_unchecked(rows))
    }

    /// Relabels so that old vertex `perm[i]` becomes new vertex `i`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal graph order");
        let mut pos = [0usize; MAX_VERTICES];
        for (i, &v) in perm.iter().enumerate() {
            pos[v] = i;
        }
        let rows = perm
            .iter()
            .map(|&v| Bits(self.adj[v]).fold(0u64, |acc, u| acc | bit(pos[u])))
            .collect();
        Graph::from_rows_unchecked(rows)
    }

    /// Returns a pair `(u, v)`, `u != v`, with `N(u) ⊆ N(v)`, if one exists.
    pub fn sperner_pair(&self) -> Option<(usize, usize)> {
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v && self.adj[u] & !self.adj[v] == 0 {
                    return Some((u, v));
                }
            }
        }
        None
    }

    /// A graph is Sperner when some neighbourhood is contained in another.
    pub fn is_sperner(&self) -> bool {
        self.sperner_pair().is_some()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}
