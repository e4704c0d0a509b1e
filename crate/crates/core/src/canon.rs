//! Canonical labelling by individualization-refinement.
//!
//! The search tree starts from an ordered partition built from vertex
//! invariants (degree, sorted neighbour degrees, triangle count), refines it
//! to an equitable partition, and branches by individualizing each vertex of
//! the first non-singleton cell. Every discrete leaf gives a relabelling; the
//! canonical one has the lexicographically smallest permuted adjacency matrix.
//!
//! Two prunings keep symmetric graphs tractable: automorphisms discovered at
//! equal leaves merge sibling branches into orbits, and when such an
//! automorphism maps an earlier path onto the current one, the rest of the
//! current subtree is skipped.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::graph::{bit, Bits, Graph, MAX_VERTICES};
use crate::graph6::write_graph6;

/// Relabelling-invariant certificate: the graph6 string of the canonically
/// relabelled graph. Equal forms mean isomorphic graphs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        // built from write_graph6, which is ASCII
        std::str::from_utf8(&self.0).expect("canonical form is ASCII")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.as_str())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Ordered partition of the vertex set; each cell is a bitmask.
type Partition = Vec<u64>;

fn initial_partition(g: &Graph) -> Partition {
    let rows = g.rows();
    let n = g.n();
    let degree: Vec<u32> = rows.iter().map(|r| r.count_ones()).collect();
    let mut keyed: BTreeMap<(u32, Vec<u32>, u32), u64> = BTreeMap::new();
    for v in 0..n {
        let mut nd: Vec<u32> = Bits(rows[v]).map(|u| degree[u]).collect();
        nd.sort_unstable();
        let tri: u32 = Bits(rows[v])
            .map(|u| (rows[u] & rows[v]).count_ones())
            .sum::<u32>()
            / 2;
        *keyed.entry((degree[v], nd, tri)).or_default() |= bit(v);
    }
    keyed.into_values().collect()
}

/// Refines `cells` in place to the coarsest equitable refinement. Sub-cells
/// replace their parent at the parent's position, ordered by the vector of
/// neighbour counts into the current cells, so singletons never move.
fn refine(rows: &[u64], cells: &mut Partition) {
    let mut sig_buf: Vec<(Vec<u32>, usize)> = Vec::new();
    loop {
        let mut next: Partition = Vec::with_capacity(cells.len());
        for &cell in cells.iter() {
            if cell.count_ones() == 1 {
                next.push(cell);
                continue;
            }
            sig_buf.clear();
            for v in Bits(cell) {
                let sig: Vec<u32> = cells.iter().map(|&c| (rows[v] & c).count_ones()).collect();
                sig_buf.push((sig, v));
            }
            sig_buf.sort_unstable();
            let mut current = 0u64;
            for i in 0..sig_buf.len() {
                if i > 0 && sig_buf[i].0 != sig_buf[i - 1].0 {
                    next.push(current);
                    current = 0;
                }
                current |= bit(sig_buf[i].1);
            }
            next.push(current);
        }
        let done = next.len() == cells.len();
        *cells = next;
        if done {
            return;
        }
    }
}

fn permuted_rows(rows: &[u64], lab: &[usize]) -> Vec<u64> {
    let mut pos = [0usize; MAX_VERTICES];
    for (i, &v) in lab.iter().enumerate() {
        pos[v] = i;
    }
    lab.iter()
        .map(|&v| Bits(rows[v]).fold(0u64, |acc, u| acc | bit(pos[u])))
        .collect()
}

struct Leaf {
    path: Vec<usize>,
    lab: Vec<usize>,
    cert: Vec<u64>,
}

struct Search<'a> {
    rows: &'a [u64],
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<usize>>,
}

enum Flow {
    Continue,
    /// Unwind to the node at this depth and move on to its next child.
    JumpTo(usize),
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl Search<'_> {
    fn run(&mut self, mut cells: Partition, path: &mut Vec<usize>) -> Flow {
        refine(self.rows, &mut cells);
        if cells.len() == self.n {
            let lab: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
            return self.leaf(lab, path);
        }
        let (ti, target) = cells
            .iter()
            .enumerate()
            .find(|(_, c)| c.count_ones() > 1)
            .map(|(i, &c)| (i, c))
            .expect("non-discrete partition has a non-singleton cell");
        let depth = path.len();
        let mut tried: Vec<usize> = Vec::new();
        for v in Bits(target) {
            if !tried.is_empty() && self.equivalent_to_tried(path, &tried, v) {
                continue;
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..ti]);
            child.push(bit(v));
            child.push(target & !bit(v));
            child.extend_from_slice(&cells[ti + 1..]);
            path.push(v);
            let flow = self.run(child, path);
            path.pop();
            if let Flow::JumpTo(d) = flow {
                if d < depth {
                    return flow;
                }
            }
        }
        Flow::Continue
    }

    /// Is `v` in the orbit of an already-explored sibling under the
    /// automorphisms found so far that fix `path` pointwise?
    fn equivalent_to_tried(&self, path: &[usize], tried: &[usize], v: usize) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        let mut any = false;
        for g in &self.autos {
            if path.iter().all(|&p| g[p] == p) {
                any = true;
                for x in 0..self.n {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, g[x]));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == rv)
    }

    fn leaf(&mut self, lab: Vec<usize>, path: &[usize]) -> Flow {
        let cert = permuted_rows(self.rows, &lab);
        let leaf = Leaf {
            path: path.to_vec(),
            lab,
            cert,
        };
        if self.first.is_none() {
            self.first = Some(Leaf {
                path: leaf.path.clone(),
                lab: leaf.lab.clone(),
                cert: leaf.cert.clone(),
            });
            self.best = Some(leaf);
            return Flow::Continue;
        }
        for reference in [self.first.as_ref(), self.best.as_ref()].into_iter().flatten() {
            if reference.cert == leaf.cert {
                let mut gamma = vec![0usize; self.n];
                for (i, &u) in reference.lab.iter().enumerate() {
                    gamma[u] = leaf.lab[i];
                }
                let k = reference
                    .path
                    .iter()
                    .zip(&leaf.path)
                    .take_while(|(a, b)| a == b)
                    .count();
                let fixes_prefix = reference.path[..k].iter().all(|&p| gamma[p] == p);
                let maps_branch = k < reference.path.len()
                    && k < leaf.path.len()
                    && gamma[reference.path[k]] == leaf.path[k];
                if self.autos.len() < 4 * MAX_VERTICES {
                    self.autos.push(gamma);
                }
                if fixes_prefix && maps_branch {
                    return Flow::JumpTo(k);
                }
                return Flow::Continue;
            }
        }
        if leaf.cert < self.best.as_ref().expect("best set with first").cert {
            self.best = Some(leaf);
        }
        Flow::Continue
    }
}

/// Canonical labelling: new vertex `i` is old vertex `lab[i]`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    if g.n() <= 1 {
        return (0..g.n()).collect();
    }
    let mut search = Search {
        rows: g.rows(),
        n: g.n(),
        first: None,
        best: None,
        autos: Vec::new(),
    };
    let mut path = Vec::new();
    search.run(initial_partition(g), &mut path);
    search.best.expect("search visits at least one leaf").lab
}

/// `g` relabelled canonically; isomorphic inputs give identical outputs.
pub fn canonical_graph(g: &Graph) -> Graph {
    g.permuted(&canonical_labeling(g))
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    CanonicalForm(write_graph6(&canonical_graph(g)).into_bytes())
}

pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    g1.n() == g2.n() && g1.edge_count() == g2.edge_count() && canonical_form(g1) == canonical_form(g2)
}

/// One canonically relabelled representative per isomorphism class, sorted by canonical form.
pub fn dedup<I: IntoIterator<Item = Graph>>(graphs: I) -> Vec<Graph> {
    let mut seen: BTreeMap<CanonicalForm, Graph> = BTreeMap::new();
    for g in graphs {
        let c = canonical_graph(&g);
        seen.entry(CanonicalForm(write_graph6(&c).into_bytes()))
            .or_insert(c);
    }
    seen.into_values().collect()
}

/// Parallel [`dedup`]; output is identical regardless of thread count.
pub fn dedup_par(graphs: Vec<Graph>) -> Vec<Graph> {
    let mut keyed: Vec<(CanonicalForm, Graph)> = graphs
        .into_par_iter()
        .map(|g| {
            let c = canonical_graph(&g);
            (CanonicalForm(write_graph6(&c).into_bytes()), c)
        })
        .collect();
    keyed.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    keyed.into_iter().map(|(_, g)| g).collect()
}

/// Sorts graphs by canonical form without removing duplicates.
pub fn sort_canonical(graphs: &mut [Graph]) {
    graphs.sort_by_cached_key(canonical_form);
}
