//! Exhaustive generation of non-isomorphic graphs by vertex addition.
//!
//! Level `k + 1` is built from the isomorphism classes at level `k` by
//! appending a vertex with every possible neighbourhood and keeping one
//! canonical representative per class. Every graph on `k + 1` vertices has an
//! induced subgraph on `k` vertices, so this reaches every class. Bounds on ω
//! and α are hereditary and are applied while growing.

use rayon::prelude::*;

use crate::canon::dedup_par;
use crate::clique::{complement_rows, has_clique_in};
use crate::graph::{low_bits, Graph, VertexSet};

/// Largest order accepted by [`all_graphs`].
pub const ENUMERATION_MAX_VERTICES: usize = 10;

/// Hereditary restrictions applied during generation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Hereditary {
    /// keep only graphs with ω ≤ this
    pub max_clique: Option<usize>,
    /// keep only graphs with α ≤ this
    pub max_independence: Option<usize>,
}

impl Hereditary {
    pub const NONE: Hereditary = Hereditary {
        max_clique: None,
        max_independence: None,
    };

    pub fn k_free(q: usize) -> Self {
        Hereditary {
            max_clique: Some(q.saturating_sub(1)),
            max_independence: None,
        }
    }

    /// Would appending a vertex adjacent to `nbrs` keep the bounds, given that `g` keeps them?
    fn admits(&self, g: &Graph, nbrs: u64) -> bool {
        if let Some(w) = self.max_clique {
            if has_clique_in(g.rows(), nbrs, w) {
                return false;
            }
        }
        if let Some(a) = self.max_independence {
            let mask = low_bits(g.n());
            let non_nbrs = mask & !nbrs;
            if has_clique_in(&complement_rows(g.rows(), mask), non_nbrs, a) {
                return false;
            }
        }
        true
    }

    fn admits_base(&self) -> bool {
        self.max_clique.is_none_or(|w| w >= 1) && self.max_independence.is_none_or(|a| a >= 1)
    }
}

/// One-vertex extensions of `graphs` allowed by `bounds`, deduplicated.
pub fn extend_by_vertex(graphs: &[Graph], bounds: Hereditary) -> Vec<Graph> {
    let children: Vec<Graph> = graphs
        .par_iter()
        .flat_map_iter(|g| {
            let n = g.n();
            (0u64..1u64 << n)
                .filter(move |&s| bounds.admits(g, s))
                .map(move |s| g.add_vertex(VertexSet::from_bits(s)).expect("order stays below the cap"))
        })
        .collect();
    dedup_par(children)
}

/// All isomorphism classes of graphs on `n` vertices within `bounds`, sorted by
/// canonical form. `n` is capped at [`ENUMERATION_MAX_VERTICES`].
pub fn all_graphs(n: usize, bounds: Hereditary) -> Option<Vec<Graph>> {
    if n > ENUMERATION_MAX_VERTICES {
        return None;
    }
    let mut level = vec![Graph::empty(0)];
    for k in 0..n {
        if k == 0 && !bounds.admits_base() {
            return Some(Vec::new());
        }
        level = extend_by_vertex(&level, bounds);
    }
    Some(level)
}

/// Every level `0..=n`, for callers that need all orders at once.
pub fn all_graphs_up_to(n: usize, bounds: Hereditary) -> Option<Vec<Vec<Graph>>> {
    if n > ENUMERATION_MAX_VERTICES {
        return None;
    }
    let mut levels = vec![vec![Graph::empty(0)]];
    for k in 0..n {
        let next = if k == 0 && !bounds.admits_base() {
            Vec::new()
        } else {
            extend_by_vertex(&levels[k], bounds)
        };
        levels.push(next);
    }
    Some(levels)
}
