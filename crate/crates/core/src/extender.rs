//! Growing class members from smaller ones.
//!
//! [`algorithm_extend`] finds every maximal non-Sperner graph with
//! independence number `s` in `H_v(2_r, 3; 4; n)` from the `(+K3)`-graphs of
//! `H_v(2_{r-1}, 3; 4; n - s)` with α ≤ s, by attaching `s` independent
//! vertices whose neighbourhoods are maximal K3-free subsets of the host.
//! The remaining operations cover the Sperner part (vertex duplication) and
//! the populate procedure (edge removal followed by re-maximalization).

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::arrowing::{ArrowChecker, ArrowTarget, ClassSpec};
use crate::canon::{canonical_form, dedup_par, CanonicalForm};
use crate::clique::{
    clique_number, complement_rows, has_clique_in, has_edge_within, has_kclique,
    independence_number, is_maximal_k3free, is_plus_k3, is_saturated, maximal_k3free_subsets,
};
use crate::error::{CliqueError, ExtendError};
use crate::graph::{Graph, VertexSet};
use crate::graph6::write_graph6;

/// Forbidden clique order for the extension algorithm.
pub const EXTEND_Q: usize = 4;

/// Parameters of one extension run: outputs have `n` vertices, arrow
/// `(2_r, 3)` and have independence number `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtendParams {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    /// Check the input predicates before extending.
    pub validate_inputs: bool,
}

impl ExtendParams {
    pub fn new(n: usize, r: usize, s: usize) -> Self {
        ExtendParams {
            n,
            r,
            s,
            validate_inputs: true,
        }
    }

    /// The class the inputs must belong to: `H_v(2_{r-1}, 3; 4; n - s)`.
    pub fn input_target(&self) -> ArrowTarget {
        ArrowTarget::twos_then(self.r - 1, 3)
    }

    pub fn output_target(&self) -> ArrowTarget {
        ArrowTarget::twos_then(self.r, 3)
    }
}

/// A host graph together with `s` of its maximal K3-free subsets satisfying
/// conditions (a), (b) and (c).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionCandidate {
    host: Graph,
    sets: Vec<VertexSet>,
}

impl ExtensionCandidate {
    /// Validates `sets` with [`candidate_satisfies`].
    pub fn new(host: Graph, sets: Vec<VertexSet>) -> Result<Option<Self>, ExtendError> {
        Ok(candidate_satisfies(&host, &sets)?.then_some(ExtensionCandidate { host, sets }))
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }
}

/// α(H − U) ≤ bound, decided as "no independent set of size bound + 1".
#[inline]
fn alpha_at_most(comp: &[u64], remaining: u64, bound: usize) -> bool {
    !has_clique_in(comp, remaining, bound + 1)
}

/// Conditions on a family `N = {M_1, ..., M_s}` of maximal K3-free subsets of `h`:
///
/// * (a) no `M_j` equals a neighbourhood `N_H(v)`;
/// * (b) every pairwise intersection `M_j ∩ M_k` contains an edge;
/// * (c) α(H − ∪N') ≤ s − |N'| for every sub-family `N'` (all `2^s` of them).
///
/// Repeated sets make the family smaller than `s` and are rejected.
pub fn candidate_satisfies(h: &Graph, sets: &[VertexSet]) -> Result<bool, ExtendError> {
    for &m in sets {
        if !is_maximal_k3free(h, m) {
            return Err(ExtendError::NotMaximalK3Free { set: m.to_string() });
        }
    }
    let s = sets.len();
    let distinct: BTreeSet<VertexSet> = sets.iter().copied().collect();
    if distinct.len() != s {
        return Ok(false);
    }
    // (a)
    if sets.iter().any(|&m| (0..h.n()).any(|v| h.neighbors(v) == m)) {
        return Ok(false);
    }
    // (b)
    let rows = h.rows();
    for j in 0..s {
        for k in j + 1..s {
            if !has_edge_within(rows, sets[j].intersection(sets[k]).bits()) {
                return Ok(false);
            }
        }
    }
    // (c)
    let all = h.vertices().bits();
    let comp = complement_rows(rows, all);
    for sub in 0u64..1 << s {
        let union = (0..s)
            .filter(|&j| sub >> j & 1 == 1)
            .fold(0u64, |acc, j| acc | sets[j].bits());
        if !alpha_at_most(&comp, all & !union, s - sub.count_ones() as usize) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Attaches one new vertex per set, each adjacent exactly to its set; the new
/// vertices are pairwise non-adjacent.
pub fn extend_one(c: &ExtensionCandidate) -> Graph {
    attach(&c.host, &c.sets)
}

fn attach(h: &Graph, sets: &[VertexSet]) -> Graph {
    let mut g = h.clone();
    for &m in sets {
        g = g.add_vertex(m).expect("extension stays within the vertex cap");
    }
    g
}

/// Word-packed compatibility rows over the filtered family.
struct Compat {
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl Compat {
    fn build(h: &Graph, family: &[VertexSet]) -> Self {
        let t = family.len();
        let words = t.div_ceil(64).max(1);
        let mut rows = vec![vec![0u64; words]; t];
        for i in 0..t {
            for j in i + 1..t {
                if has_edge_within(h.rows(), family[i].intersection(family[j]).bits()) {
                    rows[i][j / 64] |= 1 << (j % 64);
                    rows[j][i / 64] |= 1 << (i % 64);
                }
            }
        }
        Compat { words, rows }
    }
}

struct HostSearch<'a> {
    h: &'a Graph,
    comp: Vec<u64>,
    all: u64,
    s: usize,
    family: Vec<VertexSet>,
    compat: Compat,
    chosen: Vec<usize>,
    /// unions[sub] = union of the chosen sets selected by bitmask `sub`
    unions: Vec<u64>,
    out: Vec<Graph>,
    candidates: usize,
}

impl HostSearch<'_> {
    fn grow(&mut self, allowed: Vec<u64>) {
        let k = self.chosen.len();
        if k == self.s {
            self.emit();
            return;
        }
        let t = self.family.len();
        let start = self.chosen.last().map_or(0, |&i| i + 1);
        for i in start..t {
            if allowed[i / 64] >> (i % 64) & 1 == 0 {
                continue;
            }
            // need s - k sets in total; stop when not enough indices remain
            if t - i < self.s - k {
                break;
            }
            let m = self.family[i].bits();
            // (c) for every sub-family that contains the new set
            let mut ok = true;
            for sub in 0..1usize << k {
                let u = self.unions[sub] | m;
                let size = sub.count_ones() as usize + 1;
                if !alpha_at_most(&self.comp, self.all & !u, self.s - size) {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            for sub in 0..1usize << k {
                let u = self.unions[sub] | m;
                self.unions[sub | 1 << k] = u;
            }
            let next: Vec<u64> = (0..self.compat.words)
                .map(|w| allowed[w] & self.compat.rows[i][w])
                .collect();
            self.chosen.push(i);
            self.grow(next);
            self.chosen.pop();
        }
    }

    fn emit(&mut self) {
        let sets: Vec<VertexSet> = self.chosen.iter().map(|&i| self.family[i]).collect();
        // full re-check of (a), (b), (c) on every emitted family
        let full = candidate_satisfies(self.h, &sets).expect("family members are maximal K3-free");
        assert!(full, "incremental condition check disagrees with the full check");
        self.candidates += 1;
        let g = attach(self.h, &sets);
        if !g.is_sperner() && is_saturated(&g, EXTEND_Q) {
            self.out.push(g);
        }
    }
}

/// Steps 2.1–2.3 for a single host: every admissible family, turned into a
/// graph and kept when it is non-Sperner and maximal `K4`-free.
/// Returns the kept graphs and the number of admissible families.
pub fn extend_host(h: &Graph, s: usize) -> (Vec<Graph>, usize) {
    let all = h.vertices().bits();
    let comp = complement_rows(h.rows(), all);
    if s == 0 || !alpha_at_most(&comp, all, s) {
        return (Vec::new(), 0);
    }
    // (a) filters single members, so apply it before the pairwise search
    let family: Vec<VertexSet> = maximal_k3free_subsets(h)
        .iter()
        .filter(|&m| (0..h.n()).all(|v| h.neighbors(v) != m))
        .collect();
    let compat = Compat::build(h, &family);
    let t = family.len();
    let mut allowed = vec![0u64; compat.words];
    for i in 0..t {
        allowed[i / 64] |= 1 << (i % 64);
    }
    let mut search = HostSearch {
        h,
        comp,
        all,
        s,
        family,
        compat,
        chosen: Vec::with_capacity(s),
        unions: vec![0; 1 << s],
        out: Vec::new(),
        candidates: 0,
    };
    search.grow(allowed);
    (search.out, search.candidates)
}

/// Counts and output of one [`algorithm_extend`] run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtendRun {
    /// families passing (a), (b), (c), summed over hosts
    pub candidates: usize,
    /// graphs left after isomorph rejection (before the arrowing filter)
    pub after_dedup: usize,
    /// final output, canonically labelled and sorted by canonical form
    pub graphs: Vec<Graph>,
}

fn graph_reason(g: &Graph, reason: impl Into<String>) -> ExtendError {
    ExtendError::PostCondition {
        graph6: write_graph6(g),
        reason: reason.into(),
    }
}

/// Checks that `h` is an admissible input: `n - s` vertices, K4-free,
/// `(+K3)`, α ≤ s and `h →v (2_{r-1}, 3)`. Returns the first failed predicate.
pub fn check_input(h: &Graph, params: &ExtendParams, checker: &ArrowChecker) -> Result<(), String> {
    let want = params.n - params.s;
    if h.n() != want {
        return Err(format!("has {} vertices, expected n - s = {want}", h.n()));
    }
    if has_kclique(h, EXTEND_Q) {
        return Err("contains K4".into());
    }
    if !is_plus_k3(h) {
        return Err("is not a (+K3)-graph".into());
    }
    let alpha = independence_number(h);
    if alpha > params.s {
        return Err(format!("independence number {alpha} exceeds s = {}", params.s));
    }
    if !checker.arrows(h, &params.input_target()) {
        return Err(format!("does not arrow {}", params.input_target()));
    }
    Ok(())
}

/// All maximal non-Sperner graphs with α = s in `H_v(2_r, 3; 4; n)`, given all
/// admissible inputs. Output is deduplicated and sorted by canonical form;
/// every output graph is re-checked against the defining predicates.
pub fn algorithm_extend(
    inputs: &[Graph],
    params: &ExtendParams,
    checker: &ArrowChecker,
) -> Result<ExtendRun, ExtendError> {
    if params.r == 0 || params.s == 0 {
        return Err(ExtendError::DegenerateParams {
            r: params.r,
            s: params.s,
        });
    }
    if params.s > params.n {
        return Err(ExtendError::InvalidInput {
            index: 0,
            reason: format!("s = {} exceeds n = {}", params.s, params.n),
        });
    }
    if params.validate_inputs {
        let bad = inputs
            .par_iter()
            .enumerate()
            .find_map_first(|(i, h)| check_input(h, params, checker).err().map(|e| (i, e)));
        if let Some((index, reason)) = bad {
            return Err(ExtendError::InvalidInput { index, reason });
        }
    }

    let (built, candidates) = inputs
        .par_iter()
        .map(|h| extend_host(h, params.s))
        .reduce(
            || (Vec::new(), 0),
            |(mut a, ca), (b, cb)| {
                a.extend(b);
                (a, ca + cb)
            },
        );
    let deduped = dedup_par(built);
    let after_dedup = deduped.len();
    let target = params.output_target();
    let graphs: Vec<Graph> = deduped
        .into_par_iter()
        .filter(|g| checker.arrows(g, &target))
        .collect();

    for g in &graphs {
        if clique_number(g) != 3 {
            return Err(graph_reason(g, "clique number is not 3"));
        }
        if independence_number(g) != params.s {
            return Err(graph_reason(g, format!("independence number is not {}", params.s)));
        }
        if g.is_sperner() {
            return Err(graph_reason(g, "graph is Sperner"));
        }
        if !is_saturated(g, EXTEND_Q) {
            return Err(graph_reason(g, "graph is not maximal K4-free"));
        }
    }

    Ok(ExtendRun {
        candidates,
        after_dedup,
        graphs,
    })
}

/// `true` if removing some independent `s`-set from `g` yields a graph whose
/// canonical form is in `inputs`.
pub fn has_input_preimage(g: &Graph, s: usize, inputs: &BTreeSet<CanonicalForm>) -> bool {
    let mut found = false;
    let comp = complement_rows(g.rows(), g.vertices().bits());
    let _ = crate::clique::for_each_maximal_clique(&comp, g.vertices().bits(), |indep| {
        // every s-subset of a maximal independent set is independent
        let members: Vec<usize> = crate::graph::Bits(indep).collect();
        if members.len() >= s {
            let mut idx: Vec<usize> = (0..s).collect();
            loop {
                let a: VertexSet = idx.iter().map(|&i| members[i]).collect();
                let h = g.remove_vertices(a).expect("subset of the vertex set");
                if inputs.contains(&canonical_form(&h)) {
                    found = true;
                    return std::ops::ControlFlow::Break(());
                }
                // next combination
                let mut i = s;
                loop {
                    if i == 0 {
                        return std::ops::ControlFlow::Continue(());
                    }
                    i -= 1;
                    if idx[i] != i + members.len() - s {
                        break;
                    }
                }
                idx[i] += 1;
                for j in i + 1..s {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }
        std::ops::ControlFlow::Continue(())
    });
    found
}

/// Maximal graphs of `target` obtained by duplicating one vertex of a maximal
/// graph on `target.n - 1` vertices; deduplicated and sorted.
pub fn sperner_closure(maximal_prev: &[Graph], target: &ClassSpec, checker: &ArrowChecker) -> Vec<Graph> {
    let dups: Vec<Graph> = maximal_prev
        .par_iter()
        .filter(|g| g.n() + 1 == target.n)
        .flat_map_iter(|g| (0..g.n()).map(move |v| g.duplicate_vertex(v).expect("order below the cap")))
        .collect();
    dedup_par(dups)
        .into_par_iter()
        .filter(|g| is_saturated(g, target.q) && target.contains_with(g, checker))
        .collect()
}

/// Every maximal `K_q`-free supergraph of `g` on the same vertex set,
/// deduplicated and sorted by canonical form.
pub fn maximalize(g: &Graph, q: usize) -> Result<Vec<Graph>, CliqueError> {
    if has_kclique(g, q) {
        return Err(CliqueError::CliqueBound {
            omega: clique_number(g),
            q,
        });
    }
    let mut done: Vec<Graph> = Vec::new();
    let mut frontier = vec![g.clone()];
    while !frontier.is_empty() {
        let next: Vec<Graph> = frontier
            .par_iter()
            .flat_map_iter(|h| {
                let rows = h.rows();
                h.non_edges()
                    .filter(|&(u, v)| !has_clique_in(rows, rows[u] & rows[v], q - 2))
                    .map(|(u, v)| h.with_edge(u, v).expect("vertices in range"))
                    .collect::<Vec<_>>()
            })
            .collect();
        done.extend(frontier.into_iter().filter(|h| is_saturated(h, q)));
        frontier = dedup_par(next);
    }
    Ok(dedup_par(done))
}

/// Validates that every seed is a maximal member of `spec`.
pub fn check_maximal_members(seeds: &[Graph], spec: &ClassSpec, checker: &ArrowChecker) -> Result<(), ExtendError> {
    let bad = seeds.par_iter().enumerate().find_map_first(|(i, g)| {
        if g.n() != spec.n {
            Some((i, format!("has {} vertices, class needs {}", g.n(), spec.n)))
        } else if has_kclique(g, spec.q) {
            Some((i, format!("contains K{}", spec.q)))
        } else if !is_saturated(g, spec.q) {
            Some((i, "is not maximal".to_string()))
        } else if !checker.arrows(g, &spec.target) {
            Some((i, format!("does not arrow {}", spec.target)))
        } else {
            None
        }
    });
    match bad {
        Some((index, reason)) => Err(ExtendError::InvalidInput { index, reason }),
        None => Ok(()),
    }
}

/// All class members obtained from `graphs` by deleting edges (any number),
/// deduplicated. The graphs themselves are not included.
pub fn edge_removal_members(graphs: &[Graph], spec: &ClassSpec, checker: &ArrowChecker) -> Vec<Graph> {
    let mut found: Vec<Graph> = Vec::new();
    let mut frontier = dedup_par(graphs.to_vec());
    while !frontier.is_empty() {
        let next: Vec<Graph> = frontier
            .par_iter()
            .flat_map_iter(|g| {
                g.edges()
                    .map(|(u, v)| g.without_edge(u, v).expect("vertices in range"))
                    .collect::<Vec<_>>()
            })
            .collect();
        // arrowing is inherited by supergraphs, so a failing graph has no arrowing subgraphs
        frontier = dedup_par(next)
            .into_par_iter()
            .filter(|g| checker.arrows(g, &spec.target))
            .collect();
        found.extend(frontier.iter().cloned());
    }
    dedup_par(found)
}

/// One round of the populate procedure: remove edges from the seeds to get
/// non-maximal members, then add edges back in every possible way to reach
/// maximal members. Output contains the seeds and is sorted by canonical form.
pub fn populate(seed: &[Graph], spec: &ClassSpec, checker: &ArrowChecker) -> Result<Vec<Graph>, ExtendError> {
    check_maximal_members(seed, spec, checker)?;
    let lower = edge_removal_members(seed, spec, checker);
    let grown: Vec<Vec<Graph>> = lower
        .par_iter()
        .map(|g| maximalize(g, spec.q))
        .collect::<Result<_, _>>()?;
    let mut all: Vec<Graph> = seed.to_vec();
    // supergraphs of arrowing graphs arrow, and maximalize keeps ω < q
    all.extend(grown.into_iter().flatten());
    Ok(dedup_par(all))
}

/// Repeats [`populate`] until no new maximal graphs appear (or `max_rounds` is hit).
/// Returns the final set and the number of rounds run.
pub fn populate_to_fixpoint(
    seed: &[Graph],
    spec: &ClassSpec,
    checker: &ArrowChecker,
    max_rounds: usize,
) -> Result<(Vec<Graph>, usize), ExtendError> {
    let mut current = dedup_par(seed.to_vec());
    for round in 1..=max_rounds {
        let next = populate(&current, spec, checker)?;
        if next.len() == current.len() {
            return Ok((next, round));
        }
        current = next;
    }
    Ok((current, max_rounds))
}

/// Single-vertex deletions of `graphs` that are members of `spec`, deduplicated.
pub fn descend_vertices(graphs: &[Graph], spec: &ClassSpec, checker: &ArrowChecker) -> Vec<Graph> {
    let subs: Vec<Graph> = graphs
        .par_iter()
        .filter(|g| g.n() == spec.n + 1)
        .flat_map_iter(|g| (0..g.n()).map(move |v| g.remove_vertex(v).expect("vertex in range")))
        .collect();
    dedup_par(subs)
        .into_par_iter()
        .filter(|g| spec.contains_with(g, checker))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{are_isomorphic, canonical_graph};
    use crate::clique::is_maximal_in_class;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn c7bar() -> Graph {
        Graph::cycle_complement(7)
    }

    /// complement of P5; old labels 2..6 of C7bar are 0..4 here
    fn h5() -> Graph {
        c7bar().remove_vertices(set(&[0, 1])).unwrap()
    }

    #[test]
    fn triangle_fails_condition_a() {
        let k3 = Graph::complete(3);
        for pair in [[set(&[0, 1]), set(&[0, 2])], [set(&[0, 1]), set(&[1, 2])], [set(&[0, 2]), set(&[1, 2])]] {
            assert_eq!(candidate_satisfies(&k3, &pair), Ok(false));
        }
    }

    #[test]
    fn c7bar_candidate_is_valid() {
        let h = h5();
        // N(0) = {2,3,4,5} and N(1) = {3,4,5,6} in C7bar, shifted down by 2
        let sets = vec![set(&[0, 1, 2, 3]), set(&[1, 2, 3, 4])];
        assert_eq!(candidate_satisfies(&h, &sets), Ok(true));
        let c = ExtensionCandidate::new(h, sets).unwrap().unwrap();
        let g = extend_one(&c);
        assert_eq!(g.n(), 7);
        assert!(!g.has_edge(5, 6));
        assert!(are_isomorphic(&g, &c7bar()));
    }

    #[test]
    fn non_maximal_set_is_a_contract_violation() {
        let h = h5();
        assert!(matches!(
            candidate_satisfies(&h, &[set(&[0, 1])]),
            Err(ExtendError::NotMaximalK3Free { .. })
        ));
    }

    #[test]
    fn alpha_too_large_fails_c() {
        // empty graph on 3 vertices: the only maximal K3-free set is everything, α = 3 > 1
        let e = Graph::empty(3);
        assert_eq!(candidate_satisfies(&e, &[VertexSet::full(3)]), Ok(false));
    }

    #[test]
    fn single_set_extension() {
        let h = Graph::complete(3).duplicate_vertex(0).unwrap(); // diamond
        for m in maximal_k3free_subsets(&h).iter() {
            if candidate_satisfies(&h, &[m]).unwrap() {
                let g = extend_one(&ExtensionCandidate::new(h.clone(), vec![m]).unwrap().unwrap());
                assert_eq!(g.n(), h.n() + 1);
                assert!(clique_number(&g) <= 3);
            }
        }
    }

    #[test]
    fn degenerate_params_rejected() {
        let c = ArrowChecker::new();
        assert!(matches!(
            algorithm_extend(&[], &ExtendParams::new(5, 0, 2), &c),
            Err(ExtendError::DegenerateParams { r: 0, s: 2 })
        ));
        assert!(matches!(
            algorithm_extend(&[], &ExtendParams::new(5, 1, 0), &c),
            Err(ExtendError::DegenerateParams { .. })
        ));
        assert_eq!(algorithm_extend(&[], &ExtendParams::new(7, 1, 2), &c).unwrap().graphs, vec![]);
    }

    #[test]
    fn extend_from_triangle_is_empty() {
        let c = ArrowChecker::new();
        let run = algorithm_extend(&[Graph::complete(3)], &ExtendParams::new(5, 1, 2), &c).unwrap();
        assert!(run.graphs.is_empty());
        assert_eq!(run.candidates, 0);
    }

    #[test]
    fn bad_input_names_index_and_predicate() {
        let c = ArrowChecker::new();
        let err = algorithm_extend(&[h5(), Graph::cycle(5)], &ExtendParams::new(7, 1, 2), &c).unwrap_err();
        match err {
            ExtendError::InvalidInput { index, reason } => {
                assert_eq!(index, 1);
                assert!(reason.contains("arrow"), "{reason}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn h5_extends_to_c7bar() {
        let c = ArrowChecker::new();
        let run = algorithm_extend(&[h5()], &ExtendParams::new(7, 1, 2), &c).unwrap();
        assert_eq!(run.graphs, vec![canonical_graph(&c7bar())]);
        let inputs: BTreeSet<_> = [canonical_form(&h5())].into_iter().collect();
        assert!(has_input_preimage(&run.graphs[0], 2, &inputs));
    }

    #[test]
    fn sperner_closure_of_c7bar() {
        let c = ArrowChecker::new();
        let spec: ClassSpec = "2,3;4;8".parse().unwrap();
        let out = sperner_closure(&[c7bar()], &spec, &c);
        for g in &out {
            assert!(g.is_sperner());
            assert!(spec.contains(g));
            assert_eq!(is_maximal_in_class(g, 4), Ok(true));
        }
        assert!(sperner_closure(&[], &spec, &c).is_empty());
    }

    #[test]
    fn maximalize_examples() {
        assert_eq!(maximalize(&c7bar(), 4).unwrap(), vec![canonical_graph(&c7bar())]);
        let out = maximalize(&Graph::cycle(5), 4).unwrap();
        assert!(!out.is_empty());
        for g in &out {
            assert_eq!(is_maximal_in_class(g, 4), Ok(true));
            assert_eq!(g.n(), 5);
        }
        assert_eq!(maximalize(&Graph::complete(3), 4).unwrap(), vec![Graph::complete(3)]);
        assert!(maximalize(&Graph::complete(4), 4).is_err());
    }

    #[test]
    fn populate_c7bar_is_fixpoint() {
        let c = ArrowChecker::new();
        let spec: ClassSpec = "2,3;4;7".parse().unwrap();
        let out = populate(&[c7bar()], &spec, &c).unwrap();
        assert_eq!(out, vec![canonical_graph(&c7bar())]);
        assert!(populate(&[], &spec, &c).unwrap().is_empty());
        assert!(populate(&[Graph::cycle(5)], &spec, &c).is_err());
    }

    #[test]
    fn descend_examples() {
        let c = ArrowChecker::new();
        let k5: ClassSpec = "2,2,2,3;7;5".parse().unwrap();
        assert!(descend_vertices(&[Graph::complete(6)], &k5, &c).is_empty());
        let six: ClassSpec = "2,3;4;6".parse().unwrap();
        assert!(descend_vertices(&[c7bar()], &six, &c).is_empty());
        let seven: ClassSpec = "2,3;4;7".parse().unwrap();
        let hub = Graph::complete(1).join(&c7bar()).unwrap();
        let out = descend_vertices(&[hub], &seven, &c);
        assert!(out.contains(&canonical_graph(&c7bar())));
    }
}
